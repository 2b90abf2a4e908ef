#pragma once

// Umbrella header.

#include "dsppack/addpack.hpp"
#include "dsppack/analysis.hpp"
#include "dsppack/config_io.hpp"
#include "dsppack/correction.hpp"
#include "dsppack/dsp.hpp"
#include "dsppack/packing.hpp"
#include "dsppack/presets.hpp"
#include "dsppack/rational.hpp"
#include "dsppack/report.hpp"
#include "dsppack/rng.hpp"
#include "dsppack/wide.hpp"
#include "dsppack/word.hpp"
