#pragma once

// Bit-exact functional model of a DSP48E2-style multiply-accumulate
// datapath: P = B*(A+D) + C + P_in with port-width enforcement, 48-bit
// two's-complement wraparound and carry-chain accumulation. Pipeline
// registers are not modeled; evaluation is combinational.

#include <span>
#include <utility>
#include <vector>

#include "dsppack/word.hpp"

namespace dsppack {

// Port widths of the modeled block. The A port is modeled at its
// 27-bit preadder view; the physical 30-bit register is irrelevant to
// the value-level dataflow.
struct PortSpec {
  int width_a = 27;
  int width_b = 18;
  int width_c = 48;
  int width_d = 27;
  int width_p = 48;
  int preadder_width = 27;
  std::pair<int, int> mult_shape{18, 27};

  friend bool operator==(const PortSpec&, const PortSpec&) = default;
};

struct DspInputs {
  wide_int a = 0;
  wide_int b = 0;
  wide_int c = 0;
  wide_int d = 0;
  wide_int p_in = 0;
};

class PortOverflow : public Error {
 public:
  PortOverflow(char port, wide_int value, int width)
      : Error(std::string("port ") + port + " value " + dsppack::to_string(value) +
              " exceeds " + std::to_string(width) + "-bit signed range"),
        port(port) {}
  char port;
};

class PreadderOverflow : public Error {
 public:
  PreadderOverflow(wide_int sum, int width)
      : Error("preadder sum " + dsppack::to_string(sum) + " exceeds " + std::to_string(width) +
              "-bit signed range") {}
};

// One combinational evaluation. Overflow beyond width_p wraps
// (two's complement), matching the hardware accumulator.
inline Word eval(const DspInputs& in, const PortSpec& spec = {}) {
  if (!fits_signed(in.a, spec.width_a)) throw PortOverflow('A', in.a, spec.width_a);
  if (!fits_signed(in.b, spec.width_b)) throw PortOverflow('B', in.b, spec.width_b);
  if (!fits_signed(in.c, spec.width_c)) throw PortOverflow('C', in.c, spec.width_c);
  if (!fits_signed(in.d, spec.width_d)) throw PortOverflow('D', in.d, spec.width_d);
  if (!fits_signed(in.p_in, spec.width_p)) throw PortOverflow('P', in.p_in, spec.width_p);
  wide_int preadd = in.a + in.d;
  if (!fits_signed(preadd, spec.preadder_width)) throw PreadderOverflow(preadd, spec.preadder_width);
  return wrap_signed(in.b * preadd + in.c + in.p_in, spec.width_p);
}

// Folds eval over the stages, feeding each stage's P into the next
// stage's P_in. Stages must leave p_in zero; the chain supplies it.
inline Word chain_accumulate(std::span<const DspInputs> stages, const PortSpec& spec = {}) {
  wide_int carry = 0;
  Word p = wrap_signed(0, spec.width_p);
  for (size_t i = 0; i < stages.size(); ++i) {
    if (stages[i].p_in != 0)
      throw Error("stage " + std::to_string(i) + ": p_in must be zero in a chain");
    DspInputs in = stages[i];
    in.p_in = carry;
    try {
      p = eval(in, spec);
    } catch (const Error& e) {
      throw Error("stage " + std::to_string(i) + ": " + e.what());
    }
    carry = p.value;
  }
  return p;
}

inline Word chain_accumulate(std::initializer_list<DspInputs> stages, const PortSpec& spec = {}) {
  return chain_accumulate(std::span<const DspInputs>(stages.begin(), stages.size()), spec);
}

}  // namespace dsppack
