#pragma once

// Built-in packing configurations. The two 6-lane presets target ideal
// evaluation: their packed a fields span all 18 B-port bits with values
// past the signed range, which no port assignment of the physical block
// accepts.

#include <optional>
#include <string>
#include <vector>

#include "dsppack/packing.hpp"

namespace dsppack {

// Four 4x4 products at offsets {0,11,22,33}, padding 3.
inline PackingConfig preset_int4() {
  PackingConfig cfg = derive_layout({4, 4}, {4, 4}, 3);
  cfg.target = Target::dsp48e2;
  cfg.name = "int4";
  return cfg;
}

// Two 8x8 products sharing one a operand, 16-bit lanes at {0,18}.
inline PackingConfig preset_int8() {
  PackingConfig cfg = derive_layout({8}, {8, 8}, 2);
  cfg.target = Target::dsp48e2;
  cfg.name = "int8";
  return cfg;
}

// Six 4x3 products, 7-bit lanes at {0,7,14,21,28,35}, no padding.
inline PackingConfig preset_intn_6lane() {
  PackingConfig cfg = derive_layout({4, 4, 4}, {3, 3}, 0);
  cfg.target = Target::ideal;
  cfg.name = "intn-6lane";
  return cfg;
}

// Six 4x5 products, 9-bit lanes overlapping by 2 bits.
inline PackingConfig preset_overpack_6lane() {
  PackingConfig cfg = derive_layout({4, 4, 4}, {5, 5}, -2);
  cfg.target = Target::ideal;
  cfg.name = "overpack-6lane";
  return cfg;
}

// Four 4x4 products with 2-bit lane overlap: offsets a {0,6}, w {0,12}.
inline PackingConfig preset_fig8_overpack_delta_2() {
  PackingConfig cfg = derive_layout({4, 4}, {4, 4}, -2);
  cfg.target = Target::dsp48e2;
  cfg.name = "fig8-overpack-delta-2";
  return cfg;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "int4", "int8", "intn-6lane", "overpack-6lane", "fig8-overpack-delta-2"};
  return names;
}

inline std::optional<PackingConfig> preset(const std::string& name) {
  if (name == "int4") return preset_int4();
  if (name == "int8") return preset_int8();
  if (name == "intn-6lane") return preset_intn_6lane();
  if (name == "overpack-6lane") return preset_overpack_6lane();
  if (name == "fig8-overpack-delta-2") return preset_fig8_overpack_delta_2();
  return std::nullopt;
}

}  // namespace dsppack
