#pragma once

// Packing several small unsigned additions into one wide accumulator
// word. Without guard bits a carry out of one lane lands in the next
// lane's LSB (error +1, worst case 1); a single zero guard bit per
// boundary absorbs the carry and makes every lane exact.

#include <span>
#include <string>
#include <vector>

#include "dsppack/word.hpp"

namespace dsppack {

class ConfigOverflow : public Error {
 public:
  ConfigOverflow(int needed, int total)
      : Error("layout needs " + std::to_string(needed) + " bits but the adder is only " +
              std::to_string(total) + " bits wide") {}
};

struct AdditionPackConfig {
  std::vector<int> lane_widths;
  int guard_bits = 0;  // zero bits inserted at every lane boundary
  int total_width = 48;

  std::vector<int> lane_offsets() const {
    std::vector<int> offs;
    int off = 0;
    for (size_t i = 0; i < lane_widths.size(); ++i) {
      offs.push_back(off);
      off += lane_widths[i] + guard_bits;
    }
    return offs;
  }
  int used_bits() const {
    int sum = 0;
    for (int w : lane_widths) sum += w;
    if (!lane_widths.empty()) sum += guard_bits * (static_cast<int>(lane_widths.size()) - 1);
    return sum;
  }
};

inline void check_addition_config(const AdditionPackConfig& cfg) {
  if (cfg.lane_widths.empty()) throw Error("addition packing needs at least one lane");
  for (int w : cfg.lane_widths) check_width(w);
  if (cfg.guard_bits < 0) throw Error("guard_bits must be non-negative");
  check_width(cfg.total_width);
  if (cfg.used_bits() > cfg.total_width) throw ConfigOverflow(cfg.used_bits(), cfg.total_width);
}

struct AdditionLaneResult {
  int lane;
  int offset;
  int width;
  wide_int actual;    // extracted from the wide sum
  wide_int expected;  // (x + y) mod 2^width; a lane's own overflow is not an error
  int carry_in;       // carry arriving at the lane's LSB

  // Carry corruption as the lane sees it: (actual - expected) mod 2^width.
  // A foreign carry adds exactly 1 modularly, even when the lane value
  // wraps and the carry ripples onward.
  int error() const { return static_cast<int>(wrap_unsigned_value(actual - expected, width)); }
};

// One wide addition, lanes extracted back out. Operands are unsigned
// and must fit their lanes.
inline std::vector<AdditionLaneResult> add_packed(const AdditionPackConfig& cfg,
                                                  std::span<const wide_int> x,
                                                  std::span<const wide_int> y) {
  check_addition_config(cfg);
  if (x.size() != cfg.lane_widths.size() || y.size() != cfg.lane_widths.size())
    throw Error("operand counts must match the lane count");
  std::vector<int> offs = cfg.lane_offsets();
  for (size_t i = 0; i < x.size(); ++i) {
    if (!fits_unsigned(x[i], cfg.lane_widths[i]))
      throw OperandRange('x', i, x[i], cfg.lane_widths[i], false);
    if (!fits_unsigned(y[i], cfg.lane_widths[i]))
      throw OperandRange('y', i, y[i], cfg.lane_widths[i], false);
  }
  wide_int xw = 0, yw = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    xw += x[i] << offs[i];
    yw += y[i] << offs[i];
  }
  Word sum = wrap_unsigned(xw + yw, cfg.total_width);
  std::vector<AdditionLaneResult> out;
  for (size_t i = 0; i < x.size(); ++i) {
    wide_int actual = extract_field(sum, offs[i], cfg.lane_widths[i], false).value;
    wide_int expected = wrap_unsigned_value(x[i] + y[i], cfg.lane_widths[i]);
    wide_uint below = mask_bits(offs[i]);
    int carry = ((static_cast<wide_uint>(xw) & below) + (static_cast<wide_uint>(yw) & below)) >>
                        offs[i] != 0
                    ? 1
                    : 0;
    out.push_back(AdditionLaneResult{static_cast<int>(i), offs[i], cfg.lane_widths[i], actual,
                                     expected, offs[i] == 0 ? 0 : carry});
  }
  return out;
}

inline std::vector<AdditionLaneResult> add_packed(const AdditionPackConfig& cfg,
                                                  std::initializer_list<wide_int> x,
                                                  std::initializer_list<wide_int> y) {
  return add_packed(cfg, std::span<const wide_int>(x.begin(), x.size()),
                    std::span<const wide_int>(y.begin(), y.size()));
}

struct AdditionLayoutReport {
  int total_width;
  std::vector<int> lane_widths;
  int lane_count;
  int used_bits;   // without guard bits
  int spare_bits;  // available as guard bits
  bool fits;
};

// How many lanes of one width fit, with the remainder available as
// guard bits.
inline AdditionLayoutReport feasible_layout(int total_width, int lane_width) {
  check_width(total_width);
  check_width(lane_width);
  AdditionLayoutReport rep;
  rep.total_width = total_width;
  rep.lane_count = total_width / lane_width;
  rep.lane_widths.assign(static_cast<size_t>(rep.lane_count), lane_width);
  rep.used_bits = rep.lane_count * lane_width;
  rep.spare_bits = total_width - rep.used_bits;
  rep.fits = rep.lane_count > 0;
  return rep;
}

// Whether an explicit width list fits, and what is left over.
inline AdditionLayoutReport feasible_layout(int total_width, std::span<const int> lane_widths) {
  check_width(total_width);
  AdditionLayoutReport rep;
  rep.total_width = total_width;
  rep.lane_widths.assign(lane_widths.begin(), lane_widths.end());
  rep.lane_count = static_cast<int>(lane_widths.size());
  rep.used_bits = 0;
  for (int w : lane_widths) rep.used_bits += w;
  rep.spare_bits = total_width - rep.used_bits;
  rep.fits = rep.used_bits <= total_width;
  return rep;
}

}  // namespace dsppack
