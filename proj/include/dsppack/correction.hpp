#pragma once

// Error-correction schemes for packed multiplication:
//  - full:   round-half-up on extraction, adding the bit just below
//            each lane's field (exact, needs post-DSP adders)
//  - approx: a precomputed C-port addend of predicted sign bits that
//            cancels most floor-bias errors with no post-DSP logic
//  - mr:     MSB restoration for overlapped lanes (negative padding),
//            recomputing the contaminating low product bits of the
//            upper neighbor and subtracting them after extraction

#include <span>
#include <string>
#include <vector>

#include "dsppack/packing.hpp"

namespace dsppack {

enum class Scheme { none, full, approx, mr };

inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::none: return "none";
    case Scheme::full: return "full";
    case Scheme::approx: return "approx";
    case Scheme::mr: return "mr";
  }
  return "none";
}

inline Scheme scheme_from_string(const std::string& s) {
  if (s == "none") return Scheme::none;
  if (s == "full") return Scheme::full;
  if (s == "approx") return Scheme::approx;
  if (s == "mr") return Scheme::mr;
  throw Error("unknown correction scheme '" + s + "' (none|full|approx|mr)");
}

class SchemeMismatch : public Error {
 public:
  explicit SchemeMismatch(const std::string& msg) : Error(msg) {}
};

namespace detail {

inline int min_boundary_padding(const PackingConfig& cfg) {
  std::vector<int> pads = boundary_paddings(lane_layout(cfg));
  int m = cfg.delta;
  for (size_t n = 0; n < pads.size(); ++n) m = n == 0 ? pads[n] : std::min(m, pads[n]);
  return pads.empty() ? cfg.delta : m;
}

// Uniform negative padding between all lanes; the lane-overlap depth
// for MR correction.
inline int overlap_bits(const PackingConfig& cfg) {
  std::vector<Lane> lanes = lane_layout(cfg);
  std::vector<int> pads = boundary_paddings(lanes);
  if (pads.empty()) throw SchemeMismatch("MR correction needs at least two lanes");
  for (int p : pads)
    if (p != pads[0]) throw SchemeMismatch("MR correction needs a uniform lane stride");
  for (const Lane& lane : lanes)
    if (lane.width != lanes[0].width)
      throw SchemeMismatch("MR correction needs a uniform lane width");
  if (pads[0] >= 0)
    throw SchemeMismatch("MR correction applies only to overlapped lanes (padding < 0)");
  return -pads[0];
}

}  // namespace detail

// Round-half-up applied after extraction: lane n >= 1 gains the bit
// just below its field; lane 0 keeps the default round-down (its field
// has nothing below it). Exact over the whole domain when the padding
// is non-negative.
inline LaneSet correct_full(const Word& p, const PackingConfig& cfg, LaneSet lanes) {
  if (detail::min_boundary_padding(cfg) < 0)
    throw SchemeMismatch("full correction requires non-negative lane padding");
  for (size_t n = 1; n < lanes.size(); ++n) {
    LaneValue& lv = lanes[n];
    lv.value = wrap_signed_value(lv.value + test_bit(p, lv.offset - 1), lv.width);
  }
  return lanes;
}

// C-port addend anticipating each lane's round-up bit from the sign of
// the w operand one lane below: C = sum over n>=1 of
// signbit(w[w_index(n-1)]) << r_off[n]. The DSP evaluates with this C
// and plain extraction follows; no post-DSP hardware.
inline Word build_approx_correction(const PackingConfig& cfg, std::span<const wide_int> w) {
  if (!cfg.w_signed)
    throw SchemeMismatch("approximate correction assumes signed w entries");
  if (detail::min_boundary_padding(cfg) < 0)
    throw SchemeMismatch("approximate correction requires non-negative lane padding");
  if (w.size() != cfg.w_widths.size()) throw Error("operand count mismatch");
  std::vector<Lane> lanes = lane_layout(cfg);
  wide_int c = 0;
  for (size_t n = 1; n < lanes.size(); ++n)
    if (w[static_cast<size_t>(lanes[n - 1].w_index)] < 0) c += wide_int{1} << lanes[n].offset;
  return wrap_unsigned(c, cfg.port.width_c);
}

inline Word build_approx_correction(const PackingConfig& cfg, std::initializer_list<wide_int> w) {
  return build_approx_correction(cfg, std::span<const wide_int>(w.begin(), w.size()));
}

// (a*w) mod 2^k: the k low bits of a product, cheap to compute outside
// the DSP. k=1 is a single AND; k=2 adds an AND-XOR pair; larger k
// follows the same binary-multiplication rules.
inline Word low_bits_product(wide_int a, wide_int w, int k) {
  check_width(k);
  return wrap_unsigned(wrap_unsigned_value(a, k) * wrap_unsigned_value(w, k), k);
}

// MSB restoration for overlapped lanes: lane n's top -delta bits were
// contaminated by the addition of lane n+1's low bits, so subtract
// low_bits_product(a, w of lane n+1) shifted to the lane top. The
// topmost lane has nothing above it and stays untouched.
inline LaneSet correct_mr(LaneSet lanes, const PackingConfig& cfg, std::span<const wide_int> a,
                          std::span<const wide_int> w) {
  int k = detail::overlap_bits(cfg);
  detail::check_operands(cfg, a, w);
  for (size_t n = 0; n + 1 < lanes.size(); ++n) {
    LaneValue& lv = lanes[n];
    const LaneValue& up = lanes[n + 1];
    wide_int low = low_bits_product(a[static_cast<size_t>(up.a_index)],
                                    w[static_cast<size_t>(up.w_index)], k)
                       .value;
    lv.value = wrap_signed_value(lv.value - (low << (lv.width - k)), lv.width);
  }
  return lanes;
}

inline LaneSet correct_mr(LaneSet lanes, const PackingConfig& cfg,
                          std::initializer_list<wide_int> a, std::initializer_list<wide_int> w) {
  return correct_mr(std::move(lanes), cfg, std::span<const wide_int>(a.begin(), a.size()),
                    std::span<const wide_int>(w.begin(), w.size()));
}

// One packed evaluation end to end: multiply, extract, correct.
struct SimulationResult {
  Word p;
  LaneSet naive;
  LaneSet corrected;
};

inline SimulationResult simulate_packed(const PackingConfig& cfg, std::span<const wide_int> a,
                                        std::span<const wide_int> w, Scheme scheme) {
  wide_int c = scheme == Scheme::approx ? build_approx_correction(cfg, w).value : 0;
  SimulationResult r;
  r.p = multiply_packed(cfg, a, w, c);
  r.naive = extract_naive(r.p, cfg);
  switch (scheme) {
    case Scheme::none:
    case Scheme::approx:
      r.corrected = r.naive;
      break;
    case Scheme::full:
      r.corrected = correct_full(r.p, cfg, r.naive);
      break;
    case Scheme::mr:
      r.corrected = correct_mr(r.naive, cfg, a, w);
      break;
  }
  return r;
}

inline SimulationResult simulate_packed(const PackingConfig& cfg,
                                        std::initializer_list<wide_int> a,
                                        std::initializer_list<wide_int> w, Scheme scheme) {
  return simulate_packed(cfg, std::span<const wide_int>(a.begin(), a.size()),
                         std::span<const wide_int>(w.begin(), w.size()), scheme);
}

}  // namespace dsppack
