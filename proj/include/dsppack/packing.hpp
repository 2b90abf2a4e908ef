#pragma once

// Multiplication-packing configurations: layout derivation, feasibility
// validation, operand packing onto DSP ports (physical mode) or wide
// factors (ideal mode), naive lane extraction and packing density.
//
// A packing places the entries of an unsigned vector a and a signed
// vector w at bit offsets inside two wide factors so one wide multiply
// computes the whole outer product a*w^T; lane n = j*|a|+i holds
// a_i*w_j at offset a_off[i] + w_off[j].

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsppack/dsp.hpp"
#include "dsppack/word.hpp"

namespace dsppack {

enum class Target { ideal, dsp48e2 };

inline std::string to_string(Target t) { return t == Target::ideal ? "ideal" : "dsp48e2"; }

struct PackingConfig {
  std::vector<int> a_widths;
  std::vector<int> w_widths;
  std::vector<int> a_offsets;
  std::vector<int> w_offsets;
  int delta = 0;
  bool a_signed = false;
  bool w_signed = true;
  Target target = Target::dsp48e2;
  int output_width = 48;
  PortSpec port{};
  std::string name;  // optional preset/report label

  int lane_count() const { return static_cast<int>(a_offsets.size() * w_offsets.size()); }
  bool lanes_signed() const { return a_signed || w_signed; }
};

// One result lane, sorted by offset in a layout.
struct Lane {
  int index;    // position in offset-sorted order
  int a_index;  // i of a_i
  int w_index;  // j of w_j
  int offset;
  int width;
};

struct LaneValue {
  int lane;
  int a_index;
  int w_index;
  int offset;
  int width;
  Word raw;        // field bits, unsigned view
  wide_int value;  // interpreted result
};

using LaneSet = std::vector<LaneValue>;

class NonuniformWidths : public Error {
 public:
  NonuniformWidths()
      : Error("automatic layout requires a uniform a_i+w_j result width; "
              "give explicit offsets for mixed widths") {}
};

inline void check_config_shape(const PackingConfig& cfg) {
  if (cfg.a_widths.empty() || cfg.w_widths.empty())
    throw Error("packing needs at least one a and one w entry");
  if (cfg.a_widths.size() != cfg.a_offsets.size() || cfg.w_widths.size() != cfg.w_offsets.size())
    throw Error("offset list lengths must match width list lengths");
  for (int w : cfg.a_widths) check_width(w);
  for (int w : cfg.w_widths) check_width(w);
  auto increasing = [](const std::vector<int>& v) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] >= v[i + 1]) return false;
    return v.empty() || v[0] >= 0;
  };
  if (!increasing(cfg.a_offsets) || !increasing(cfg.w_offsets))
    throw Error("offsets must be non-negative and strictly increasing");
}

// Lane layout implied by the input offsets, sorted by result offset.
inline std::vector<Lane> lane_layout(const PackingConfig& cfg) {
  check_config_shape(cfg);
  std::vector<Lane> lanes;
  lanes.reserve(static_cast<size_t>(cfg.lane_count()));
  for (size_t j = 0; j < cfg.w_offsets.size(); ++j)
    for (size_t i = 0; i < cfg.a_offsets.size(); ++i)
      lanes.push_back(Lane{0, static_cast<int>(i), static_cast<int>(j),
                           cfg.a_offsets[i] + cfg.w_offsets[j],
                           cfg.a_widths[i] + cfg.w_widths[j]});
  std::stable_sort(lanes.begin(), lanes.end(),
                   [](const Lane& x, const Lane& y) { return x.offset < y.offset; });
  for (size_t n = 0; n < lanes.size(); ++n) lanes[n].index = static_cast<int>(n);
  return lanes;
}

// Spare bits between adjacent lanes; negative entries mean overlap.
inline std::vector<int> boundary_paddings(const std::vector<Lane>& lanes) {
  std::vector<int> pads;
  for (size_t n = 0; n + 1 < lanes.size(); ++n)
    pads.push_back(lanes[n + 1].offset - (lanes[n].offset + lanes[n].width));
  return pads;
}

// Auto-layout for uniform result widths: stride = a_wdth+w_wdth+delta,
// a_off[i] = i*stride, w_off[j] = j*stride*|a|.
inline PackingConfig derive_layout(std::vector<int> a_widths, std::vector<int> w_widths,
                                   int delta) {
  if (a_widths.empty() || w_widths.empty())
    throw Error("packing needs at least one a and one w entry");
  int result_width = a_widths.front() + w_widths.front();
  for (int aw : a_widths)
    for (int ww : w_widths)
      if (aw + ww != result_width) throw NonuniformWidths();
  int stride = result_width + delta;
  if (stride < 1) throw Error("stride " + std::to_string(stride) + " collapses adjacent lanes");
  PackingConfig cfg;
  cfg.a_widths = std::move(a_widths);
  cfg.w_widths = std::move(w_widths);
  cfg.delta = delta;
  for (size_t i = 0; i < cfg.a_widths.size(); ++i)
    cfg.a_offsets.push_back(static_cast<int>(i) * stride);
  for (size_t j = 0; j < cfg.w_widths.size(); ++j)
    cfg.w_offsets.push_back(static_cast<int>(j) * stride * static_cast<int>(cfg.a_widths.size()));
  return cfg;
}

enum class Severity { info, overlap, error };

struct Diagnostic {
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;
  std::vector<int> boundary_padding;
  bool structurally_valid = false;  // evaluable in ideal mode
  bool physical_feasible = false;   // maps onto the DSP ports
  bool has_overlap = false;

  bool feasible_for(Target t) const {
    return t == Target::ideal ? structurally_valid : structurally_valid && physical_feasible;
  }
  std::string summary() const {
    std::string s;
    for (const Diagnostic& d : diagnostics) {
      s += d.severity == Severity::error ? "error: " : d.severity == Severity::overlap ? "overlap: " : "note: ";
      s += d.message;
      s += '\n';
    }
    return s;
  }
};

namespace detail {

inline wide_int min_operand(int width, bool is_signed) {
  return is_signed ? -(wide_int{1} << (width - 1)) : 0;
}
inline wide_int max_operand(int width, bool is_signed) {
  return is_signed ? (wide_int{1} << (width - 1)) - 1 : (wide_int{1} << width) - 1;
}

}  // namespace detail

// Checks layout consistency and, for a dsp48e2 target, that extreme
// operand values survive every port. An infeasible physical config is
// an error only for physical evaluation; ideal-mode evaluation needs
// only structural validity.
inline ValidationReport validate(const PackingConfig& cfg) {
  ValidationReport rep;
  std::vector<Lane> lanes;
  try {
    lanes = lane_layout(cfg);
  } catch (const Error& e) {
    rep.diagnostics.push_back({Severity::error, e.what()});
    return rep;
  }
  rep.structurally_valid = true;
  for (size_t n = 0; n + 1 < lanes.size(); ++n)
    if (lanes[n].offset == lanes[n + 1].offset) {
      rep.diagnostics.push_back(
          {Severity::error, "lanes " + std::to_string(n) + " and " + std::to_string(n + 1) +
                                " share result offset " + std::to_string(lanes[n].offset) +
                                "; their products would merge"});
      rep.structurally_valid = false;
    }
  rep.boundary_padding = boundary_paddings(lanes);
  for (size_t n = 0; n < rep.boundary_padding.size(); ++n) {
    int pad = rep.boundary_padding[n];
    if (pad < 0) {
      rep.has_overlap = true;
      rep.diagnostics.push_back(
          {Severity::overlap, "lanes " + std::to_string(n) + "/" + std::to_string(n + 1) +
                                  " overlap by " + std::to_string(-pad) + " bits (padding " +
                                  std::to_string(pad) + ")"});
    }
  }
  if (!rep.structurally_valid) return rep;
  if (cfg.target == Target::ideal) {
    const Lane& top = lanes.back();
    if (top.offset + top.width > cfg.output_width) {
      rep.diagnostics.push_back(
          {Severity::error, "top lane ends at bit " + std::to_string(top.offset + top.width) +
                                ", past the " + std::to_string(cfg.output_width) +
                                "-bit output; raise output_width"});
      rep.structurally_valid = false;
      return rep;
    }
  }

  // Physical mapping checks (B <- a fields, A <- w0, D <- remaining w).
  const PortSpec& port = cfg.port;
  bool ok = true;
  auto fail = [&](const std::string& msg) {
    rep.diagnostics.push_back({Severity::error, msg});
    ok = false;
  };
  if (cfg.a_signed) {
    fail("signed a entries cannot be OR-packed onto port B without colliding sign extensions");
  } else {
    wide_int b_max = 0;
    for (size_t i = 0; i < cfg.a_widths.size(); ++i) {
      if (cfg.a_offsets[i] + cfg.a_widths[i] > port.width_b)
        fail("a[" + std::to_string(i) + "] ends at bit " +
             std::to_string(cfg.a_offsets[i] + cfg.a_widths[i]) + ", past the " +
             std::to_string(port.width_b) + "-bit B port");
      b_max += detail::max_operand(cfg.a_widths[i], false) << cfg.a_offsets[i];
    }
    if (ok && !fits_signed(b_max, port.width_b))
      fail("packed a fields reach " + dsppack::to_string(b_max) + ", outside the signed " +
           std::to_string(port.width_b) + "-bit B port");
  }
  if (cfg.w_signed && cfg.w_widths.size() > 2) {
    fail("only two preadder ports exist; cannot place " + std::to_string(cfg.w_widths.size()) +
         " signed w entries");
  }
  if (!cfg.w_signed) {
    for (size_t j = 1; j + 1 < cfg.w_widths.size(); ++j)
      if (cfg.w_offsets[j] + cfg.w_widths[j] > cfg.w_offsets[j + 1])
        fail("unsigned w[" + std::to_string(j) + "] and w[" + std::to_string(j + 1) +
             "] overlap on the D port");
  }
  if (ok) {
    // A holds w0 at offset 0; D holds everything above.
    wide_int a_min = detail::min_operand(cfg.w_widths[0], cfg.w_signed);
    wide_int a_max = detail::max_operand(cfg.w_widths[0], cfg.w_signed);
    if (cfg.w_offsets[0] != 0)
      fail("w[0] must sit at offset 0 to use the A port");
    wide_int d_min = 0, d_max = 0;
    for (size_t j = 1; j < cfg.w_widths.size(); ++j) {
      d_min += detail::min_operand(cfg.w_widths[j], cfg.w_signed) << cfg.w_offsets[j];
      d_max += detail::max_operand(cfg.w_widths[j], cfg.w_signed) << cfg.w_offsets[j];
    }
    if (!fits_signed(a_min, port.width_a) || !fits_signed(a_max, port.width_a))
      fail("w[0] range does not fit the " + std::to_string(port.width_a) + "-bit A port");
    else if (!fits_signed(d_min, port.width_d) || !fits_signed(d_max, port.width_d))
      fail("packed upper w fields do not fit the " + std::to_string(port.width_d) +
           "-bit D port");
    else if (!fits_signed(a_min + d_min, port.preadder_width) ||
             !fits_signed(a_max + d_max, port.preadder_width))
      fail("preadder sum can exceed the " + std::to_string(port.preadder_width) +
           "-bit signed range");
  }
  if (ok) {
    const Lane& top = lanes.back();
    if (top.offset + top.width > port.width_p)
      fail("top lane ends at bit " + std::to_string(top.offset + top.width) + ", past the " +
           std::to_string(port.width_p) + "-bit P port");
  }
  rep.physical_feasible = ok;
  if (rep.diagnostics.empty())
    rep.diagnostics.push_back({Severity::info, "feasible on all checks"});
  return rep;
}

namespace detail {

inline void check_operands(const PackingConfig& cfg, std::span<const wide_int> a,
                           std::span<const wide_int> w) {
  if (a.size() != cfg.a_widths.size() || w.size() != cfg.w_widths.size())
    throw Error("operand counts must match the configuration (" +
                std::to_string(cfg.a_widths.size()) + " a, " +
                std::to_string(cfg.w_widths.size()) + " w)");
  for (size_t i = 0; i < a.size(); ++i) {
    bool ok = cfg.a_signed ? fits_signed(a[i], cfg.a_widths[i]) : fits_unsigned(a[i], cfg.a_widths[i]);
    if (!ok) throw OperandRange('a', i, a[i], cfg.a_widths[i], cfg.a_signed);
  }
  for (size_t j = 0; j < w.size(); ++j) {
    bool ok = cfg.w_signed ? fits_signed(w[j], cfg.w_widths[j]) : fits_unsigned(w[j], cfg.w_widths[j]);
    if (!ok) throw OperandRange('w', j, w[j], cfg.w_widths[j], cfg.w_signed);
  }
}

}  // namespace detail

// The two wide factors of the packed product (ideal view).
struct IdealFactors {
  wide_int a_factor = 0;
  wide_int w_factor = 0;
};

inline IdealFactors pack_factors(const PackingConfig& cfg, std::span<const wide_int> a,
                                 std::span<const wide_int> w) {
  check_config_shape(cfg);
  detail::check_operands(cfg, a, w);
  IdealFactors f;
  for (size_t i = 0; i < a.size(); ++i) f.a_factor += a[i] << cfg.a_offsets[i];
  for (size_t j = 0; j < w.size(); ++j) f.w_factor += w[j] << cfg.w_offsets[j];
  return f;
}

// Physical port loading: B carries the OR-packed a fields, A carries
// w0 sign-extended, D the remaining w fields; C and P_in stay zero.
inline DspInputs pack_dsp_inputs(const PackingConfig& cfg, std::span<const wide_int> a,
                                 std::span<const wide_int> w) {
  check_config_shape(cfg);
  detail::check_operands(cfg, a, w);
  if (cfg.a_signed)
    throw Error("signed a entries cannot be OR-packed onto port B");
  std::vector<PlacedField> b_fields;
  for (size_t i = 0; i < a.size(); ++i)
    b_fields.push_back({wrap_unsigned(a[i], cfg.a_widths[i]), cfg.a_offsets[i]});
  DspInputs in;
  in.b = or_pack(b_fields, cfg.port.width_b).value;
  in.a = w[0];
  std::vector<PlacedField> d_fields;
  for (size_t j = 1; j < w.size(); ++j) {
    Word field = cfg.w_signed ? wrap_signed(w[j], cfg.w_widths[j])
                              : wrap_unsigned(w[j], cfg.w_widths[j]);
    d_fields.push_back({field, cfg.w_offsets[j]});
  }
  in.d = or_pack(d_fields, cfg.port.width_d).value;
  return in;
}

struct PackedOperands {
  std::optional<DspInputs> inputs;     // physical target
  std::optional<IdealFactors> factors; // ideal target
};

inline PackedOperands pack_operands(const PackingConfig& cfg, std::span<const wide_int> a,
                                    std::span<const wide_int> w) {
  PackedOperands p;
  if (cfg.target == Target::dsp48e2)
    p.inputs = pack_dsp_inputs(cfg, a, w);
  else
    p.factors = pack_factors(cfg, a, w);
  return p;
}

// Packed product with an optional accumulator addend (the C port in
// physical mode). Ideal mode multiplies the wide factors and wraps to
// the configured output width.
inline Word multiply_packed(const PackingConfig& cfg, std::span<const wide_int> a,
                            std::span<const wide_int> w, wide_int c_addend = 0) {
  if (cfg.target == Target::dsp48e2) {
    DspInputs in = pack_dsp_inputs(cfg, a, w);
    in.c = c_addend;
    return eval(in, cfg.port);
  }
  IdealFactors f = pack_factors(cfg, a, w);
  return wrap_signed(f.a_factor * f.w_factor + c_addend, cfg.output_width);
}

inline Word multiply_packed(const PackingConfig& cfg, std::initializer_list<wide_int> a,
                            std::initializer_list<wide_int> w, wide_int c_addend = 0) {
  return multiply_packed(cfg, std::span<const wide_int>(a.begin(), a.size()),
                         std::span<const wide_int>(w.begin(), w.size()), c_addend);
}

// Uncorrected extraction: lane n is the arithmetic-shift field at its
// offset. Floor semantics bias extracted values toward negative
// infinity whenever lower lanes sum negative.
inline LaneSet extract_naive(const Word& p, const PackingConfig& cfg) {
  LaneSet out;
  bool lane_signed = cfg.lanes_signed();
  for (const Lane& lane : lane_layout(cfg)) {
    Word raw = extract_field(p, lane.offset, lane.width, false);
    Word val = extract_field(p, lane.offset, lane.width, lane_signed);
    out.push_back(LaneValue{lane.index, lane.a_index, lane.w_index, lane.offset, lane.width, raw,
                            val.value});
  }
  return out;
}

// Occupied result bits over the total output bits; exceeds 1 when
// lanes overlap.
struct Density {
  long long used = 0;
  long long total = 48;
  double value() const { return static_cast<double>(used) / static_cast<double>(total); }
};

inline Density packing_density(const PackingConfig& cfg, int total_bits = 48) {
  Density d;
  d.total = total_bits;
  for (const Lane& lane : lane_layout(cfg)) d.used += lane.width;
  return d;
}

}  // namespace dsppack
