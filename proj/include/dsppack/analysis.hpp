#pragma once

// Error metrics over enumerated operand domains: error probability,
// mean absolute error and worst-case error per lane, against the plain
// multiplication oracle. Enumeration is exhaustive (lexicographic) or
// seeded counter-based sampling; the index space can be partitioned
// across threads and partial stats merge associatively, so threaded
// and single-threaded runs are identical.

#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "dsppack/correction.hpp"
#include "dsppack/rational.hpp"
#include "dsppack/rng.hpp"

namespace dsppack {

class DomainTooLarge : public Error {
 public:
  DomainTooLarge(uint64_t n, uint64_t ceiling)
      : Error("exhaustive domain has " + std::to_string(n) + " tuples, above the ceiling of " +
              std::to_string(ceiling) + "; use sampling") {}
};

struct EnumerationSpec {
  enum class Mode { exhaustive, sample };
  Mode mode = Mode::exhaustive;
  uint64_t samples = 0;
  uint64_t seed = 0;
  uint64_t exhaustive_ceiling = uint64_t{1} << 26;

  static EnumerationSpec exhaustive(uint64_t ceiling = uint64_t{1} << 26) {
    EnumerationSpec s;
    s.exhaustive_ceiling = ceiling;
    return s;
  }
  static EnumerationSpec sample(uint64_t count, uint64_t seed) {
    EnumerationSpec s;
    s.mode = Mode::sample;
    s.samples = count;
    s.seed = seed;
    return s;
  }
};

struct LaneStats {
  std::string label;  // a<i>w<j>
  int a_index = 0;
  int w_index = 0;
  long long n = 0;
  long long error_count = 0;
  long long abs_error_sum = 0;
  long long worst_abs_error = 0;
  long long min_error = 0;
  long long max_error = 0;

  Fraction ep_percent() const { return Fraction{error_count * 100, n}.reduced(); }
  Fraction mae() const { return Fraction{abs_error_sum, n}.reduced(); }
};

struct ErrorStats {
  PackingConfig config;
  Scheme scheme = Scheme::none;
  EnumerationSpec::Mode mode = EnumerationSpec::Mode::exhaustive;
  uint64_t seed = 0;  // meaningful for sampled runs
  std::vector<LaneStats> lanes;

  long long n() const { return lanes.empty() ? 0 : lanes.front().n; }
  Fraction ep_bar() const {
    long long total = 0;
    for (const LaneStats& l : lanes) total += l.error_count;
    return Fraction{total * 100, n() * static_cast<long long>(lanes.size())}.reduced();
  }
  Fraction mae_bar() const {
    long long total = 0;
    for (const LaneStats& l : lanes) total += l.abs_error_sum;
    return Fraction{total, n() * static_cast<long long>(lanes.size())}.reduced();
  }
  long long wce_bar() const {
    long long m = 0;
    for (const LaneStats& l : lanes) m = std::max(m, l.worst_abs_error);
    return m;
  }
};

// Outer-product oracle: a_i * w_j as plain integers, ordered to match
// the lane layout.
inline std::vector<wide_int> oracle(const PackingConfig& cfg, std::span<const wide_int> a,
                                    std::span<const wide_int> w) {
  std::vector<wide_int> out;
  for (const Lane& lane : lane_layout(cfg))
    out.push_back(a[static_cast<size_t>(lane.a_index)] * w[static_cast<size_t>(lane.w_index)]);
  return out;
}

inline std::vector<wide_int> oracle(const PackingConfig& cfg, std::initializer_list<wide_int> a,
                                    std::initializer_list<wide_int> w) {
  return oracle(cfg, std::span<const wide_int>(a.begin(), a.size()),
                std::span<const wide_int>(w.begin(), w.size()));
}

namespace detail {

struct Coordinate {
  int width;
  bool is_signed;
  uint64_t size;      // 2^width
  wide_int base;      // lowest value
};

struct LaneAccum {
  long long error_count = 0;
  long long abs_error_sum = 0;
  long long worst_abs_error = 0;
  long long min_error = 0;
  long long max_error = 0;

  void add(wide_int err) {
    long long e = static_cast<long long>(err);
    if (e != 0) {
      ++error_count;
      long long mag = e < 0 ? -e : e;
      abs_error_sum += mag;
      if (mag > worst_abs_error) worst_abs_error = mag;
    }
    if (e < min_error) min_error = e;
    if (e > max_error) max_error = e;
  }
  void merge(const LaneAccum& o) {
    error_count += o.error_count;
    abs_error_sum += o.abs_error_sum;
    if (o.worst_abs_error > worst_abs_error) worst_abs_error = o.worst_abs_error;
    if (o.min_error < min_error) min_error = o.min_error;
    if (o.max_error > max_error) max_error = o.max_error;
  }
};

// Per-worker enumeration over an index range. Exhaustive indices
// decode lexicographically (a0 outermost, signed coordinates from
// their minimum); sampled indices draw every coordinate independently.
struct Enumerator {
  const PackingConfig& cfg;
  Scheme scheme;
  std::vector<Coordinate> coords;  // a coordinates then w coordinates
  std::vector<uint64_t> strides;   // lexicographic decode strides
  std::vector<Lane> lanes;
  bool lanes_signed;
  int mr_k = 0;
  bool check_floor_bias = false;
  IndexSampler sampler;
  bool sampled = false;

  std::vector<LaneAccum> run(uint64_t begin, uint64_t end) const {
    size_t na = cfg.a_widths.size(), nw = cfg.w_widths.size(), nl = lanes.size();
    std::vector<wide_int> av(na), wv(nw);
    std::vector<LaneAccum> acc(nl);
    const bool physical = cfg.target == Target::dsp48e2;
    for (uint64_t idx = begin; idx < end; ++idx) {
      for (size_t c = 0; c < coords.size(); ++c) {
        uint64_t digit = sampled ? sampler.draw(idx, c, coords[c].size)
                                 : (idx / strides[c]) % coords[c].size;
        wide_int v = coords[c].base + static_cast<wide_int>(digit);
        (c < na ? av[c] : wv[c - na]) = v;
      }
      wide_int fa = 0, fw = 0;
      for (size_t i = 0; i < na; ++i) fa += av[i] << cfg.a_offsets[i];
      for (size_t j = 0; j < nw; ++j) fw += wv[j] << cfg.w_offsets[j];
      wide_int c_addend = 0;
      if (scheme == Scheme::approx)
        for (size_t n = 1; n < nl; ++n)
          if (wv[static_cast<size_t>(lanes[n - 1].w_index)] < 0)
            c_addend += wide_int{1} << lanes[n].offset;
      wide_int p;
      if (physical) {
        DspInputs in;
        in.b = fa;
        in.a = wv[0];
        in.d = fw - wv[0];
        in.c = c_addend;
        p = eval(in, cfg.port).value;
      } else {
        p = wrap_signed_value(fa * fw + c_addend, cfg.output_width);
      }
      for (size_t n = 0; n < nl; ++n) {
        const Lane& lane = lanes[n];
        wide_int v = floor_shift_right(p, lane.offset);
        v = lanes_signed ? wrap_signed_value(v, lane.width) : wrap_unsigned_value(v, lane.width);
        if (scheme == Scheme::full && n > 0) {
          v = wrap_signed_value(v + bit_at(p, lane.offset - 1), lane.width);
        } else if (scheme == Scheme::mr && n + 1 < nl) {
          const Lane& up = lanes[n + 1];
          wide_int low = wrap_unsigned_value(
              wrap_unsigned_value(av[static_cast<size_t>(up.a_index)], mr_k) *
                  wrap_unsigned_value(wv[static_cast<size_t>(up.w_index)], mr_k),
              mr_k);
          v = wrap_signed_value(v - (low << (lane.width - mr_k)), lane.width);
        }
        wide_int err =
            v - av[static_cast<size_t>(lane.a_index)] * wv[static_cast<size_t>(lane.w_index)];
        if (check_floor_bias && (err < -1 || err > 0))
          throw Error("floor-bias bound violated at lane " + std::to_string(n) +
                      " (internal inconsistency)");
        acc[n].add(err);
      }
    }
    return acc;
  }
};

}  // namespace detail

// Exhaustive or sampled error statistics for one configuration and
// correction scheme. `threads` partitions the index space; results are
// identical for any thread count.
inline ErrorStats error_stats(const PackingConfig& cfg, Scheme scheme,
                              const EnumerationSpec& spec, unsigned threads = 1) {
  ValidationReport rep = validate(cfg);
  if (!rep.feasible_for(cfg.target))
    throw Error("configuration infeasible for target " + to_string(cfg.target) + ":\n" +
                rep.summary());
  // Scheme preconditions, via the same checks the correction paths use.
  if (scheme == Scheme::full || scheme == Scheme::approx) {
    if (detail::min_boundary_padding(cfg) < 0)
      throw SchemeMismatch(to_string(scheme) + " correction requires non-negative lane padding");
    if (scheme == Scheme::approx && !cfg.w_signed)
      throw SchemeMismatch("approximate correction assumes signed w entries");
  }
  detail::Enumerator en{cfg, scheme};
  if (scheme == Scheme::mr) en.mr_k = detail::overlap_bits(cfg);
  for (size_t i = 0; i < cfg.a_widths.size(); ++i) {
    int w = cfg.a_widths[i];
    en.coords.push_back({w, cfg.a_signed, uint64_t{1} << w,
                         cfg.a_signed ? -(wide_int{1} << (w - 1)) : 0});
  }
  for (size_t j = 0; j < cfg.w_widths.size(); ++j) {
    int w = cfg.w_widths[j];
    en.coords.push_back({w, cfg.w_signed, uint64_t{1} << w,
                         cfg.w_signed ? -(wide_int{1} << (w - 1)) : 0});
  }
  uint64_t domain = 1;
  for (const detail::Coordinate& c : en.coords) {
    if (domain > (uint64_t{1} << 62) / c.size) throw Error("domain size overflows");
    domain *= c.size;
  }
  en.strides.assign(en.coords.size(), 1);
  for (size_t c = en.coords.size(); c-- > 1;)
    en.strides[c - 1] = en.strides[c] * en.coords[c].size;

  uint64_t n_total;
  if (spec.mode == EnumerationSpec::Mode::exhaustive) {
    if (domain > spec.exhaustive_ceiling) throw DomainTooLarge(domain, spec.exhaustive_ceiling);
    n_total = domain;
  } else {
    en.sampled = true;
    en.sampler.seed = spec.seed;
    n_total = spec.samples;
  }
  en.lanes = lane_layout(cfg);
  en.lanes_signed = cfg.lanes_signed();
  en.check_floor_bias = scheme == Scheme::none && detail::min_boundary_padding(cfg) >= 0;

  unsigned t = threads == 0 ? 1 : threads;
  std::vector<std::vector<detail::LaneAccum>> parts(t);
  if (t == 1) {
    parts[0] = en.run(0, n_total);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (unsigned k = 0; k < t; ++k) {
      uint64_t lo = n_total * k / t, hi = n_total * (k + 1) / t;
      pool.emplace_back([&, k, lo, hi] {
        try {
          parts[k] = en.run(lo, hi);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<detail::LaneAccum> acc(en.lanes.size());
  for (const auto& part : parts)
    for (size_t n = 0; n < acc.size(); ++n) acc[n].merge(part[n]);

  ErrorStats stats;
  stats.config = cfg;
  stats.scheme = scheme;
  stats.mode = spec.mode;
  stats.seed = spec.seed;
  for (size_t n = 0; n < en.lanes.size(); ++n) {
    const Lane& lane = en.lanes[n];
    LaneStats ls;
    ls.label = "a" + std::to_string(lane.a_index) + "w" + std::to_string(lane.w_index);
    ls.a_index = lane.a_index;
    ls.w_index = lane.w_index;
    ls.n = static_cast<long long>(n_total);
    ls.error_count = acc[n].error_count;
    ls.abs_error_sum = acc[n].abs_error_sum;
    ls.worst_abs_error = acc[n].worst_abs_error;
    ls.min_error = acc[n].min_error;
    ls.max_error = acc[n].max_error;
    stats.lanes.push_back(std::move(ls));
  }
  return stats;
}

// Density table rows; literature entries carry a quoted constant
// instead of a measured ratio.
struct DensityRow {
  std::string label;
  Fraction density;
  bool literature = false;
};

struct DensityReport {
  std::vector<DensityRow> rows;
};

inline constexpr long long kHuangDensityNum = 56;  // Huang et al., quoted comparison value
inline constexpr long long kHuangDensityDen = 100;

inline DensityReport density_report(std::span<const PackingConfig> configs, int total_bits = 48,
                                    bool include_literature = true) {
  DensityReport rep;
  for (const PackingConfig& cfg : configs) {
    Density d = packing_density(cfg, total_bits);
    rep.rows.push_back(
        {cfg.name.empty() ? "config" : cfg.name, Fraction{d.used, d.total}, false});
  }
  if (include_literature)
    rep.rows.push_back({"Huang et al.", Fraction{kHuangDensityNum, kHuangDensityDen}, true});
  return rep;
}

}  // namespace dsppack
