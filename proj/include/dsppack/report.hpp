#pragma once

// Report rendering for error statistics and density tables. Displayed
// figures use round-half-even at two decimals; the JSON form carries
// raw counts and exact fractions so any displayed value can be audited.
// CSV keeps the fixed column contract result,mae,ep_percent,wce with
// six-decimal values. All output is byte-deterministic.

#include <string>

#include "dsppack/analysis.hpp"
#include "dsppack/config_io.hpp"

namespace dsppack {

enum class Format { csv, json, markdown };

inline Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "markdown") return Format::markdown;
  throw Error("unknown format '" + s + "' (csv|json|markdown)");
}

namespace detail {

inline nlohmann::ordered_json metric_json(const Fraction& f, int digits) {
  nlohmann::ordered_json j;
  j["num"] = f.num;
  j["den"] = f.den;
  j["display"] = format_decimal(f, digits);
  return j;
}

}  // namespace detail

inline std::string render(const ErrorStats& stats, Format format) {
  if (format == Format::csv) {
    std::string out = "result,mae,ep_percent,wce\n";
    for (const LaneStats& l : stats.lanes)
      out += l.label + "," + format_decimal(l.mae(), 6) + "," + format_decimal(l.ep_percent(), 6) +
             "," + std::to_string(l.worst_abs_error) + "\n";
    if (!stats.lanes.empty())
      out += "all," + format_decimal(stats.mae_bar(), 6) + "," +
             format_decimal(stats.ep_bar(), 6) + "," + std::to_string(stats.wce_bar()) + "\n";
    return out;
  }
  if (format == Format::markdown) {
    std::string out = "| result | mae | ep | wce |\n|---|---|---|---|\n";
    for (const LaneStats& l : stats.lanes)
      out += "| " + l.label + " | " + format_decimal(l.mae(), 2) + " | " +
             format_decimal(l.ep_percent(), 2) + "% | " + std::to_string(l.worst_abs_error) +
             " |\n";
    if (!stats.lanes.empty())
      out += "| all | " + format_decimal(stats.mae_bar(), 2) + " | " +
             format_decimal(stats.ep_bar(), 2) + "% | " + std::to_string(stats.wce_bar()) +
             " |\n";
    return out;
  }
  nlohmann::ordered_json j;
  j["kind"] = "error_stats";
  j["config"] = to_json(stats.config);
  j["scheme"] = to_string(stats.scheme);
  j["enumeration"]["mode"] =
      stats.mode == EnumerationSpec::Mode::exhaustive ? "exhaustive" : "sample";
  j["enumeration"]["n"] = stats.n();
  if (stats.mode == EnumerationSpec::Mode::sample)
    j["enumeration"]["seed"] = stats.seed;
  else
    j["enumeration"]["seed"] = nullptr;
  j["lanes"] = nlohmann::ordered_json::array();
  for (const LaneStats& l : stats.lanes) {
    nlohmann::ordered_json lj;
    lj["result"] = l.label;
    lj["n"] = l.n;
    lj["error_count"] = l.error_count;
    lj["abs_error_sum"] = l.abs_error_sum;
    lj["mae"] = detail::metric_json(l.mae(), 2);
    lj["ep_percent"] = detail::metric_json(l.ep_percent(), 2);
    lj["wce"] = l.worst_abs_error;
    lj["min_error"] = l.min_error;
    lj["max_error"] = l.max_error;
    j["lanes"].push_back(lj);
  }
  if (!stats.lanes.empty()) {
    nlohmann::ordered_json a;
    a["result"] = "all";
    a["n"] = stats.n();
    a["mae"] = detail::metric_json(stats.mae_bar(), 2);
    a["ep_percent"] = detail::metric_json(stats.ep_bar(), 2);
    a["wce"] = stats.wce_bar();
    j["all"] = a;
  }
  return j.dump(2) + "\n";
}

// Densities print the exact ratio next to a two-decimal half-up figure
// (the convention the comparison chart labels follow: 1.125 -> 1.13).
inline std::string render(const DensityReport& rep, Format format) {
  auto display = [](const DensityRow& r) {
    return format_decimal(r.density, 2, Rounding::half_up);
  };
  auto exact = [](const DensityRow& r) {
    Fraction f = r.density.reduced();
    return std::to_string(f.num) + "/" + std::to_string(f.den);
  };
  if (format == Format::csv) {
    std::string out = "technique,density,density_exact,source\n";
    for (const DensityRow& r : rep.rows)
      out += r.label + "," + display(r) + "," + exact(r) + "," +
             (r.literature ? "literature" : "measured") + "\n";
    return out;
  }
  if (format == Format::markdown) {
    std::string out = "| technique | density | exact | source |\n|---|---|---|---|\n";
    for (const DensityRow& r : rep.rows)
      out += "| " + r.label + " | " + display(r) + " | " + exact(r) + " | " +
             (r.literature ? "literature" : "measured") + " |\n";
    return out;
  }
  nlohmann::ordered_json j;
  j["kind"] = "density";
  j["rows"] = nlohmann::ordered_json::array();
  for (const DensityRow& r : rep.rows) {
    nlohmann::ordered_json rj;
    rj["technique"] = r.label;
    rj["num"] = r.density.num;
    rj["den"] = r.density.den;
    rj["display"] = display(r);
    rj["source"] = r.literature ? "literature" : "measured";
    j["rows"].push_back(rj);
  }
  return j.dump(2) + "\n";
}

}  // namespace dsppack
