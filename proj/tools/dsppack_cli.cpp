// Command-line front end: config validation, single-shot simulation,
// exhaustive/sampled error analysis, packing-density tables, addition
// packing and design-space sweeps.
//
// Exit codes: 0 success, 1 domain/feasibility failure, 2 usage or
// config parse failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dsppack/dsppack.hpp"

namespace {

using namespace dsppack;

std::vector<wide_int> parse_values(const std::string& csv) {
  std::vector<wide_int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error("empty entry in value list '" + csv + "'");
    out.push_back(static_cast<wide_int>(std::stoll(item)));
  }
  if (out.empty()) throw Error("empty value list");
  return out;
}

std::vector<int> parse_widths(const std::string& csv) {
  std::vector<int> out;
  for (wide_int v : parse_values(csv)) out.push_back(static_cast<int>(v));
  return out;
}

unsigned thread_cap(unsigned requested) {
  if (const char* env = std::getenv("DSPPACK_THREADS")) {
    unsigned cap = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (cap >= 1 && cap < requested) return cap;
  }
  return requested;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write '" + out_path + "'");
  out << text;
}

std::string density_display(const Fraction& f) {
  return format_decimal(f, 2, Rounding::half_up);
}

int cmd_validate(const std::string& config) {
  PackingConfig cfg = load_packing_config(config);
  ValidationReport rep = validate(cfg);
  std::cout << rep.summary();
  Density d = packing_density(cfg);
  std::string pads;
  for (size_t i = 0; i < rep.boundary_padding.size(); ++i)
    pads += (i ? "," : "") + std::to_string(rep.boundary_padding[i]);
  bool feasible = rep.feasible_for(cfg.target);
  std::cout << (feasible ? "feasible" : "infeasible") << " for target " << to_string(cfg.target)
            << ", delta=" << cfg.delta << " (boundaries " << pads << "), rho="
            << density_display(Fraction{d.used, d.total}) << " (" << d.used << "/" << d.total
            << ")\n";
  return feasible ? 0 : 1;
}

int cmd_simulate(const std::string& config, const std::string& a_csv, const std::string& w_csv,
                 const std::string& scheme_name) {
  PackingConfig cfg = load_packing_config(config);
  Scheme scheme = scheme_from_string(scheme_name);
  std::vector<wide_int> a = parse_values(a_csv);
  std::vector<wide_int> w = parse_values(w_csv);
  SimulationResult r = simulate_packed(cfg, a, w, scheme);
  std::vector<wide_int> expect = oracle(cfg, a, w);
  std::cout << "config: " << (cfg.name.empty() ? config : cfg.name) << " (target "
            << to_string(cfg.target) << ", scheme " << to_string(scheme) << ")\n";
  std::cout << "P = 0x" << to_hex(r.p.value, r.p.width) << " (" << to_string(r.p.value) << ", "
            << r.p.width << "-bit)\n";
  std::cout << "result offset width raw_bits";
  std::cout << std::string(1, ' ') << "naive corrected oracle error\n";
  for (size_t n = 0; n < r.naive.size(); ++n) {
    const LaneValue& nv = r.naive[n];
    const LaneValue& cv = r.corrected[n];
    wide_int err = cv.value - expect[n];
    std::cout << "a" << nv.a_index << "w" << nv.w_index << "   " << nv.offset << "\t" << nv.width
              << "\t" << to_binary(nv.raw.value, nv.width) << " " << to_string(nv.value) << "\t"
              << to_string(cv.value) << "\t" << to_string(expect[n]) << "\t" << to_string(err)
              << "\n";
  }
  return 0;
}

int cmd_analyze(const std::string& config, const std::string& scheme_name, bool exhaustive,
                uint64_t samples, uint64_t seed, const std::string& format_name,
                const std::string& out_path, unsigned threads) {
  PackingConfig cfg = load_packing_config(config);
  Scheme scheme = scheme_from_string(scheme_name);
  Format format = format_from_string(format_name);
  EnumerationSpec spec =
      samples > 0 && !exhaustive ? EnumerationSpec::sample(samples, seed) : EnumerationSpec::exhaustive();
  ErrorStats stats = error_stats(cfg, scheme, spec, thread_cap(threads));
  write_output(render(stats, format), out_path);
  std::cout << "all: mae=" << format_decimal(stats.mae_bar(), 2)
            << " ep=" << format_decimal(stats.ep_bar(), 2) << "% wce=" << stats.wce_bar()
            << " n=" << stats.n() << "\n";
  return 0;
}

int cmd_density(const std::vector<std::string>& configs, const std::string& format_name,
                int total_bits, const std::string& out_path) {
  std::vector<PackingConfig> cfgs;
  std::vector<std::string> names =
      configs.empty() ? std::vector<std::string>{"int4", "int8", "intn-6lane", "overpack-6lane"}
                      : configs;
  for (const std::string& name : names) cfgs.push_back(load_packing_config(name));
  DensityReport rep = density_report(cfgs, total_bits);
  write_output(render(rep, format_from_string(format_name)), out_path);
  return 0;
}

int cmd_addpack(const std::string& config_path, const std::string& widths_csv, int guard,
                int total, const std::string& x_csv, const std::string& y_csv, bool analyze,
                uint64_t samples, uint64_t seed, const std::string& format_name) {
  AdditionPackConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config '" + config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    cfg = addition_config_from_json(j);
  } else {
    if (widths_csv.empty()) throw ConfigError("give --widths or --config");
    cfg.lane_widths = parse_widths(widths_csv);
    cfg.guard_bits = guard;
    cfg.total_width = total;
  }
  check_addition_config(cfg);

  if (!analyze) {
    if (x_csv.empty() || y_csv.empty()) throw ConfigError("give --x and --y, or --analyze");
    auto res = add_packed(cfg, parse_values(x_csv), parse_values(y_csv));
    std::cout << "lane offset width actual expected carry_in error\n";
    for (const auto& lane : res)
      std::cout << lane.lane << "    " << lane.offset << "\t" << lane.width << "\t"
                << to_string(lane.actual) << "\t" << to_string(lane.expected) << "\t"
                << lane.carry_in << "\t" << lane.error() << "\n";
    return 0;
  }

  // Seeded Monte-Carlo over lane operands; error is 0/1 so EP and MAE
  // coincide and WCE is the observed maximum.
  size_t lanes = cfg.lane_widths.size();
  std::vector<long long> errs(lanes, 0);
  std::vector<long long> wce(lanes, 0);
  IndexSampler rng{seed};
  std::vector<wide_int> x(lanes), y(lanes);
  for (uint64_t t = 0; t < samples; ++t) {
    for (size_t i = 0; i < lanes; ++i) {
      uint64_t m = uint64_t{1} << cfg.lane_widths[i];
      x[i] = static_cast<wide_int>(rng.draw(t, i, m));
      y[i] = static_cast<wide_int>(rng.draw(t, lanes + i, m));
    }
    auto res = add_packed(cfg, x, y);
    for (size_t i = 0; i < lanes; ++i) {
      errs[i] += res[i].error();
      wce[i] = std::max<long long>(wce[i], res[i].error());
    }
  }
  Format format = format_from_string(format_name);
  long long n = static_cast<long long>(samples);
  long long total_err = 0, wce_max = 0;
  for (size_t i = 0; i < lanes; ++i) {
    total_err += errs[i];
    wce_max = std::max(wce_max, wce[i]);
  }
  if (format == Format::json) {
    nlohmann::ordered_json j;
    j["kind"] = "addpack_stats";
    j["config"] = to_json(cfg);
    j["seed"] = seed;
    j["n"] = n;
    j["lanes"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < lanes; ++i) {
      nlohmann::ordered_json lj;
      lj["lane"] = i;
      lj["error_count"] = errs[i];
      lj["ep_percent"] = {{"num", errs[i] * 100}, {"den", n}};
      lj["wce"] = wce[i];
      j["lanes"].push_back(lj);
    }
    j["all"] = {{"ep_percent", {{"num", total_err * 100}, {"den", n * static_cast<long long>(lanes)}}},
                {"wce", wce_max}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "lane,mae,ep_percent,wce\n";
    for (size_t i = 0; i < lanes; ++i)
      std::cout << "lane" << i << "," << format_decimal(errs[i], n, 6) << ","
                << format_decimal(errs[i] * 100, n, 6) << "," << wce[i] << "\n";
    std::cout << "all," << format_decimal(total_err, n * static_cast<long long>(lanes), 6) << ","
              << format_decimal(total_err * 100, n * static_cast<long long>(lanes), 6) << ","
              << wce_max << "\n";
  }
  return 0;
}

struct SweepRow {
  PackingConfig cfg;
  Fraction rho;
  int span;
  bool overlap;
  std::string mae;
};

int cmd_sweep(int a_count, int w_count, int a_width, int w_width, const std::string& delta_range,
              const std::string& target_name, bool measure, uint64_t ceiling) {
  size_t dots = delta_range.find("..");
  if (dots == std::string::npos)
    throw ConfigError("delta range must look like lo..hi, got '" + delta_range + "'");
  int lo = std::stoi(delta_range.substr(0, dots));
  int hi = std::stoi(delta_range.substr(dots + 2));
  if (lo > hi) throw ConfigError("empty delta range");
  Target target = target_name == "dsp48e2" ? Target::dsp48e2
                  : target_name == "ideal" ? Target::ideal
                                           : throw ConfigError("unknown target '" + target_name + "'");
  std::vector<SweepRow> rows;
  for (int delta = lo; delta <= hi; ++delta) {
    PackingConfig cfg;
    try {
      cfg = derive_layout(std::vector<int>(static_cast<size_t>(a_count), a_width),
                          std::vector<int>(static_cast<size_t>(w_count), w_width), delta);
    } catch (const Error&) {
      continue;  // stride collapsed
    }
    cfg.target = target;
    cfg.name = "delta=" + std::to_string(delta);
    ValidationReport rep = validate(cfg);
    if (!rep.feasible_for(target)) continue;
    std::vector<Lane> lanes = lane_layout(cfg);
    SweepRow row;
    row.cfg = cfg;
    Density d = packing_density(cfg);
    row.rho = Fraction{d.used, d.total};
    row.span = lanes.back().offset + lanes.back().width;
    row.overlap = rep.has_overlap;
    if (measure) {
      ErrorStats stats =
          error_stats(cfg, Scheme::none, EnumerationSpec::exhaustive(ceiling), thread_cap(4));
      row.mae = format_decimal(stats.mae_bar(), 2);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    std::cerr << "error: no feasible configuration in the range\n";
    return 1;
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    double ra = a.rho.value(), rb = b.rho.value();
    if (ra != rb) return ra > rb;
    if (a.span != b.span) return a.span < b.span;
    return a.cfg.delta < b.cfg.delta;
  });
  std::cout << "delta,rho,rho_exact,span,overlap" << (measure ? ",mae_bar" : "") << "\n";
  for (const SweepRow& row : rows) {
    Fraction f = row.rho.reduced();
    std::cout << row.cfg.delta << "," << density_display(row.rho) << "," << f.num << "/" << f.den
              << "," << row.span << "," << (row.overlap ? "yes" : "no");
    if (measure) std::cout << "," << row.mae;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bit-exact model of packed low-precision multiplication and addition on a "
               "48-bit multiply-accumulate block, with error analysis"};
  app.require_subcommand(1);

  std::string config, a_csv, w_csv, scheme = "none", format = "markdown", out_path;
  uint64_t samples = 0, seed = 0;
  bool exhaustive = false;
  unsigned threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a packing configuration");
  validate_cmd->add_option("config", config, "preset name or JSON file")->required();

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Evaluate one packed multiplication");
  simulate_cmd->add_option("config", config)->required();
  simulate_cmd->add_option("--a", a_csv, "comma-separated a operands")->required();
  simulate_cmd->add_option("--w", w_csv, "comma-separated w operands")->required();
  simulate_cmd->add_option("--correction", scheme, "none|full|approx|mr");

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Error statistics over an input domain");
  analyze_cmd->add_option("config", config)->required();
  analyze_cmd->add_option("--correction", scheme, "none|full|approx|mr");
  analyze_cmd->add_flag("--exhaustive", exhaustive, "force exhaustive enumeration");
  analyze_cmd->add_option("--samples", samples, "sampled enumeration count");
  analyze_cmd->add_option("--seed", seed, "sampling seed");
  analyze_cmd->add_option("--format", format, "csv|json|markdown");
  analyze_cmd->add_option("--out", out_path, "write the report to a file");
  analyze_cmd->add_option("--threads", threads, "worker threads (capped by DSPPACK_THREADS)");

  std::vector<std::string> density_configs;
  int total_bits = 48;
  CLI::App* density_cmd = app.add_subcommand("density", "Packing density table");
  density_cmd->add_option("configs", density_configs, "presets or JSON files (default: paper set)");
  density_cmd->add_option("--format", format, "csv|json|markdown");
  density_cmd->add_option("--total-bits", total_bits, "output width the density is measured against");
  density_cmd->add_option("--out", out_path, "write the report to a file");

  std::string widths_csv, x_csv, y_csv, add_config;
  int guard = 0, total = 48;
  bool add_analyze = false;
  CLI::App* addpack_cmd = app.add_subcommand("addpack", "Packed addition simulation/analysis");
  addpack_cmd->add_option("--config", add_config, "JSON addition config");
  addpack_cmd->add_option("--widths", widths_csv, "comma-separated lane widths");
  addpack_cmd->add_option("--guard", guard, "guard bits per boundary");
  addpack_cmd->add_option("--total", total, "adder width");
  addpack_cmd->add_option("--x", x_csv, "lane addends");
  addpack_cmd->add_option("--y", y_csv, "lane addends");
  addpack_cmd->add_flag("--analyze", add_analyze, "Monte-Carlo error statistics");
  addpack_cmd->add_option("--samples", samples, "trial count")->default_val(100000);
  addpack_cmd->add_option("--seed", seed, "sampling seed");
  addpack_cmd->add_option("--format", format, "csv|json|markdown");

  int a_count = 2, w_count = 2, a_width = 4, w_width = 4;
  std::string delta_range = "0..3", sweep_target = "ideal";
  bool measure = false;
  uint64_t ceiling = uint64_t{1} << 26;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Enumerate derived layouts across a delta range");
  sweep_cmd->add_option("--a-count", a_count);
  sweep_cmd->add_option("--w-count", w_count);
  sweep_cmd->add_option("--a-width", a_width);
  sweep_cmd->add_option("--w-width", w_width);
  sweep_cmd->add_option("--delta-range", delta_range, "lo..hi");
  sweep_cmd->add_option("--target", sweep_target, "ideal|dsp48e2");
  sweep_cmd->add_flag("--measure", measure, "exhaustive mae_bar per feasible config");
  sweep_cmd->add_option("--ceiling", ceiling, "exhaustive enumeration ceiling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(config);
    if (*simulate_cmd) return cmd_simulate(config, a_csv, w_csv, scheme);
    if (*analyze_cmd)
      return cmd_analyze(config, scheme, exhaustive, samples, seed, format, out_path, threads);
    if (*density_cmd) return cmd_density(density_configs, format, total_bits, out_path);
    if (*addpack_cmd)
      return cmd_addpack(add_config, widths_csv, guard, total, x_csv, y_csv, add_analyze, samples,
                         seed, format);
    if (*sweep_cmd)
      return cmd_sweep(a_count, w_count, a_width, w_width, delta_range, sweep_target, measure,
                       ceiling);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
