#include "dsppack/analysis.hpp"

#include <array>

#include "dsppack/presets.hpp"
#include "dsppack/report.hpp"
#include "support.hpp"

using namespace dsppack;

namespace {

struct LaneExpect {
  long long errors;
  long long abs_sum;
  long long wce;
};

void check_lanes(const ErrorStats& stats, const std::vector<LaneExpect>& expect, long long n) {
  REQUIRE(stats.lanes.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) {
    INFO("lane " << i << " (" << stats.lanes[i].label << ")");
    CHECK(stats.lanes[i].n == n);
    CHECK(stats.lanes[i].error_count == expect[i].errors);
    CHECK(stats.lanes[i].abs_error_sum == expect[i].abs_sum);
    CHECK(stats.lanes[i].worst_abs_error == expect[i].wce);
  }
}

}  // namespace

TEST_CASE("oracle orders products by lane", "[analysis]") {
  std::vector<wide_int> prods = oracle(preset_int4(), {10, 3}, {-7, -4});
  CHECK(prods == std::vector<wide_int>{-70, -21, -40, -12});
  CHECK(oracle(preset_int4(), {0, 0}, {0, 0}) == std::vector<wide_int>(4, 0));
  PackingConfig one = derive_layout({4}, {4}, 0);
  CHECK(oracle(one, {3}, {-6}) == std::vector<wide_int>{-18});
}

TEST_CASE("exhaustive stats reproduce the uncorrected error profile", "[analysis]") {
  ErrorStats s = error_stats(preset_int4(), Scheme::none, EnumerationSpec::exhaustive());
  check_lanes(s,
              {{0, 0, 0}, {30720, 30720, 1}, {32640, 32640, 1}, {34560, 34560, 1}},
              65536);
  CHECK(s.mae_bar() == Fraction{765, 2048});   // 24480/65536
  CHECK(s.ep_bar() == Fraction{19125, 512});   // 37.3535...%
  CHECK(s.wce_bar() == 1);
  // Floor bias only ever subtracts one.
  for (const LaneStats& l : s.lanes) {
    CHECK(l.min_error >= -1);
    CHECK(l.max_error <= 0);
  }
}

TEST_CASE("full correction is exact over the whole domain", "[analysis]") {
  ErrorStats s = error_stats(preset_int4(), Scheme::full, EnumerationSpec::exhaustive());
  check_lanes(s, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}}, 65536);
}

TEST_CASE("approx correction leaves the zero-operand residue", "[analysis]") {
  ErrorStats s = error_stats(preset_int4(), Scheme::approx, EnumerationSpec::exhaustive());
  check_lanes(s, {{0, 0, 0}, {2048, 2048, 1}, {2064, 2064, 1}, {2056, 2056, 1}}, 65536);
  CHECK(s.wce_bar() == 1);
}

TEST_CASE("MR restoration bounds the overpacking damage", "[analysis]") {
  PackingConfig cfg = preset_fig8_overpack_delta_2();
  ErrorStats s = error_stats(cfg, Scheme::mr, EnumerationSpec::exhaustive());
  check_lanes(s, {{0, 0, 0}, {34304, 39680, 2}, {36320, 42032, 2}, {38143, 43654, 2}}, 65536);
  ErrorStats naive = error_stats(cfg, Scheme::none, EnumerationSpec::exhaustive());
  CHECK(naive.wce_bar() == 194);
  CHECK(naive.lanes[3].error_count == s.lanes[3].error_count);  // top lane untouched by MR
}

TEST_CASE("threaded partitions merge to the single-thread result", "[analysis]") {
  ErrorStats a = error_stats(preset_int4(), Scheme::none, EnumerationSpec::exhaustive(), 1);
  ErrorStats b = error_stats(preset_int4(), Scheme::none, EnumerationSpec::exhaustive(), 3);
  REQUIRE(a.lanes.size() == b.lanes.size());
  for (size_t i = 0; i < a.lanes.size(); ++i) {
    CHECK(a.lanes[i].error_count == b.lanes[i].error_count);
    CHECK(a.lanes[i].abs_error_sum == b.lanes[i].abs_error_sum);
    CHECK(a.lanes[i].worst_abs_error == b.lanes[i].worst_abs_error);
    CHECK(a.lanes[i].min_error == b.lanes[i].min_error);
  }
  CHECK(render(a, Format::csv) == render(b, Format::csv));
}

TEST_CASE("exhaustive mode refuses oversized domains", "[analysis]") {
  PackingConfig cfg = derive_layout({8, 8}, {8, 8}, 0);  // 2^32 tuples
  cfg.target = Target::ideal;
  cfg.output_width = 64;
  CHECK_THROWS_AS(error_stats(cfg, Scheme::none, EnumerationSpec::exhaustive()), DomainTooLarge);
  CHECK_NOTHROW(error_stats(cfg, Scheme::none, EnumerationSpec::sample(1000, 42)));
}

TEST_CASE("ideal configs must fit their declared output width", "[analysis][packing]") {
  PackingConfig cfg = derive_layout({8, 8}, {8, 8}, 0);  // top lane ends at bit 64
  cfg.target = Target::ideal;
  CHECK_FALSE(validate(cfg).feasible_for(Target::ideal));
  CHECK_THROWS_AS(error_stats(cfg, Scheme::none, EnumerationSpec::sample(10, 1)), Error);
}

TEST_CASE("sampled runs are seed-deterministic", "[analysis]") {
  PackingConfig cfg = preset_int8();
  ErrorStats a = error_stats(cfg, Scheme::none, EnumerationSpec::sample(20000, 7));
  ErrorStats b = error_stats(cfg, Scheme::none, EnumerationSpec::sample(20000, 7), 4);
  CHECK(render(a, Format::json) == render(b, Format::json));
  ErrorStats c = error_stats(cfg, Scheme::none, EnumerationSpec::sample(20000, 8));
  CHECK(render(a, Format::csv) != render(c, Format::csv));
  CHECK(a.lanes[0].error_count == 0);  // lane 0 exact regardless of inputs
  CHECK(a.lanes[1].worst_abs_error <= 1);
}

TEST_CASE("csv uses the fixed column contract", "[analysis]") {
  ErrorStats s = error_stats(preset_int4(), Scheme::none, EnumerationSpec::exhaustive());
  std::string csv = render(s, Format::csv);
  CHECK(csv.starts_with("result,mae,ep_percent,wce\n"));
  CHECK(csv.find("a1w0,0.468750,46.875000,1\n") != std::string::npos);
  CHECK(csv.find("all,0.373535,37.353516,1\n") != std::string::npos);
}

TEST_CASE("markdown rounds half-even at two decimals", "[analysis]") {
  ErrorStats s = error_stats(preset_int4(), Scheme::none, EnumerationSpec::exhaustive());
  std::string md = render(s, Format::markdown);
  CHECK(md.find("| all | 0.37 | 37.35% | 1 |") != std::string::npos);
  CHECK(md.find("| a1w0 | 0.47 | 46.88% | 1 |") != std::string::npos);
}

TEST_CASE("json carries counts, exact fractions and the seed", "[analysis]") {
  ErrorStats s = error_stats(preset_int4(), Scheme::approx, EnumerationSpec::exhaustive());
  nlohmann::json j = nlohmann::json::parse(render(s, Format::json));
  CHECK(j["scheme"] == "approx");
  CHECK(j["enumeration"]["mode"] == "exhaustive");
  CHECK(j["enumeration"]["n"] == 65536);
  CHECK(j["enumeration"]["seed"].is_null());
  CHECK(j["lanes"].size() == 4);
  CHECK(j["lanes"][1]["error_count"] == 2048);
  CHECK(j["lanes"][1]["mae"]["num"] == 1);
  CHECK(j["lanes"][1]["mae"]["den"] == 32);
  CHECK(j["config"]["a_widths"] == std::vector<int>({4, 4}));
  CHECK(j["all"]["wce"] == 1);

  ErrorStats sampled = error_stats(preset_int4(), Scheme::none, EnumerationSpec::sample(100, 99));
  nlohmann::json js = nlohmann::json::parse(render(sampled, Format::json));
  CHECK(js["enumeration"]["seed"] == 99);

  ErrorStats empty;
  nlohmann::json je = nlohmann::json::parse(render(empty, Format::json));
  CHECK(je["lanes"].is_array());
  CHECK(je["lanes"].empty());
}

TEST_CASE("density report carries exact ratios and the literature bar", "[analysis]") {
  std::vector<PackingConfig> cfgs{preset_int4(), preset_int8(), preset_intn_6lane(),
                                  preset_overpack_6lane()};
  DensityReport rep = density_report(cfgs);
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.rows[0].density.reduced() == Fraction{2, 3});
  CHECK(rep.rows[1].density.reduced() == Fraction{2, 3});
  CHECK(rep.rows[2].density.reduced() == Fraction{7, 8});  // 0.875
  CHECK(rep.rows[3].density.reduced() == Fraction{9, 8});  // 1.125
  CHECK(rep.rows[4].literature);
  std::string csv = render(rep, Format::csv);
  CHECK(csv.find("int4,0.67,2/3,measured") != std::string::npos);
  CHECK(csv.find("overpack-6lane,1.13,9/8,measured") != std::string::npos);
  CHECK(csv.find("Huang et al.,0.56,14/25,literature") != std::string::npos);

  DensityReport empty = density_report({}, 48, false);
  CHECK(empty.rows.empty());
}

TEST_CASE("single multiplier density against the full output", "[analysis]") {
  PackingConfig single = derive_layout({4}, {4}, 0);
  single.name = "single-4x4";
  std::vector<PackingConfig> cfgs{single};
  DensityReport rep = density_report(cfgs, 48, false);
  CHECK(rep.rows[0].density == Fraction{8, 48});
}
