#include "dsppack/correction.hpp"

#include <vector>

#include "dsppack/presets.hpp"
#include "dsppack/rng.hpp"
#include "support.hpp"

using namespace dsppack;

TEST_CASE("correct_full rounds half up via the bit below each lane", "[correction]") {
  PackingConfig cfg = preset_int4();
  Word p = multiply_packed(cfg, {1, 2}, {-1, 0});
  REQUIRE(p.value == -4097);
  LaneSet naive = extract_naive(p, cfg);
  LaneSet fixed = correct_full(p, cfg, naive);
  CHECK(fixed[0].value == -1);
  CHECK(fixed[1].value == -2);
  CHECK(fixed[2].value == 0);
  CHECK(fixed[3].value == 0);

  for (const LaneValue& lv : correct_full(wrap_signed(0, 48), cfg, extract_naive(wrap_signed(0, 48), cfg)))
    CHECK(lv.value == 0);
}

TEST_CASE("correct_full matches the oracle on random packed products", "[correction]") {
  PackingConfig cfg = preset_int4();
  IndexSampler rng{.seed = 4};
  for (uint64_t t = 0; t < 4000; ++t) {
    std::vector<wide_int> a{static_cast<wide_int>(rng.draw(t, 0, 16)),
                            static_cast<wide_int>(rng.draw(t, 1, 16))};
    std::vector<wide_int> w{static_cast<wide_int>(rng.draw(t, 2, 16)) - 8,
                            static_cast<wide_int>(rng.draw(t, 3, 16)) - 8};
    Word p = multiply_packed(cfg, a, w);
    LaneSet fixed = correct_full(p, cfg, extract_naive(p, cfg));
    for (const LaneValue& lv : fixed)
      CHECK(lv.value ==
            a[static_cast<size_t>(lv.a_index)] * w[static_cast<size_t>(lv.w_index)]);
  }
}

TEST_CASE("correct_full requires non-negative padding", "[correction]") {
  PackingConfig cfg = preset_fig8_overpack_delta_2();
  Word p = multiply_packed(cfg, {0, 0}, {0, 0});
  CHECK_THROWS_AS(correct_full(p, cfg, extract_naive(p, cfg)), SchemeMismatch);
}

TEST_CASE("build_approx_correction predicts sign bits one lane up", "[correction]") {
  PackingConfig cfg = preset_int4();
  CHECK(build_approx_correction(cfg, {-7, -4}).value ==
        (wide_int{1} << 11) + (wide_int{1} << 22) + (wide_int{1} << 33));
  CHECK(build_approx_correction(cfg, {3, 5}).value == 0);
  CHECK(build_approx_correction(cfg, {-7, 4}).value == (wide_int{1} << 11) + (wide_int{1} << 22));
}

TEST_CASE("approx correction through the C port fixes the floor bias", "[correction]") {
  PackingConfig cfg = preset_int4();
  wide_int c = build_approx_correction(cfg, {-1, 0}).value;
  CHECK(c == (wide_int{1} << 11) + (wide_int{1} << 22));
  Word p = multiply_packed(cfg, {1, 2}, {-1, 0}, c);
  CHECK(p.value == 4192255);  // -4097 + 2^11 + 2^22
  LaneSet lanes = extract_naive(p, cfg);
  CHECK(lanes[0].value == -1);
  CHECK(lanes[1].value == -2);
  CHECK(lanes[2].value == 0);
  CHECK(lanes[3].value == 0);
}

TEST_CASE("approx correction wants signed w", "[correction]") {
  PackingConfig cfg = preset_int4();
  cfg.w_signed = false;
  CHECK_THROWS_AS(build_approx_correction(cfg, {7, 4}), SchemeMismatch);
}

TEST_CASE("low_bits_product is the product modulo 2^k", "[correction]") {
  CHECK(low_bits_product(3, -7, 2).value == 3);  // both low bits set
  CHECK(low_bits_product(0, -5, 1).value == 0);
  CHECK(low_bits_product(13, -5, 4).value == 15);  // -65 mod 16

  IndexSampler rng{.seed = 6};
  for (uint64_t t = 0; t < 4000; ++t) {
    wide_int a = static_cast<wide_int>(rng.draw(t, 0, 512)) - 256;
    wide_int w = static_cast<wide_int>(rng.draw(t, 1, 512)) - 256;
    int k = 1 + static_cast<int>(rng.draw(t, 2, 8));
    wide_int m = wide_int{1} << k;
    CHECK(low_bits_product(a, w, k).value == ((a * w) % m + m) % m);
  }
}

TEST_CASE("correct_mr restores contaminated lane tops", "[correction]") {
  PackingConfig cfg = preset_fig8_overpack_delta_2();
  Word p = multiply_packed(cfg, {10, 3}, {-7, -4});
  LaneSet naive = extract_naive(p, cfg);
  REQUIRE(naive[0].value == 122);
  LaneSet fixed = correct_mr(naive, cfg, {10, 3}, {-7, -4});
  CHECK(fixed[0].value == -70);  // 122 - 1100 0000b

  Word zero = multiply_packed(cfg, {0, 0}, {0, 0});
  for (const LaneValue& lv : correct_mr(extract_naive(zero, cfg), cfg, {0, 0}, {0, 0}))
    CHECK(lv.value == 0);
}

TEST_CASE("correct_mr leaves the topmost lane alone", "[correction]") {
  PackingConfig cfg = preset_fig8_overpack_delta_2();
  IndexSampler rng{.seed = 8};
  for (uint64_t t = 0; t < 1000; ++t) {
    std::vector<wide_int> a{static_cast<wide_int>(rng.draw(t, 0, 16)),
                            static_cast<wide_int>(rng.draw(t, 1, 16))};
    std::vector<wide_int> w{static_cast<wide_int>(rng.draw(t, 2, 16)) - 8,
                            static_cast<wide_int>(rng.draw(t, 3, 16)) - 8};
    Word p = multiply_packed(cfg, a, w);
    LaneSet naive = extract_naive(p, cfg);
    LaneSet fixed = correct_mr(naive, cfg, a, w);
    CHECK(fixed.back().value == naive.back().value);
    // Lane 0 is fully restored: its contamination is exactly the
    // neighbor's low bits.
    CHECK(fixed[0].value == a[0] * w[0]);
  }
}

TEST_CASE("correct_mr rejects non-overlapping layouts", "[correction]") {
  PackingConfig cfg = preset_int4();
  Word p = multiply_packed(cfg, {0, 0}, {0, 0});
  CHECK_THROWS_AS(correct_mr(extract_naive(p, cfg), cfg, {0, 0}, {0, 0}), SchemeMismatch);
}

TEST_CASE("simulate_packed runs the full pipeline", "[correction]") {
  SimulationResult r = simulate_packed(preset_fig8_overpack_delta_2(), {10, 3}, {-7, -4}, Scheme::mr);
  CHECK(r.p.value == -3310982);
  CHECK(r.naive[0].value == 122);
  CHECK(r.corrected[0].value == -70);

  SimulationResult full = simulate_packed(preset_int4(), {1, 2}, {-1, 0}, Scheme::full);
  CHECK(full.corrected[1].value == -2);
  SimulationResult approx = simulate_packed(preset_int4(), {1, 2}, {-1, 0}, Scheme::approx);
  CHECK(approx.p.value == 4192255);
}

TEST_CASE("scheme names round-trip", "[correction]") {
  for (Scheme s : {Scheme::none, Scheme::full, Scheme::approx, Scheme::mr})
    CHECK(scheme_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(scheme_from_string("bogus"), Error);
}
