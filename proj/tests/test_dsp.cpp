#include "dsppack/dsp.hpp"

#include <vector>

#include "dsppack/rng.hpp"
#include "support.hpp"

using namespace dsppack;

TEST_CASE("eval computes B*(A+D)+C+P_in", "[dsp]") {
  // Inputs of the INT4 packing with a=[10,3], w=[-7,-4].
  DspInputs in{.a = -7, .b = 6154, .c = 0, .d = -4 * (wide_int{1} << 22), .p_in = 0};
  CHECK(eval(in).value == 6154 * (-7 - (wide_int{4} << 22)));
  CHECK(eval({.a = -1, .b = 6154, .d = -4 * (wide_int{1} << 22)}).value == -103246993418);
  CHECK(eval({}).value == 0);
  CHECK(eval({.a = 1, .b = 1, .c = 1, .d = 0, .p_in = 1}).value == 3);
}

TEST_CASE("eval enforces port ranges", "[dsp]") {
  try {
    eval({.b = wide_int{1} << 17});
    FAIL("expected PortOverflow");
  } catch (const PortOverflow& e) {
    CHECK(e.port == 'B');
  }
  CHECK_THROWS_AS(eval({.a = wide_int{1} << 26}), PortOverflow);
  CHECK_THROWS_AS(eval({.c = wide_int{1} << 47}), PortOverflow);
  CHECK_THROWS_AS(eval({.d = -(wide_int{1} << 27)}), PortOverflow);
  CHECK_THROWS_AS(eval({.p_in = wide_int{1} << 47}), PortOverflow);
  // Both summands fit but the preadder sum does not.
  wide_int big = (wide_int{1} << 26) - 1;
  CHECK_THROWS_AS(eval({.a = big, .d = big}), PreadderOverflow);
  CHECK(eval({.a = big, .b = 1, .d = 0}).value == big);
}

TEST_CASE("result wraps at the accumulator width", "[dsp]") {
  wide_int c = (wide_int{1} << 47) - 1;
  CHECK(eval({.a = 1, .b = 1, .c = c}).value == -(wide_int{1} << 47));
}

TEST_CASE("eval is linear in the accumulator inputs", "[dsp]") {
  IndexSampler rng{.seed = 5};
  for (uint64_t t = 0; t < 2000; ++t) {
    DspInputs in;
    in.a = static_cast<wide_int>(rng.draw(t, 0, 1 << 20)) - (1 << 19);
    in.b = static_cast<wide_int>(rng.draw(t, 1, 1 << 18)) - (1 << 17);
    in.c = static_cast<wide_int>(rng.draw(t, 2, 1 << 30)) - (1 << 29);
    in.d = static_cast<wide_int>(rng.draw(t, 3, 1 << 20)) - (1 << 19);
    wide_int delta = static_cast<wide_int>(rng.draw(t, 4, 1 << 16));
    DspInputs shifted = in;
    shifted.c += delta;
    CHECK(eval(shifted).value == wrap_signed_value(eval(in).value + delta, 48));
    shifted = in;
    shifted.p_in += delta;
    CHECK(eval(shifted).value == wrap_signed_value(eval(in).value + delta, 48));
  }
}

TEST_CASE("chain_accumulate folds P into the next stage", "[dsp]") {
  DspInputs x{.a = -7, .b = 6154, .c = 3, .d = 1 << 20};
  CHECK(chain_accumulate({x}).value == eval(x).value);
  CHECK(chain_accumulate({x, DspInputs{}}).value == eval(x).value);  // identity stage

  // n copies of the same inputs (c = 0) equal n times a single eval.
  DspInputs y{.a = 13, .b = -321, .d = -4096};
  std::vector<DspInputs> stages(7, y);
  CHECK(chain_accumulate(stages).value == wrap_signed_value(7 * eval(y).value, 48));
}

TEST_CASE("chain_accumulate rejects preloaded p_in and tags stage errors", "[dsp]") {
  CHECK_THROWS_AS(chain_accumulate({DspInputs{.p_in = 1}}), Error);
  try {
    chain_accumulate({DspInputs{}, DspInputs{.b = wide_int{1} << 17}});
    FAIL("expected stage-tagged error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("stage 1") != std::string::npos);
  }
}
