// Tail-function core: construction, evaluation with continuity sides,
// validation, reflection, generalized inverses, two-sided combination.

#include <catch2/catch_amalgamated.hpp>

#include "tailbounds/tail_fn.hpp"

namespace tb = tailbounds;

namespace {
constexpr double kE1 = 0.36787944117144233;  // e^-1
constexpr double kE2 = 0.1353352832366127;   // e^-2
constexpr double kLn2 = 0.69314718055994529;
}  // namespace

TEST_CASE("exponential evaluation and domain extension") {
    const auto right = tb::TailFn::exponential(tb::TailKind::Right, 1.0);
    CHECK(right(2.0) == Catch::Approx(kE2).margin(1e-15));
    CHECK(right(0.0) == 1.0);
    CHECK(right(-3.0) == 1.0);

    const auto abs = tb::TailFn::exponential(tb::TailKind::Absolute, 2.0);
    CHECK(abs(1.0) == Catch::Approx(kE2).margin(1e-15));
    CHECK(abs(-0.5) == 1.0);  // absolute tails are 1 left of zero

    const auto left = tb::TailFn::exponential(tb::TailKind::Left, 1.0);
    CHECK(left(-2.0) == Catch::Approx(kE2).margin(1e-15));
    CHECK(left(0.0) == 1.0);
    CHECK(left(1.0) == 1.0);
}

TEST_CASE("gaussian evaluation matches the complementary error function") {
    const auto g = tb::TailFn::gaussian(tb::TailKind::Right, 0.0, 1.0);
    CHECK(g(0.0) == Catch::Approx(0.5).margin(1e-15));
    CHECK(g(1.96) == Catch::Approx(0.024997895148220435).margin(1e-12));
    const auto shifted = tb::TailFn::gaussian(tb::TailKind::Right, 3.0, 2.0);
    CHECK(shifted(3.0) == Catch::Approx(0.5).margin(1e-15));
    CHECK(shifted(3.0 + 2.0 * 1.96) ==
          Catch::Approx(0.024997895148220435).margin(1e-12));
}

TEST_CASE("step evaluation honors the continuity side") {
    const auto f =
        tb::TailFn::step(tb::TailKind::Right, {1.0, 2.0}, {1.0, 0.4, 0.0});
    // Left continuous: the value at a break is the value from the left.
    CHECK(f(1.0) == 1.0);
    CHECK(f(1.5) == 0.4);
    CHECK(f(2.0) == 0.4);
    CHECK(f(2.5) == 0.0);

    const auto l =
        tb::TailFn::step(tb::TailKind::Left, {-2.0, -1.0}, {0.0, 0.4, 1.0});
    // Right continuous: the value at a break is the value from the right.
    CHECK(l(-2.0) == 0.4);
    CHECK(l(-1.0) == 1.0);
    CHECK(l(-2.5) == 0.0);
}

TEST_CASE("piecewise linear interpolates between knots") {
    const auto f = tb::TailFn::piecewise_linear(
        tb::TailKind::Right, {{0.0, 1.0}, {2.0, 0.5}, {4.0, 0.0}});
    CHECK(f(-1.0) == 1.0);
    CHECK(f(1.0) == Catch::Approx(0.75).margin(1e-15));
    CHECK(f(3.0) == Catch::Approx(0.25).margin(1e-15));
    CHECK(f(5.0) == 0.0);
}

TEST_CASE("sum-min combination caps at one and closes steps exactly") {
    const auto minus = tb::TailFn::exponential(tb::TailKind::Left, 1.0);
    const auto plus = tb::TailFn::exponential(tb::TailKind::Right, 1.0);
    const auto h = tb::TailFn::sum_min(minus, plus);
    CHECK(h(0.0) == 1.0);
    CHECK(h(-1.0) == 1.0);
    // h(t) = min(1, plus(t) + minus(-t)) = 2 e^-2 at t = 2.
    CHECK(h(2.0) == Catch::Approx(2.0 * kE2).margin(1e-15));

    const tb::TwoTail tt{tb::TailFn::step(tb::TailKind::Left, {-1.0}, {0.0, 1.0}),
                         tb::TailFn::step(tb::TailKind::Right, {2.0}, {1.0, 0.0})};
    const auto merged = tb::two_to_absolute(tt);
    REQUIRE(merged.family() == tb::TailFamily::Step);  // exact closure
    CHECK(merged(0.0) == 1.0);
    CHECK(merged(1.5) == 1.0);   // step bounds only constrain past their breaks
    CHECK(merged(2.5) == 0.0);
    CHECK(tb::validate(merged).empty());
}

TEST_CASE("validation flags malformed tails") {
    CHECK(tb::validate(tb::TailFn::exponential(tb::TailKind::Right, 1.0)).empty());
    CHECK_FALSE(
        tb::validate(tb::TailFn::exponential(tb::TailKind::Right, 0.0)).empty());
    CHECK_FALSE(
        tb::validate(tb::TailFn::gaussian(tb::TailKind::Right, 0.0, -1.0)).empty());
    // A Gaussian reversed CDF never attains 1, so it cannot be absolute.
    CHECK_FALSE(
        tb::validate(tb::TailFn::gaussian(tb::TailKind::Absolute, 0.0, 1.0)).empty());
    // Wrong monotonicity direction.
    CHECK_FALSE(tb::validate(tb::TailFn::step(tb::TailKind::Right, {1.0, 2.0},
                                              {1.0, 0.2, 0.4}))
                    .empty());
    // Missing limit at infinity.
    CHECK_FALSE(tb::validate(tb::TailFn::step(tb::TailKind::Right, {1.0},
                                              {1.0, 0.5}))
                    .empty());
    CHECK_THROWS_AS(
        tb::require_valid(tb::TailFn::exponential(tb::TailKind::Right, -1.0),
                          "test"),
        std::invalid_argument);
}

TEST_CASE("reflection swaps one-sided kinds and is an involution") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Right, 2.0);
    const auto r = tb::reflect(f);
    CHECK(r.kind() == tb::TailKind::Left);
    CHECK(r(-1.0) == Catch::Approx(f(1.0)).margin(1e-15));
    const auto rr = tb::reflect(r);
    CHECK(rr.kind() == tb::TailKind::Right);
    CHECK(rr(1.0) == Catch::Approx(f(1.0)).margin(1e-15));

    const auto s = tb::TailFn::step(tb::TailKind::Right, {1.0, 3.0},
                                    {1.0, 0.5, 0.0});
    const auto sr = tb::reflect(s);
    CHECK(sr(-0.5) == s(0.5));
    CHECK(sr(-2.0) == s(2.0));
}

TEST_CASE("generalized right inverse solves the exponential exactly") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Right, 1.0);
    // sup{t : f(t) >= 1 - s}: f(t) = e^-t, so t = -log(1-s).
    CHECK(tb::gen_inverse_right(f, 0.5) == Catch::Approx(kLn2).margin(1e-12));
    CHECK(tb::gen_inverse_right(f, 1.0 - kE2) == Catch::Approx(2.0).margin(1e-12));

    const auto g = tb::TailFn::gaussian(tb::TailKind::Right, 0.0, 1.0);
    CHECK(tb::gen_inverse_right(g, 0.5) == Catch::Approx(0.0).margin(1e-9));
    CHECK(tb::gen_inverse_right(g, 1.0 - 0.024997895148220435) ==
          Catch::Approx(1.96).margin(1e-7));

    const auto s =
        tb::TailFn::step(tb::TailKind::Right, {1.0, 2.0}, {1.0, 0.4, 0.0});
    // Mass 0.6 sits at 1, mass 0.4 at 2 for the largest compatible r.v.
    CHECK(tb::gen_inverse_right(s, 0.3) == Catch::Approx(1.0).margin(1e-12));
    CHECK(tb::gen_inverse_right(s, 0.7) == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("two-sided split and recombination round trip") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Absolute, 1.0);
    const tb::TwoTail tt = tb::absolute_to_two(f);
    CHECK(tb::validate(tt).empty());
    CHECK(tt.plus(1.0) == Catch::Approx(kE1).margin(1e-15));
    CHECK(tt.minus(-1.0) == Catch::Approx(kE1).margin(1e-15));
    const auto back = tb::two_to_absolute(tt);
    // Recombination is the pointwise min(1, plus + reflected minus).
    CHECK(back(1.0) == Catch::Approx(std::min(1.0, 2.0 * kE1)).margin(1e-12));
    CHECK(back(0.0) == 1.0);
}
