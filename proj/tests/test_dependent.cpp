// Dependence-allowed suprema: LP formulation, reductions, 2-D closed form.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tailbounds/dependent.hpp"
#include "tailbounds/simplex.hpp"

namespace tb = tailbounds;

namespace {
constexpr double kE1 = 0.36787944117144233;
constexpr double kE2 = 0.1353352832366127;
}  // namespace

TEST_CASE("simplex maximizer solves small LPs exactly") {
    // max x1 + x2 s.t. x1 <= 2, x2 <= 3, x1 + x2 <= 4.
    const auto r = tb::simplex_maximize({{1, 0}, {0, 1}, {1, 1}}, {2, 3, 4},
                                        {1, 1});
    CHECK(r.value == Catch::Approx(4.0).margin(1e-12));
    // Unbounded problems are rejected.
    CHECK_THROWS(tb::simplex_maximize({{-1.0}}, {1.0}, {1.0}));
}

TEST_CASE("componentwise absolute value and southwest boundary") {
    const auto v = tb::PointSet::of({{-1.0, 2.0}, {2.0, -1.0}, {3.0, 3.0}});
    const auto q = tb::q_map(v);
    for (const auto& p : q.points) {
        for (double x : p) CHECK(x >= 0.0);
    }
    const auto b = tb::sw_boundary(q);
    // (3,3) dominates both antichain points and drops out.
    CHECK(b.points.size() == 2);
    CHECK_THROWS_AS(tb::sw_boundary(tb::PointSet::of({{-1.0, 1.0}})),
                    std::invalid_argument);
    const auto reduced = tb::sw_reduce(v);
    CHECK(reduced.points.size() == 2);
}

TEST_CASE("dependent LP on the two-point antichain") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Absolute, 1.0);
    const auto v = tb::PointSet::of({{1.0, 2.0}, {2.0, 1.0}});
    const auto r = tb::solve_dep_lp({f, f}, v);
    // Each point is blocked only by its larger coordinate: e^-2 + e^-2.
    CHECK(r.value == Catch::Approx(2.0 * kE2).margin(1e-12));
    REQUIRE(r.masses.size() == 2);
    CHECK(r.masses[0] == Catch::Approx(kE2).margin(1e-12));
    CHECK(r.masses[1] == Catch::Approx(kE2).margin(1e-12));
}

TEST_CASE("two-dimensional closed form agrees with the LP") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Absolute, 1.0);
    const auto v = tb::PointSet::of({{1.0, 2.0}, {2.0, 1.0}});
    CHECK(tb::solve_dep_2d(f, f, v) == Catch::Approx(2.0 * kE2).margin(1e-12));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.2, 3.0);
    std::uniform_int_distribution<int> npts(3, 8);
    std::bernoulli_distribution flip(0.5);
    for (int trial = 0; trial < 60; ++trial) {
        const auto f1 = tb::TailFn::exponential(tb::TailKind::Absolute, unif(rng));
        const auto f2 = tb::TailFn::exponential(tb::TailKind::Absolute, unif(rng));
        std::vector<tb::Point> pts;
        const int n = npts(rng);
        for (int i = 0; i < n; ++i) {
            pts.push_back({flip(rng) ? unif(rng) : -unif(rng),
                           flip(rng) ? unif(rng) : -unif(rng)});
        }
        const auto w = tb::PointSet::of(pts);
        CHECK(tb::solve_dep_2d(f1, f2, w) ==
              Catch::Approx(tb::solve_dep_lp({f1, f2}, w).value).margin(1e-9));
    }
}

TEST_CASE("dependent value is invariant under the reductions") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.2, 3.0);
    std::bernoulli_distribution flip(0.5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f1 = tb::TailFn::exponential(tb::TailKind::Absolute, unif(rng));
        const auto f2 = tb::TailFn::exponential(tb::TailKind::Absolute, unif(rng));
        std::vector<tb::Point> pts;
        for (int i = 0; i < 5; ++i) {
            pts.push_back({flip(rng) ? unif(rng) : -unif(rng),
                           flip(rng) ? unif(rng) : -unif(rng)});
        }
        const auto v = tb::PointSet::of(pts);
        const double raw = tb::solve_dep_lp({f1, f2}, v).value;
        CHECK(tb::solve_dep_lp({f1, f2}, tb::q_map(v)).value ==
              Catch::Approx(raw).margin(1e-9));
        CHECK(tb::solve_dep_lp({f1, f2}, tb::sw_reduce(v)).value ==
              Catch::Approx(raw).margin(1e-9));
    }
}

TEST_CASE("dependent supremum caps at total mass one") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Absolute, 0.1);
    std::vector<tb::Point> pts;
    for (int i = 1; i <= 6; ++i) pts.push_back({0.1 * i, 0.7 - 0.1 * i});
    const auto r = tb::solve_dep_lp({f, f}, tb::PointSet::of(pts));
    CHECK(r.value <= 1.0 + 1e-12);
}

TEST_CASE("2-D closed form rejects unsupported inputs") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Absolute, 1.0);
    const auto s =
        tb::TailFn::step(tb::TailKind::Absolute, {1.0}, {1.0, 0.0});
    const auto v = tb::PointSet::of({{1.0, 2.0}, {2.0, 1.0}});
    // The closed form needs a continuous first tail.
    CHECK_THROWS_AS(tb::solve_dep_2d(s, f, v), std::invalid_argument);
    CHECK_THROWS_AS(tb::solve_dep_2d(f, f, tb::PointSet::of({{1.0}})),
                    std::invalid_argument);
}
