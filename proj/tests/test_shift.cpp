// Shift operators: pushing tail-bounded mass outward onto finite grids.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tailbounds/shift.hpp"

namespace tb = tailbounds;

namespace {
constexpr double kE1 = 0.36787944117144233;
constexpr double kE2 = 0.1353352832366127;

double total_mass(const std::vector<tb::Atom>& atoms) {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    return s;
}
}  // namespace

TEST_CASE("right shift places successive tail differences on the grid") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Right, 1.0);
    const tb::CoordSet g{0.0, 1.0, 2.0};
    const tb::ShiftedAtoms r = tb::shift_right_atoms(f, g);
    REQUIRE(r.atoms.size() == 3);
    CHECK(r.atoms[0].value == 0.0);
    CHECK(r.atoms[0].mass == Catch::Approx(1.0 - kE1).margin(1e-15));
    CHECK(r.atoms[1].mass == Catch::Approx(kE1 - kE2).margin(1e-15));
    CHECK(r.atoms[2].mass == Catch::Approx(kE2).margin(1e-15));
    CHECK(r.residual_mass == Catch::Approx(0.0).margin(1e-15));
    CHECK(total_mass(r.atoms) + r.residual_mass == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("right shift below the grid leaves residual mass") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Right, 1.0);
    const tb::CoordSet g{1.0, 2.0};
    const tb::ShiftedAtoms r = tb::shift_right_atoms(f, g);
    CHECK(r.residual_mass == Catch::Approx(1.0 - kE1).margin(1e-15));
    CHECK(r.residual_value <= 1.0);  // parked at or below the grid infimum
    CHECK(total_mass(r.atoms) == Catch::Approx(kE1).margin(1e-15));
}

TEST_CASE("right shift reversed CDF saturates the tail on and below the grid") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Right, 1.0);
    const tb::CoordSet g{0.0, 1.0, 2.0};
    // At or below inf G the original tail is reproduced; between grid points
    // the mass of the next point upward governs.
    CHECK(tb::shift_right_rcdf(f, g, -1.0) == Catch::Approx(f(-1.0)).margin(1e-15));
    CHECK(tb::shift_right_rcdf(f, g, 0.0) == Catch::Approx(1.0).margin(1e-15));
    CHECK(tb::shift_right_rcdf(f, g, 1.0) == Catch::Approx(kE1).margin(1e-15));
    CHECK(tb::shift_right_rcdf(f, g, 1.5) == Catch::Approx(kE2).margin(1e-15));
    CHECK(tb::shift_right_rcdf(f, g, 2.0) == Catch::Approx(kE2).margin(1e-15));
    CHECK(tb::shift_right_rcdf(f, g, 2.5) == 0.0);
}

TEST_CASE("left shift mirrors the right shift") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Left, 1.0);
    const tb::CoordSet g{-2.0, -1.0, 0.0};
    const tb::ShiftedAtoms r = tb::shift_left_atoms(f, g);
    REQUIRE(r.atoms.size() == 3);
    CHECK(r.atoms[0].value == -2.0);
    CHECK(r.atoms[0].mass == Catch::Approx(kE2).margin(1e-15));
    CHECK(r.atoms[1].mass == Catch::Approx(kE1 - kE2).margin(1e-15));
    CHECK(r.atoms[2].mass == Catch::Approx(1.0 - kE1).margin(1e-15));
    CHECK(tb::shift_left_cdf(f, g, -1.0) == Catch::Approx(kE1).margin(1e-15));
}

TEST_CASE("two-sided shift with an interior split point") {
    const tb::TwoTail tt{tb::TailFn::exponential(tb::TailKind::Left, 1.0),
                         tb::TailFn::exponential(tb::TailKind::Right, 1.0)};
    const tb::CoordSet g{-1.0, 0.0, 2.0};
    const auto atoms = tb::shift_two_atoms(tt, g, 0.3);
    REQUIRE(atoms.size() == 3);
    CHECK(atoms[0].value == -1.0);
    CHECK(atoms[0].mass == Catch::Approx(0.3).margin(1e-15));  // capped by c
    CHECK(atoms[1].value == 0.0);
    CHECK(atoms[1].mass == Catch::Approx(0.7 - kE2).margin(1e-15));
    CHECK(atoms[2].value == 2.0);
    CHECK(atoms[2].mass == Catch::Approx(kE2).margin(1e-15));
    CHECK(total_mass(atoms) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("two-sided shift at the extreme split points") {
    const tb::TwoTail tt{tb::TailFn::exponential(tb::TailKind::Left, 1.0),
                         tb::TailFn::exponential(tb::TailKind::Right, 1.0)};
    const tb::CoordSet g{-1.0, 0.0, 1.0};
    // c = 0: nothing goes left of zero, the right side saturates its tail.
    const auto right_only = tb::shift_two_atoms(tt, g, 0.0);
    double left_mass = 0.0;
    for (const auto& a : right_only) {
        if (a.value < 0.0) left_mass += a.mass;
    }
    CHECK(left_mass == Catch::Approx(0.0).margin(1e-15));
    CHECK(total_mass(right_only) == Catch::Approx(1.0).margin(1e-15));
    // c = 1: the left side saturates instead.
    const auto left_heavy = tb::shift_two_atoms(tt, g, 1.0);
    double m_minus1 = 0.0;
    for (const auto& a : left_heavy) {
        if (a.value == -1.0) m_minus1 = a.mass;
    }
    CHECK(m_minus1 == Catch::Approx(kE1).margin(1e-15));
}

TEST_CASE("absolute shift assigns magnitudes and prefers positive signs") {
    const auto f = tb::TailFn::exponential(tb::TailKind::Absolute, 1.0);
    const tb::CoordSet g{-1.0, 0.0, 2.0};
    const tb::RadialRV rv = tb::shift_abs_atoms(f, g);
    // Magnitude 1 appears only as -1 in g, magnitude 2 only as +2.
    CHECK(rv.mass_at(-1.0) == Catch::Approx(kE1 - kE2).margin(1e-15));
    CHECK(rv.mass_at(2.0) == Catch::Approx(kE2).margin(1e-15));
    CHECK(rv.mass_at(0.0) == Catch::Approx(1.0 - kE1).margin(1e-15));
    CHECK(rv.rcdf_abs(1.0) == Catch::Approx(kE1).margin(1e-15));
    CHECK(tb::shift_abs_rcdf(f, g, 1.5) == Catch::Approx(kE2).margin(1e-15));

    const tb::CoordSet both{-1.0, 0.0, 1.0};
    const tb::RadialRV tie = tb::shift_abs_atoms(f, both);
    CHECK(tie.mass_at(1.0) == Catch::Approx(kE1).margin(1e-15));  // + preferred
    CHECK(tie.mass_at(-1.0) == 0.0);
}

TEST_CASE("grid coordinate sets are validated") {
    CHECK_THROWS_AS(tb::require_coord_set({2.0, 1.0}, "test", false),
                    std::invalid_argument);
    CHECK_THROWS_AS(tb::require_coord_set({1.0, 2.0}, "test", true),
                    std::invalid_argument);  // missing required zero
    CHECK_NOTHROW(tb::require_coord_set({0.0, 1.0, 2.0}, "test", true));
}

TEST_CASE("shifted distributions saturate their tails at every grid point") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.1, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = tb::TailFn::exponential(tb::TailKind::Right, unif(rng));
        tb::CoordSet g;
        double x = 0.0;
        const int npts = 1 + static_cast<int>(unif(rng));
        for (int i = 0; i < npts; ++i) {
            x += unif(rng);
            g.push_back(x);
        }
        for (double gi : g) {
            CHECK(tb::shift_right_rcdf(f, g, gi) ==
                  Catch::Approx(f(gi)).margin(1e-12));
        }
    }
}
