#include <cmath>

#include "doctest.h"
#include "jdopt/harvest.hpp"

using namespace jdopt;

namespace {
const ModelParams kBase(-0.05, 0.25, 0.75, 1.5, 0.1);
} // namespace

TEST_CASE("coeff_B signs and monotonicity in b") {
    const CharRoots roots = solve_roots(kBase);
    for (double b : {0.2, 1.0, 1.276, 3.0, 8.0}) {
        const HarvestCoeffs c = coeff_B(b, roots, kBase.eta);
        CHECK(c.B1 > 0.0);
        CHECK(c.B2 > 0.0);
        CHECK(c.B3 < 0.0);
        CHECK(c.K1 > 0.0);
        CHECK(c.K2 > 0.0);
        CHECK(c.K3 > 0.0);
    }
    const HarvestCoeffs lo = coeff_B(1.0, roots, kBase.eta);
    const HarvestCoeffs hi = coeff_B(2.0, roots, kBase.eta);
    CHECK(hi.B1 < lo.B1);
    CHECK(hi.B3 < lo.B3);
}

TEST_CASE("boundary residual Q: positive at zero, decreasing, negative tail") {
    const CharRoots roots = solve_roots(kBase);
    CHECK(boundary_residual_Q(0.0, roots, kBase.eta) > 0.0);
    double prev = boundary_residual_Q(0.0, roots, kBase.eta);
    for (double b = 0.5; b <= 6.0; b += 0.5) {
        const double cur = boundary_residual_Q(b, roots, kBase.eta);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(boundary_residual_Q(20.0, roots, kBase.eta) < 0.0);
}

TEST_CASE("solve_harvest_threshold: reference barrier") {
    const HarvestSolution sol = solve_harvest_threshold(kBase);
    CHECK(sol.b == doctest::Approx(1.276).epsilon(1e-2 / 1.276));
    CHECK(sol.b == doctest::Approx(1.2762444184818378).epsilon(1e-11));
    CHECK(std::fabs(boundary_residual_Q(sol.b, sol.roots, kBase.eta)) < 1e-10);
}

TEST_CASE("solve_harvest_threshold: requires positive trend") {
    // mu + lambda/eta = -0.5 + 0.5 = 0: exactly on the boundary, rejected.
    const ModelParams flat(-0.5, 0.25, 0.75, 1.5, 0.1);
    CHECK_THROWS_AS(solve_harvest_threshold(flat), TrendNotPositive);
    const ModelParams negative(-0.6, 0.25, 0.75, 1.5, 0.1);
    CHECK_THROWS_AS(solve_harvest_threshold(negative), TrendNotPositive);
}

TEST_CASE("harvest value function: boundary behavior") {
    const HarvestSolution sol = solve_harvest_threshold(kBase);
    CHECK(std::fabs(sol.value(0.0)) < 1e-10);
    // Smooth fit of first and second order at b.
    CHECK(sol.v0_d1(sol.b) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.v0_d2(sol.b) == doctest::Approx(0.0).epsilon(1e-10));
    // Unit-slope linear piece beyond b.
    CHECK(sol.value(sol.b + 1.0) == doctest::Approx(sol.value(sol.b) + 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(sol.value(-0.1), DomainError);
}

TEST_CASE("harvest value function: slope > 1 and concavity on [0, b)") {
    const HarvestSolution sol = solve_harvest_threshold(kBase);
    for (int i = 0; i < 100; ++i) {
        const double x = sol.b * i / 100.0;
        CHECK(sol.v0_d1(x) > 1.0);
        CHECK(sol.v0_d2(x) < 0.0);
    }
}

TEST_CASE("tabulate_harvest matches pointwise evaluation") {
    const HarvestSolution sol = solve_harvest_threshold(kBase);
    const std::vector<double> grid{0.0, 0.4, sol.b, sol.b + 3.0};
    const auto rows = tabulate_harvest(sol, grid);
    REQUIRE(rows.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(rows[i].x == grid[i]);
        CHECK(rows[i].v == doctest::Approx(sol.value(grid[i])).epsilon(1e-14));
    }
}
