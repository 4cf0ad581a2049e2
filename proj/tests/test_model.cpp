#include <cmath>
#include <random>

#include "doctest.h"
#include "jdopt/model.hpp"
#include "jdopt/rootfind.hpp"

using namespace jdopt;

namespace {
const ModelParams kBase(-0.05, 0.25, 0.75, 1.5, 0.1);

// Independent oracle for gamma1: plain bisection of G - alpha on (0, eta)
// written against the defining formula, not solve_roots.
double gamma1_oracle(const ModelParams& m) {
    const auto g = [&](double x) {
        return 0.5 * m.sigma * m.sigma * x * x + m.mu * x +
               m.lambda * m.eta / (m.eta - x) - m.lambda - m.alpha;
    };
    double lo = 1e-12, hi = m.eta - 1e-12;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ModelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mu(-0.5, 0.5);
    std::uniform_real_distribution<double> sigma(0.05, 1.0);
    std::uniform_real_distribution<double> lambda(0.1, 2.0);
    std::uniform_real_distribution<double> eta(0.5, 4.0);
    std::uniform_real_distribution<double> alpha(0.02, 0.5);
    return ModelParams(mu(rng), sigma(rng), lambda(rng), eta(rng), alpha(rng));
}
} // namespace

TEST_CASE("characteristic exponent: G(0) = 0 for any valid params") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i)
        CHECK(characteristic_value(random_params(rng), 0.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("characteristic exponent: direct substitution at gamma = 1") {
    // 1/2 * 0.0625 * 1 - 0.05 * 1 + 0.75 * 1.5 / 0.5 - 0.75 = 1.48125
    CHECK(characteristic_value(kBase, 1.0) == doctest::Approx(1.48125).epsilon(1e-14));
}

TEST_CASE("characteristic exponent: pole guard at eta") {
    CHECK_THROWS_AS(characteristic_value(kBase, kBase.eta), PoleAtEta);
}

TEST_CASE("characteristic derivative matches finite differences") {
    const double h = 1e-6;
    for (double g : {-2.0, -0.3, 0.7, 1.2, 2.0, 5.0}) {
        const double fd = (characteristic_value(kBase, g + h) -
                           characteristic_value(kBase, g - h)) / (2.0 * h);
        CHECK(characteristic_derivative(kBase, g) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("solve_roots: base params reproduce the reference triple") {
    const CharRoots roots = solve_roots(kBase);
    // References frozen from an independent bisection of G - alpha.
    CHECK(roots.gamma1 == doctest::Approx(0.1893408466457381).epsilon(1e-11));
    CHECK(roots.gamma2 == doctest::Approx(6.696425916675519).epsilon(1e-11));
    CHECK(roots.gamma3 == doctest::Approx(3.785766763321257).epsilon(1e-11));
    CHECK(roots.gamma1 == doctest::Approx(gamma1_oracle(kBase)).epsilon(1e-11));
}

TEST_CASE("solve_roots: ordering 0 < gamma1 < eta < gamma2, gamma3 > 0 for random params") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const ModelParams m = random_params(rng);
        const CharRoots roots = solve_roots(m);
        CHECK(roots.gamma1 > 0.0);
        CHECK(roots.gamma1 < m.eta);
        CHECK(roots.gamma2 > m.eta);
        CHECK(roots.gamma3 > 0.0);
        // Each root satisfies the defining equation.
        CHECK(characteristic_value(m, roots.gamma1) == doctest::Approx(m.alpha).epsilon(1e-10));
        CHECK(characteristic_value(m, roots.gamma2) == doctest::Approx(m.alpha).epsilon(1e-10));
        CHECK(characteristic_value(m, -roots.gamma3) == doctest::Approx(m.alpha).epsilon(1e-10));
    }
}

TEST_CASE("solve_roots: roots move continuously under tiny parameter shifts") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 50; ++i) {
        const ModelParams m = random_params(rng);
        const ModelParams m2(m.mu + 1e-8, m.sigma, m.lambda, m.eta, m.alpha);
        const CharRoots a = solve_roots(m);
        const CharRoots b = solve_roots(m2);
        CHECK(std::fabs(a.gamma1 - b.gamma1) < 1e-5);
        CHECK(std::fabs(a.gamma2 - b.gamma2) < 1e-5);
        CHECK(std::fabs(a.gamma3 - b.gamma3) < 1e-5);
    }
}

TEST_CASE("ModelParams validation") {
    CHECK_THROWS_AS(ModelParams(0.0, -0.1, 0.75, 1.5, 0.1), ValidationError);
    CHECK_THROWS_AS(ModelParams(0.0, 0.25, -0.75, 1.5, 0.1), ValidationError);
    CHECK_THROWS_AS(ModelParams(0.0, 0.25, 0.75, 0.0, 0.1), ValidationError);
    CHECK_THROWS_AS(ModelParams(0.0, 0.25, 0.75, 1.5, 0.0), ValidationError);
    CHECK_THROWS_AS(ModelParams(NAN, 0.25, 0.75, 1.5, 0.1), ValidationError);
}

TEST_CASE("trend and b_star arithmetic") {
    CHECK(kBase.trend() == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(kBase.b_star() == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("bisect finds roots and rejects bad brackets") {
    const auto f = [](double x) { return x * x - 2.0; };
    CHECK(bisect(f, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
    CHECK_THROWS_AS(bisect(f, 2.0, 3.0), BracketFailure);

    const auto df = [](double x) { return 2.0 * x; };
    CHECK(bisect(f, 0.0, 2.0, 1e-12, df) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("expand_until_sign_change expands and gives up") {
    const auto f = [](double x) { return 100.0 - x; };
    const double hi = expand_until_sign_change(f, 0.0, 1.0);
    CHECK(f(hi) < 0.0);
    const auto g = [](double) { return 1.0; };
    CHECK_THROWS_AS(expand_until_sign_change(g, 0.0, 1.0, 10), BracketFailure);
}
