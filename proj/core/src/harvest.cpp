#include "jdopt/harvest.hpp"

#include <cmath>

#include "jdopt/rootfind.hpp"

namespace jdopt {

namespace {

struct KTriple {
    double K1, K2, K3;
};

KTriple k_constants(const CharRoots& roots, double eta) {
    const double g1 = roots.gamma1, g2 = roots.gamma2, g3 = roots.gamma3;
    KTriple k;
    k.K1 = g2 * g3 * (eta - g1) / (eta * g1 * (g2 - g1) * (g1 + g3));
    k.K2 = g3 * g1 * (g2 - eta) / (eta * g2 * (g2 + g3) * (g2 - g1));
    k.K3 = g1 * g2 * (eta + g3) / (eta * g3 * (g1 + g3) * (g2 + g3));
    return k;
}

} // namespace

HarvestCoeffs coeff_B(double b, const CharRoots& roots, double eta) {
    const KTriple k = k_constants(roots, eta);
    HarvestCoeffs c;
    c.K1 = k.K1;
    c.K2 = k.K2;
    c.K3 = k.K3;
    c.B1 = k.K1 * std::exp(-roots.gamma1 * b);
    c.B2 = k.K2 * std::exp(-roots.gamma2 * b);
    c.B3 = -k.K3 * std::exp(roots.gamma3 * b);
    return c;
}

double boundary_residual_Q(double b, const CharRoots& roots, double eta) {
    const KTriple k = k_constants(roots, eta);
    return k.K1 * std::exp(-roots.gamma1 * b) + k.K2 * std::exp(-roots.gamma2 * b) -
           k.K3 * std::exp(roots.gamma3 * b);
}

double HarvestSolution::v0(double x) const {
    const double d = x - b;
    return K1 * std::exp(roots.gamma1 * d) + K2 * std::exp(roots.gamma2 * d) -
           K3 * std::exp(-roots.gamma3 * d);
}

double HarvestSolution::v0_d1(double x) const {
    const double d = x - b;
    return roots.gamma1 * K1 * std::exp(roots.gamma1 * d) +
           roots.gamma2 * K2 * std::exp(roots.gamma2 * d) +
           roots.gamma3 * K3 * std::exp(-roots.gamma3 * d);
}

double HarvestSolution::v0_d2(double x) const {
    const double d = x - b;
    const double g1 = roots.gamma1, g2 = roots.gamma2, g3 = roots.gamma3;
    return g1 * g1 * K1 * std::exp(g1 * d) + g2 * g2 * K2 * std::exp(g2 * d) -
           g3 * g3 * K3 * std::exp(-g3 * d);
}

double HarvestSolution::v0_d3(double x) const {
    const double d = x - b;
    const double g1 = roots.gamma1, g2 = roots.gamma2, g3 = roots.gamma3;
    return g1 * g1 * g1 * K1 * std::exp(g1 * d) + g2 * g2 * g2 * K2 * std::exp(g2 * d) +
           g3 * g3 * g3 * K3 * std::exp(-g3 * d);
}

double HarvestSolution::value(double x) const {
    if (x < 0.0) throw DomainError("HarvestSolution::value: x must be >= 0");
    if (x < b) return v0(x);
    return x - b + v0(b);
}

std::pair<double, double> HarvestSolution::derivatives(double x) const {
    if (x < 0.0) throw DomainError("HarvestSolution::derivatives: x must be >= 0");
    if (x < b) return {v0_d1(x), v0_d2(x)};
    return {1.0, 0.0};
}

HarvestSolution solve_harvest_threshold(const ModelParams& model) {
    if (!(model.trend() > 0.0))
        throw TrendNotPositive("solve_harvest_threshold: requires mu + lambda/eta > 0");

    const CharRoots roots = solve_roots(model);
    const auto q = [&](double b) { return boundary_residual_Q(b, roots, model.eta); };

    // Q(0) > 0 and Q decreasing to -inf: one sign change, found by doubling.
    const double hi = expand_until_sign_change(q, 0.0, 1.0);
    const double b = bisect(q, 0.0, hi, 1e-12);

    const HarvestCoeffs c = coeff_B(b, roots, model.eta);
    return HarvestSolution{model, b, c.B1, c.B2, c.B3, c.K1, c.K2, c.K3, roots};
}

std::vector<ValueRecord> tabulate_harvest(const HarvestSolution& sol,
                                          const std::vector<double>& x_grid) {
    std::vector<ValueRecord> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) {
        const auto [v1, v2] = sol.derivatives(x);
        out.push_back({x, sol.value(x), v1, v2});
    }
    return out;
}

} // namespace jdopt
