#include "jdopt/ipo.hpp"

#include <algorithm>
#include <cmath>

#include "jdopt/rootfind.hpp"

namespace jdopt {

IpoParams::IpoParams(ModelParams model_, double r_, double a_, double budget_)
    : model(model_), r(r_), a(a_), budget(budget_) {
    if (!(r > 1.0)) throw ValidationError("IpoParams: r must be > 1");
    if (!(a >= 0.0)) throw ValidationError("IpoParams: a must be >= 0");
    if (!(budget >= 0.0)) throw ValidationError("IpoParams: budget must be >= 0");
}

IpoCoeffs coeff_A(double b, const CharRoots& roots, const ModelParams& model, double r) {
    const double g1 = roots.gamma1, g2 = roots.gamma2, g3 = roots.gamma3;
    const double eta = model.eta;
    const double s = r / (eta * eta);
    const double ebp1 = eta * b + 1.0;

    IpoCoeffs c;
    c.D1 = s * (eta - g1) * (g2 * g3 * ebp1 + eta * (g2 - g3)) /
           ((g3 + g1) * (g2 - g1));
    c.D2 = s * (g2 - eta) * (g1 * g3 * ebp1 + eta * (g1 - g3)) /
           ((g3 + g2) * (g2 - g1));
    c.D3 = s * (eta + g3) * (g1 * g2 * ebp1 - eta * (g1 + g2)) /
           ((g3 + g1) * (g2 + g3));
    c.A1 = c.D1 * std::exp(-g1 * b);
    c.A2 = c.D2 * std::exp(-g2 * b);
    c.A3 = c.D3 * std::exp(g3 * b);
    return c;
}

double boundary_residual_R(double b, double a, const CharRoots& roots,
                           const ModelParams& model, double r) {
    const IpoCoeffs c = coeff_A(b, roots, model, r);
    const double d = b - a;
    return roots.gamma1 * c.D1 * std::exp(-roots.gamma1 * d) +
           roots.gamma2 * c.D2 * std::exp(-roots.gamma2 * d) -
           roots.gamma3 * c.D3 * std::exp(roots.gamma3 * d);
}

double boundary_residual_R_prime(double b, double a, const CharRoots& roots,
                                 const ModelParams& model, double r) {
    const double g1 = roots.gamma1, g2 = roots.gamma2, g3 = roots.gamma3;
    const double eta = model.eta;
    const double s = r / (eta * eta);
    const double c1 = s * (eta - g1) / ((g3 + g1) * (g2 - g1));
    const double c2 = s * (g2 - eta) / ((g3 + g2) * (g2 - g1));
    const double c3 = s * (eta + g3) / ((g3 + g1) * (g3 + g2));
    const double d = b - a;
    const double y = -g1 * g2 * g3 + eta * (-g1 * g2 + g2 * g3 + g1 * g3);
    return (g1 * c1 * std::exp(-g1 * d) + g2 * c2 * std::exp(-g2 * d) +
            g3 * c3 * std::exp(g3 * d)) *
           (-eta * g1 * g2 * g3 * b + y);
}

double IpoSolution::v0(double x) const {
    const double d = x - b;
    return D1 * std::exp(roots.gamma1 * d) + D2 * std::exp(roots.gamma2 * d) +
           D3 * std::exp(-roots.gamma3 * d);
}

double IpoSolution::v0_d1(double x) const {
    const double d = x - b;
    return roots.gamma1 * D1 * std::exp(roots.gamma1 * d) +
           roots.gamma2 * D2 * std::exp(roots.gamma2 * d) -
           roots.gamma3 * D3 * std::exp(-roots.gamma3 * d);
}

double IpoSolution::v0_d2(double x) const {
    const double d = x - b;
    const double g1 = roots.gamma1, g2 = roots.gamma2, g3 = roots.gamma3;
    return g1 * g1 * D1 * std::exp(g1 * d) + g2 * g2 * D2 * std::exp(g2 * d) +
           g3 * g3 * D3 * std::exp(-g3 * d);
}

double IpoSolution::v0_d3(double x) const {
    const double d = x - b;
    const double g1 = roots.gamma1, g2 = roots.gamma2, g3 = roots.gamma3;
    return g1 * g1 * g1 * D1 * std::exp(g1 * d) + g2 * g2 * g2 * D2 * std::exp(g2 * d) -
           g3 * g3 * g3 * D3 * std::exp(-g3 * d);
}

double IpoSolution::value(double x) const {
    if (x < 0.0) throw DomainError("IpoSolution::value: x must be >= 0");
    if (x < a) return x - a + v0(a);
    if (x <= b) return v0(x);
    return r * x;
}

std::pair<double, double> IpoSolution::derivatives(double x) const {
    if (x < 0.0) throw DomainError("IpoSolution::derivatives: x must be >= 0");
    if (x < a) return {1.0, 0.0};
    if (x <= b) return {v0_d1(x), v0_d2(x)};
    return {r, 0.0};
}

IpoSolution solve_ipo_threshold(const IpoParams& params) {
    const ModelParams& m = params.model;
    const CharRoots roots = solve_roots(m);
    const double b_star = m.b_star();
    const double a = params.a;
    const double r = params.r;

    // R > 1 on [a, max(a, b*)] and R -> -inf; exactly one root lies to the
    // right of max(a, b*).
    const double lo = std::max(a, b_star) + 1e-9 * std::max(1.0, std::fabs(b_star));
    const auto g = [&](double b) { return boundary_residual_R(b, a, roots, m, r) - 1.0; };
    const auto dg = [&](double b) { return boundary_residual_R_prime(b, a, roots, m, r); };
    const double hi = expand_until_sign_change(g, lo, 1.0);
    const double b = bisect(g, lo, hi, 1e-12, dg);

    const IpoCoeffs c = coeff_A(b, roots, m, r);
    return IpoSolution{m, a, b, c.A1, c.A2, c.A3, c.D1, c.D2, c.D3, roots, r, b_star};
}

std::vector<ValueRecord> tabulate_ipo(const IpoSolution& sol,
                                      const std::vector<double>& x_grid) {
    std::vector<ValueRecord> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) {
        const auto [v1, v2] = sol.derivatives(x);
        out.push_back({x, sol.value(x), v1, v2});
    }
    return out;
}

BudgetOptimum solve_budget_optimum(const IpoParams& params,
                                   const std::vector<double>& x_grid) {
    IpoParams p0(params.model, params.r, 0.0, params.budget);
    IpoParams pB(params.model, params.r, params.budget, params.budget);
    IpoSolution s0 = solve_ipo_threshold(p0);
    IpoSolution sB = solve_ipo_threshold(pB);

    // Larger boundary means pointwise-larger value; ties prefer a = 0.
    const bool pick_budget = sB.b > s0.b;
    BudgetOptimum out{pick_budget ? params.budget : 0.0,
                      pick_budget ? sB : s0,
                      s0,
                      sB,
                      tabulate_ipo(s0, x_grid),
                      tabulate_ipo(sB, x_grid)};
    return out;
}

namespace {

// Second-order smooth-fit residual v0''(a; a) at floor a.
double second_fit_residual(const IpoParams& params, double a) {
    IpoParams p(params.model, params.r, a, params.budget);
    const IpoSolution s = solve_ipo_threshold(p);
    return s.v0_d2(a);
}

} // namespace

MinMaxResult solve_min_max_a(const IpoParams& params, double a_max, int scan_points) {
    if (a_max <= 0.0) a_max = 4.0 * std::max(params.model.b_star(), 1.0);
    const auto f = [&](double a) { return second_fit_residual(params, a); };

    // Scan for sign changes instead of assuming the extremum is unique.
    double prev_a = 0.0;
    double prev_f = f(0.0);
    double lo = -1.0, hi = -1.0;
    int changes = 0;
    for (int i = 1; i <= scan_points; ++i) {
        const double a = a_max * static_cast<double>(i) / scan_points;
        const double fa = f(a);
        if (std::signbit(fa) != std::signbit(prev_f)) {
            ++changes;
            if (changes == 1) {
                lo = prev_a;
                hi = a;
            }
        }
        prev_a = a;
        prev_f = fa;
    }
    if (changes == 0)
        throw NoSignChange("solve_min_max_a: v0''(a;a) has no sign change on [0, a_max]");
    if (changes > 1)
        throw NoSignChange("solve_min_max_a: multiple sign changes of v0''(a;a); "
                           "the extremum of b(a) is not unique");

    const double a_tilde = bisect(f, lo, hi, 1e-12);
    IpoParams p(params.model, params.r, a_tilde, params.budget);
    return MinMaxResult{a_tilde, solve_ipo_threshold(p)};
}

} // namespace jdopt
