#include "jdopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace jdopt {

namespace {

// Exact integral of a linear piece p*s + q against eta e^{-eta (s - x)} over
// [l, u]; u may be infinite. Antiderivative -e^{-eta(s-x)} (p s + q + p/eta).
double linear_jump_integral(double p, double q, double eta, double x, double l, double u) {
    const auto F = [&](double s) {
        return -std::exp(-eta * (s - x)) * (p * s + q + p / eta);
    };
    const double upper = std::isinf(u) ? 0.0 : F(u);
    return upper - F(l);
}

// Exact integral of c e^{gamma (s - ref)} against eta e^{-eta (s - x)} over
// the finite interval [l, u].
double exp_jump_integral(const ExpTerm& t, double eta, double x, double l, double u) {
    if (std::fabs(t.gamma - eta) < 1e-12 * std::max(1.0, eta))
        throw PoleGuard("apply_generator: piece exponent coincides with eta");
    const auto E = [&](double s) { return t.gamma * (s - t.ref) - eta * (s - x); };
    return t.coeff * eta / (t.gamma - eta) * (std::exp(E(u)) - std::exp(E(l)));
}

} // namespace

double apply_generator(const PiecewiseValueFunction& v, const ModelParams& m, double x,
                       int side) {
    const double vx = v.value(x, side);
    const double v1 = v.deriv1(x, side);
    const double v2 = v.deriv2(x, side);

    const auto& breaks = v.breakpoints();
    const auto& pieces = v.pieces();
    const double inf = std::numeric_limits<double>::infinity();

    double integral = 0.0; // int_0^inf v(x + y) eta e^{-eta y} dy
    for (std::size_t i = v.piece_index(x); i < pieces.size(); ++i) {
        const double l = std::max(breaks[i], x);
        const double u = (i + 1 < breaks.size()) ? breaks[i + 1] : inf;
        if (u <= l) continue;
        const Piece& p = pieces[i];
        if (p.kind == Piece::Kind::Linear) {
            integral += linear_jump_integral(p.slope, p.intercept, m.eta, x, l, u);
        } else {
            for (const ExpTerm& t : p.terms)
                integral += exp_jump_integral(t, m.eta, x, l, u);
        }
    }

    return m.mu * v1 + 0.5 * m.sigma * m.sigma * v2 +
           m.lambda * (integral - vx) - m.alpha * vx;
}

std::vector<double> build_check_grid(const std::vector<double>& breaks,
                                     const GridSpec& spec) {
    std::vector<double> grid;
    const double last = breaks.back();
    double tail = spec.tail_extent;
    if (tail <= 0.0) tail = std::max(last, 10.0);

    std::vector<double> edges(breaks);
    edges.push_back(last + tail);

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        for (int k = 1; k < spec.points_per_piece; ++k)
            grid.push_back(lo + (hi - lo) * k / spec.points_per_piece);
        // Geometric refinement hugging both endpoints.
        double w = spec.refine_width * std::max(1.0, hi - lo);
        for (int k = 0; k < spec.refine_points; ++k) {
            grid.push_back(lo + w);
            grid.push_back(hi - w);
            w *= 0.5;
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

namespace {

constexpr double kEqualityTol = 1e-8;
constexpr double kInequalitySlack = 1e-9;

class Worst {
public:
    void update(double violation, double x) {
        if (violation > worst_) {
            worst_ = violation;
            at_ = x;
        }
    }
    ConditionCheck as_check(std::string name, double tol) const {
        return {std::move(name), tol, worst_, at_, worst_ <= tol};
    }

private:
    double worst_ = -std::numeric_limits<double>::infinity();
    double at_ = 0.0;
};

ConditionReport finalize(std::vector<ConditionCheck> checks) {
    ConditionReport rep{std::move(checks), true};
    for (const auto& c : rep.checks) rep.verdict = rep.verdict && c.pass;
    return rep;
}

} // namespace

ConditionReport check_ipo_conditions(const IpoSolution& sol, const GridSpec& spec) {
    const PiecewiseValueFunction v = PiecewiseValueFunction::from_ipo(sol);
    const ModelParams& m = sol.model;
    const std::vector<double> grid = build_check_grid(v.breakpoints(), spec);

    Worst gen_nonpos;        // (i)  (A-alpha)v <= 0 on (a, inf)
    Worst dominance;         // (ii) v >= rx on (a, inf)
    Worst gen_zero;          // (iv) (A-alpha)v = 0 on (a, b)
    Worst strict_dom;        // (iv) v > rx on (a, b)
    Worst gen_negative;      // (v)  (A-alpha)v < 0 on (b, inf)
    Worst reward_equals;     // (v)  v = rx on (b, inf)
    Worst linear_below;      // (iii) v' = 1, v'' = 0 on [0, a)

    for (double x : grid) {
        const double vx = v.value(x);
        if (x > sol.a) {
            const double res = apply_generator(v, m, x);
            gen_nonpos.update(res, x);
            dominance.update(sol.r * x - vx, x);
            if (x < sol.b) {
                gen_zero.update(std::fabs(res), x);
                strict_dom.update(sol.r * x - vx, x);
            } else if (x > sol.b) {
                gen_negative.update(res, x);
                reward_equals.update(std::fabs(vx - sol.r * x) /
                                         std::max(1.0, sol.r * x),
                                     x);
            }
        } else if (x < sol.a) {
            linear_below.update(std::fabs(v.deriv1(x) - 1.0), x);
            linear_below.update(std::fabs(v.deriv2(x)), x);
        }
    }

    // Smooth-fit and continuity at the boundaries, interior-side limits.
    Worst fit_a;
    if (sol.a > 0.0) fit_a.update(std::fabs(v.deriv1(sol.a, +1) - 1.0), sol.a);
    else fit_a.update(std::fabs(sol.v0_d1(0.0) - 1.0), 0.0);
    Worst fit_b;
    fit_b.update(std::fabs(v.deriv1(sol.b, -1) - sol.r), sol.b);
    Worst cont_b;
    cont_b.update(std::fabs(v.value(sol.b, -1) - sol.r * sol.b) /
                      std::max(1.0, sol.r * sol.b),
                  sol.b);

    std::vector<ConditionCheck> checks;
    checks.push_back(gen_nonpos.as_check("i_generator_nonpositive", kEqualityTol));
    checks.push_back(dominance.as_check("ii_value_dominates_reward", kInequalitySlack));
    checks.push_back(linear_below.as_check("iii_linear_below_floor", kInequalitySlack));
    checks.push_back(fit_a.as_check("iii_smooth_fit_at_floor", kInequalitySlack));
    checks.push_back(gen_zero.as_check("iv_generator_zero_on_continuation", kEqualityTol));
    checks.push_back(strict_dom.as_check("iv_strict_dominance_interior", kInequalitySlack));
    checks.push_back(gen_negative.as_check("v_generator_negative_beyond_b", kInequalitySlack));
    checks.push_back(reward_equals.as_check("v_equals_reward_beyond_b", kInequalitySlack));
    checks.push_back(fit_b.as_check("smooth_fit_at_b", kInequalitySlack));
    checks.push_back(cont_b.as_check("value_continuity_at_b", kInequalitySlack));
    return finalize(std::move(checks));
}

ConditionReport check_harvest_conditions(const HarvestSolution& sol, const GridSpec& spec) {
    const PiecewiseValueFunction v = PiecewiseValueFunction::from_harvest(sol);
    const ModelParams& m = sol.model;
    const std::vector<double> grid = build_check_grid(v.breakpoints(), spec);

    Worst gen_nonpos;   // (i)   (A-alpha)v <= 0 on [0, inf)
    Worst slope_geq1;   // (ii)  v' >= 1
    Worst concavity;    // (iii) v'' <= 0
    Worst gen_zero;     // (iv)  (A-alpha)v = 0 on [0, b)
    Worst slope_gt1;    // (iv)  v' > 1 on [0, b)
    Worst gen_negative; // (v)   (A-alpha)v < 0 on (b, inf)
    Worst linear_tail;  // (v)   unit slope beyond b

    for (double x : grid) {
        const double res = apply_generator(v, m, x);
        gen_nonpos.update(res, x);
        slope_geq1.update(1.0 - v.deriv1(x), x);
        concavity.update(v.deriv2(x), x);
        if (x < sol.b) {
            gen_zero.update(std::fabs(res), x);
            slope_gt1.update(1.0 - v.deriv1(x), x);
        } else if (x > sol.b) {
            gen_negative.update(res, x);
            linear_tail.update(std::fabs(v.deriv1(x) - 1.0), x);
        }
    }

    Worst zero_at_ruin;
    zero_at_ruin.update(std::fabs(v.value(0.0)), 0.0);
    Worst fit1;
    fit1.update(std::fabs(v.deriv1(sol.b, -1) - 1.0), sol.b);
    Worst fit2;
    fit2.update(std::fabs(v.deriv2(sol.b, -1)), sol.b);

    std::vector<ConditionCheck> checks;
    checks.push_back(gen_nonpos.as_check("i_generator_nonpositive", kEqualityTol));
    checks.push_back(slope_geq1.as_check("ii_slope_at_least_one", kInequalitySlack));
    checks.push_back(concavity.as_check("iii_concavity", kInequalitySlack));
    checks.push_back(gen_zero.as_check("iv_generator_zero_on_continuation", kEqualityTol));
    checks.push_back(slope_gt1.as_check("iv_slope_above_one_interior", kInequalitySlack));
    checks.push_back(gen_negative.as_check("v_generator_negative_beyond_b", kInequalitySlack));
    checks.push_back(linear_tail.as_check("v_linear_beyond_b", kInequalitySlack));
    checks.push_back(zero_at_ruin.as_check("zero_value_at_ruin", kInequalitySlack));
    checks.push_back(fit1.as_check("first_order_smooth_fit_at_b", kInequalitySlack));
    checks.push_back(fit2.as_check("second_order_smooth_fit_at_b", kInequalitySlack));
    return finalize(std::move(checks));
}

std::string report_to_json(const ConditionReport& report) {
    nlohmann::ordered_json j;
    j["verdict"] = report.verdict ? "pass" : "fail";
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json item;
        item["condition"] = c.condition;
        item["worst_violation"] = c.worst_violation;
        item["at_x"] = c.at_x;
        item["tolerance"] = c.tolerance;
        item["pass"] = c.pass;
        j["checks"].push_back(std::move(item));
    }
    return j.dump(2);
}

} // namespace jdopt
