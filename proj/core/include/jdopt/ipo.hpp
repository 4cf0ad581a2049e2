#pragma once

#include <utility>
#include <vector>

#include "jdopt/model.hpp"

namespace jdopt {

/// IPO problem inputs: the model, the IPO multiple r in the reward h(x) = rx,
/// the cash-infusion floor a, and the budget cap B for floor optimization.
struct IpoParams {
    ModelParams model;
    double r;
    double a = 0.0;
    double budget = 0.0;

    IpoParams(ModelParams model_, double r_, double a_ = 0.0, double budget_ = 0.0);
};

/// Coefficients of v0 at a given boundary b. The D-form carries the
/// exponential factored out: A1 = D1 e^{-gamma1 b}, A2 = D2 e^{-gamma2 b},
/// A3 = D3 e^{gamma3 b}. Evaluation uses the D-form with shifted exponents
/// e^{gamma (x - b)} so large b never overflows intermediates.
struct IpoCoeffs {
    double A1, A2, A3;
    double D1, D2, D3;
};

/// Solved IPO threshold solution for a fixed floor a.
struct IpoSolution {
    ModelParams model;
    double a;
    double b;
    double A1, A2, A3;
    double D1, D2, D3;
    CharRoots roots;
    double r;
    double b_star;

    /// v0(x) = A1 e^{g1 x} + A2 e^{g2 x} + A3 e^{-g3 x}, evaluated in D-form.
    double v0(double x) const;
    double v0_d1(double x) const;
    double v0_d2(double x) const;
    double v0_d3(double x) const;

    /// Piecewise value: x - a + v0(a) on [0,a], v0 on [a,b], rx on [b,inf).
    double value(double x) const;
    /// (v', v'') of the active piece; (1, 0) on [0,a), (r, 0) on (b,inf).
    std::pair<double, double> derivatives(double x) const;
};

/// Closed-form coefficient triple (A1(b), A2(b), A3(b)).
IpoCoeffs coeff_A(double b, const CharRoots& roots, const ModelParams& model, double r);

/// R(b) = g1 A1(b) e^{g1 a} + g2 A2(b) e^{g2 a} - g3 A3(b) e^{-g3 a}; the
/// boundary solves R(b) = 1.
double boundary_residual_R(double b, double a, const CharRoots& roots,
                           const ModelParams& model, double r);

/// Analytic dR/db, used to polish the bisection root.
double boundary_residual_R_prime(double b, double a, const CharRoots& roots,
                                 const ModelParams& model, double r);

/// Solves R(b) = 1 on (max(a, b*), inf) and assembles the solution.
IpoSolution solve_ipo_threshold(const IpoParams& params);

/// One (x, v, v', v'') record of a tabulated value function.
struct ValueRecord {
    double x, v, v1, v2;
};

std::vector<ValueRecord> tabulate_ipo(const IpoSolution& sol,
                                      const std::vector<double>& x_grid);

/// Budget optimum over a in {0, B}: the floor with the larger boundary wins
/// (ties go to a = 0).
struct BudgetOptimum {
    double a_star;
    IpoSolution chosen;
    IpoSolution at_zero;
    IpoSolution at_budget;
    std::vector<ValueRecord> table_zero;
    std::vector<ValueRecord> table_budget;
};

BudgetOptimum solve_budget_optimum(const IpoParams& params,
                                   const std::vector<double>& x_grid);

/// Min-max floor: the unique a with second-order smooth fit
/// v0''(a; a) = 0, located by a sign-change scan and bisection.
struct MinMaxResult {
    double a_tilde;
    IpoSolution solution;
};

MinMaxResult solve_min_max_a(const IpoParams& params, double a_max = -1.0,
                             int scan_points = 256);

} // namespace jdopt
