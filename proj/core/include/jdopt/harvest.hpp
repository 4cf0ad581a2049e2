#pragma once

#include <utility>
#include <vector>

#include "jdopt/ipo.hpp" // ValueRecord
#include "jdopt/model.hpp"

namespace jdopt {

/// Coefficients of the dividend value function at a given barrier b.
/// B1 = K1 e^{-g1 b}, B2 = K2 e^{-g2 b}, B3 = -K3 e^{g3 b} with K1, K2, K3 > 0
/// constants of the model only; evaluation uses the K-form with shifted
/// exponents e^{gamma (x - b)}.
struct HarvestCoeffs {
    double B1, B2, B3;
    double K1, K2, K3;
};

/// Solved dividend-barrier solution.
struct HarvestSolution {
    ModelParams model;
    double b;
    double B1, B2, B3;
    double K1, K2, K3;
    CharRoots roots;

    double v0(double x) const;
    double v0_d1(double x) const;
    double v0_d2(double x) const;
    double v0_d3(double x) const;

    /// Piecewise value: v0 on [0,b), x - b + v0(b) on [b,inf); v(0) = 0.
    double value(double x) const;
    std::pair<double, double> derivatives(double x) const;
};

/// Closed-form coefficient triple (B1(b), B2(b), B3(b)); signs (+, +, -).
HarvestCoeffs coeff_B(double b, const CharRoots& roots, double eta);

/// Q(b) = B1(b) + B2(b) + B3(b); the barrier solves Q(b) = 0.
double boundary_residual_Q(double b, const CharRoots& roots, double eta);

/// Solves Q(b) = 0. Requires mu + lambda/eta > 0 (TrendNotPositive otherwise).
HarvestSolution solve_harvest_threshold(const ModelParams& model);

std::vector<ValueRecord> tabulate_harvest(const HarvestSolution& sol,
                                          const std::vector<double>& x_grid);

} // namespace jdopt
