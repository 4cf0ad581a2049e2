#pragma once

#include <string>
#include <vector>

#include "jdopt/piecewise.hpp"

namespace jdopt {

/// Closed-form (A - alpha)v(x): drift and diffusion terms from the active
/// piece's derivatives, jump integral from exact integrals of eta e^{-eta y}
/// against every downstream piece. side < 0 takes the left piece at a
/// breakpoint.
double apply_generator(const PiecewiseValueFunction& v, const ModelParams& model,
                       double x, int side = +1);

/// Grid used by the condition checkers: uniform points per piece plus
/// geometric refinement near each breakpoint.
struct GridSpec {
    int points_per_piece = 1000;
    int refine_points = 10;
    double refine_width = 1e-6;
    double tail_extent = -1.0; // <= 0: max(2 * last breakpoint, 10)
};

std::vector<double> build_check_grid(const std::vector<double>& breaks,
                                     const GridSpec& spec);

/// One verification-lemma condition with its worst violation on the grid.
struct ConditionCheck {
    std::string condition;
    double tolerance;
    double worst_violation;
    double at_x;
    bool pass;
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    bool verdict = false;
};

/// Serializes as {"verdict": ..., "checks": [{condition, worst_violation,
/// at_x, tolerance, pass}, ...]}.
std::string report_to_json(const ConditionReport& report);

/// Numerically certifies the optimal-stopping verification conditions for a
/// solved IPO threshold solution.
ConditionReport check_ipo_conditions(const IpoSolution& sol, const GridSpec& spec = {});

/// Certifies the dividend-problem verification conditions (generator sign,
/// slope >= 1, concavity, smooth fit).
ConditionReport check_harvest_conditions(const HarvestSolution& sol,
                                         const GridSpec& spec = {});

} // namespace jdopt
