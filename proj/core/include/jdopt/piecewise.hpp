#pragma once

#include <cstddef>
#include <vector>

#include "jdopt/errors.hpp"
#include "jdopt/harvest.hpp"
#include "jdopt/ipo.hpp"

namespace jdopt {

/// One exponential term c * e^{gamma (x - ref)}. The reference point keeps
/// large coefficients representable (solutions carry ref = b).
struct ExpTerm {
    double coeff;
    double gamma;
    double ref = 0.0;
};

/// A piece is either linear (slope x + intercept) or a sum of exponentials.
struct Piece {
    enum class Kind { Linear, ExpSum } kind;
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<ExpTerm> terms;

    static Piece linear(double slope, double intercept) {
        return Piece{Kind::Linear, slope, intercept, {}};
    }
    static Piece exp_sum(std::vector<ExpTerm> terms) {
        return Piece{Kind::ExpSum, 0.0, 0.0, std::move(terms)};
    }

    double value(double x) const;
    double deriv1(double x) const;
    double deriv2(double x) const;
};

/// Piecewise function on [0, inf): piece i lives on [breaks[i], breaks[i+1])
/// and the final piece (which must be linear) extends to infinity.
/// breaks[0] must be 0. Pieces must agree at interior breakpoints to 1e-9.
class PiecewiseValueFunction {
public:
    PiecewiseValueFunction(std::vector<double> breaks, std::vector<Piece> pieces);

    static PiecewiseValueFunction from_ipo(const IpoSolution& sol);
    static PiecewiseValueFunction from_harvest(const HarvestSolution& sol);

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    /// Index of the piece active at x; side < 0 picks the left piece at an
    /// interior breakpoint.
    std::size_t piece_index(double x, int side = +1) const;

    double value(double x, int side = +1) const;
    double deriv1(double x, int side = +1) const;
    double deriv2(double x, int side = +1) const;

private:
    std::vector<double> breaks_;
    std::vector<Piece> pieces_;
};

} // namespace jdopt
