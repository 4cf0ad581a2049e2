#include "jdopt/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace jdopt {

double Piece::value(double x) const {
    if (kind == Kind::Linear) return slope * x + intercept;
    double v = 0.0;
    for (const ExpTerm& t : terms) v += t.coeff * std::exp(t.gamma * (x - t.ref));
    return v;
}

double Piece::deriv1(double x) const {
    if (kind == Kind::Linear) return slope;
    double v = 0.0;
    for (const ExpTerm& t : terms) v += t.coeff * t.gamma * std::exp(t.gamma * (x - t.ref));
    return v;
}

double Piece::deriv2(double x) const {
    if (kind == Kind::Linear) return 0.0;
    double v = 0.0;
    for (const ExpTerm& t : terms)
        v += t.coeff * t.gamma * t.gamma * std::exp(t.gamma * (x - t.ref));
    return v;
}

PiecewiseValueFunction::PiecewiseValueFunction(std::vector<double> breaks,
                                               std::vector<Piece> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (breaks_.empty() || breaks_.size() != pieces_.size())
        throw ValidationError("PiecewiseValueFunction: breaks/pieces size mismatch");
    if (breaks_.front() != 0.0)
        throw ValidationError("PiecewiseValueFunction: first breakpoint must be 0");
    if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
        std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end())
        throw ValidationError("PiecewiseValueFunction: breakpoints must be increasing");
    if (pieces_.back().kind != Piece::Kind::Linear)
        throw ValidationError("PiecewiseValueFunction: final piece must be linear");
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
        const double left = pieces_[i - 1].value(breaks_[i]);
        const double right = pieces_[i].value(breaks_[i]);
        const double scale = std::max({1.0, std::fabs(left), std::fabs(right)});
        if (std::fabs(left - right) > 1e-9 * scale)
            throw ValidationError("PiecewiseValueFunction: discontinuous at breakpoint");
    }
}

PiecewiseValueFunction PiecewiseValueFunction::from_ipo(const IpoSolution& sol) {
    const double g1 = sol.roots.gamma1, g2 = sol.roots.gamma2, g3 = sol.roots.gamma3;
    Piece mid = Piece::exp_sum({{sol.D1, g1, sol.b}, {sol.D2, g2, sol.b}, {sol.D3, -g3, sol.b}});
    Piece tail = Piece::linear(sol.r, 0.0);
    if (sol.a > 0.0) {
        Piece head = Piece::linear(1.0, sol.v0(sol.a) - sol.a);
        return PiecewiseValueFunction({0.0, sol.a, sol.b}, {head, mid, tail});
    }
    return PiecewiseValueFunction({0.0, sol.b}, {mid, tail});
}

PiecewiseValueFunction PiecewiseValueFunction::from_harvest(const HarvestSolution& sol) {
    const double g1 = sol.roots.gamma1, g2 = sol.roots.gamma2, g3 = sol.roots.gamma3;
    Piece head = Piece::exp_sum({{sol.K1, g1, sol.b}, {sol.K2, g2, sol.b}, {-sol.K3, -g3, sol.b}});
    Piece tail = Piece::linear(1.0, sol.v0(sol.b) - sol.b);
    return PiecewiseValueFunction({0.0, sol.b}, {head, tail});
}

std::size_t PiecewiseValueFunction::piece_index(double x, int side) const {
    if (x < 0.0) throw DomainError("PiecewiseValueFunction: x must be >= 0");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    if (side < 0 && idx > 0 && x == breaks_[idx]) --idx;
    return idx;
}

double PiecewiseValueFunction::value(double x, int side) const {
    return pieces_[piece_index(x, side)].value(x);
}

double PiecewiseValueFunction::deriv1(double x, int side) const {
    return pieces_[piece_index(x, side)].deriv1(x);
}

double PiecewiseValueFunction::deriv2(double x, int side) const {
    return pieces_[piece_index(x, side)].deriv2(x);
}

} // namespace jdopt
