#pragma once

#include <cmath>
#include <functional>

#include "jdopt/errors.hpp"

namespace jdopt {

/// Bisection on [lo, hi] (f(lo) and f(hi) of opposite sign) to relative
/// tolerance rel_tol, optionally polished by safeguarded Newton steps when a
/// derivative is supplied. Newton iterates that leave the bracket are
/// discarded.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double rel_tol = 1e-12,
                     const std::function<double(double)>& df = nullptr) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi))
        throw BracketFailure("bisect: no sign change on bracket");

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) break;
        if (std::signbit(fmid) == std::signbit(flo)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * std::max({1.0, std::fabs(lo), std::fabs(hi)})) break;
    }

    if (df) {
        for (int it = 0; it < 3; ++it) {
            const double g = f(mid);
            const double dg = df(mid);
            if (dg == 0.0) break;
            const double next = mid - g / dg;
            if (!(next > lo && next < hi)) break;
            mid = next;
        }
    }
    return mid;
}

/// Doubles the upper end of [lo, lo + step] until f changes sign against
/// f(lo). Returns the expanded endpoint.
inline double expand_until_sign_change(const std::function<double(double)>& f, double lo,
                                       double step, int max_doublings = 80) {
    const double flo = f(lo);
    double hi = lo + step;
    for (int k = 0; k < max_doublings; ++k) {
        if (std::signbit(f(hi)) != std::signbit(flo)) return hi;
        step *= 2.0;
        hi = lo + step;
    }
    throw BracketFailure("expand_until_sign_change: no sign change after expansion");
}

} // namespace jdopt
