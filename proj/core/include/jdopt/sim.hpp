#pragma once

#include <cstdint>

#include "jdopt/model.hpp"

namespace jdopt {

/// Euler/exact-jump discretization settings. Jumps are placed at exact
/// compound-Poisson arrival times; between jumps the diffusion advances in
/// Gaussian steps of size dt (the last step shortened to hit the jump time).
struct SimConfig {
    double dt = 1e-3;
    double horizon = 300.0;
    std::int64_t n_paths = 200000;
    std::uint64_t seed = 1;
    bool antithetic = false;

    /// Throws ConfigError unless dt <= 1e-2, lambda dt < 0.1,
    /// alpha * horizon >= 20 and n_paths > 0 (even when antithetic).
    void validate(const ModelParams& model) const;
};

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_paths = 0;
    double truncated_fraction = 0.0;
};

/// Monte Carlo estimate of the IPO payoff under the threshold policy: clamp
/// at the floor a (discounted infusions charged as cost, the time-0 top-up
/// (a - x0)+ undiscounted), stop at the first observation with X >= b, reward
/// r X_tau on the possibly overshot value.
SimEstimate simulate_ipo(const ModelParams& model, double a, double b, double r,
                         double x0, const SimConfig& cfg, int n_threads = 0);

/// Monte Carlo estimate of the dividend payoff under the barrier policy: any
/// excess over b is paid out (discounted) and the state reset to b; the
/// initial excess (x0 - b)+ is paid undiscounted; absorption at X <= 0
/// checked at grid points.
SimEstimate simulate_harvest(const ModelParams& model, double b, double x0,
                             const SimConfig& cfg, int n_threads = 0);

/// Estimates E[e^{gamma X0_t}] for the uncontrolled process, for validating
/// the path engine against exp(G(gamma) t + gamma x0).
SimEstimate estimate_exp_moment(const ModelParams& model, double gamma, double t,
                                double x0, std::int64_t n_paths, double dt,
                                std::uint64_t seed);

} // namespace jdopt
