#include "jdopt/sim.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "jdopt/rng.hpp"

namespace jdopt {

void SimConfig::validate(const ModelParams& model) const {
    if (!(dt > 0.0) || dt > 1e-2)
        throw ConfigError("SimConfig: dt must be in (0, 1e-2]");
    if (!(model.lambda * dt < 0.1))
        throw ConfigError("SimConfig: lambda * dt must stay below 0.1");
    if (!(model.alpha * horizon >= 20.0))
        throw ConfigError("SimConfig: alpha * horizon must be >= 20");
    if (n_paths <= 0) throw ConfigError("SimConfig: n_paths must be > 0");
    if (antithetic && (n_paths % 2) != 0)
        throw ConfigError("SimConfig: antithetic pairing needs an even n_paths");
}

namespace {

struct PathResult {
    double payoff;
    bool truncated;
};

struct StepConsts {
    double mu_dt;
    double sig_sqdt;
    double disc_dt;
};

// One IPO path; payoff = discounted reward minus discounted infusion cost.
// The RNG is built locally so its state can stay in registers for the loop.
PathResult ipo_path(const ModelParams& m, double a, double b, double r, double x0,
                    const SimConfig& cfg, const StepConsts& sc,
                    std::uint64_t seed, std::uint64_t stream, bool negate) {
    if (x0 >= b) return {r * x0, false};
    PathRng rng(seed, stream);

    // Hoist every loop constant into a local: the RNG writes through a pointer
    // on each call, so loads through m/cfg/sc cannot be kept in registers.
    const double sign = negate ? -1.0 : 1.0;
    const double mu = m.mu, sigma = m.sigma, lambda = m.lambda, eta = m.eta,
                 alpha = m.alpha;
    const double dt = cfg.dt, horizon = cfg.horizon;
    const double mu_dt = sc.mu_dt, sig_dt = sc.sig_sqdt * sign, disc_dt = sc.disc_dt;

    double cost = x0 < a ? a - x0 : 0.0;
    double x = x0 < a ? a : x0;
    double t = 0.0;
    double disc = 1.0;
    double t_jump = rng.next_exponential(lambda);

    while (true) {
        const double t_end = t_jump < horizon ? t_jump : horizon;
        const double seg = t_end - t;
        const long n_full = static_cast<long>(seg / dt);
        for (long k = 0; k < n_full; ++k) {
            x += mu_dt + sig_dt * rng.next_normal();
            disc *= disc_dt;
            if (x < a) {
                cost += disc * (a - x);
                x = a;
            }
            if (x >= b) return {disc * r * x - cost, false};
        }
        const double rem = seg - static_cast<double>(n_full) * dt;
        if (rem > 0.0) {
            x += mu * rem + sigma * std::sqrt(rem) * sign * rng.next_normal();
            disc *= std::exp(-alpha * rem);
            if (x < a) {
                cost += disc * (a - x);
                x = a;
            }
            if (x >= b) return {disc * r * x - cost, false};
        }
        t = t_end;
        if (t >= horizon) return {-cost, true};
        x += rng.next_exponential(eta);
        if (x >= b) return {disc * r * x - cost, false};
        t_jump = t + rng.next_exponential(lambda);
    }
}

// One harvest path; payoff = discounted dividends paid until ruin.
PathResult harvest_path(const ModelParams& m, double b, double x0, const SimConfig& cfg,
                        const StepConsts& sc, std::uint64_t seed, std::uint64_t stream,
                        bool negate) {
    if (x0 <= 0.0) return {0.0, false};
    PathRng rng(seed, stream);

    // Same register-pressure trick as ipo_path: keep the hot-loop constants
    // in locals so RNG calls cannot force reloads through the references.
    const double sign = negate ? -1.0 : 1.0;
    const double mu = m.mu, sigma = m.sigma, lambda = m.lambda, eta = m.eta,
                 alpha = m.alpha;
    const double dt = cfg.dt, horizon = cfg.horizon;
    const double mu_dt = sc.mu_dt, sig_dt = sc.sig_sqdt * sign, disc_dt = sc.disc_dt;

    double div = 0.0;
    double x = x0;
    if (x > b) {
        div += x - b;
        x = b;
    }
    double t = 0.0;
    double disc = 1.0;
    double t_jump = rng.next_exponential(lambda);

    while (true) {
        const double t_end = t_jump < horizon ? t_jump : horizon;
        const double seg = t_end - t;
        const long n_full = static_cast<long>(seg / dt);
        for (long k = 0; k < n_full; ++k) {
            x += mu_dt + sig_dt * rng.next_normal();
            disc *= disc_dt;
            if (x <= 0.0) return {div, false};
            if (x > b) {
                div += disc * (x - b);
                x = b;
            }
        }
        const double rem = seg - static_cast<double>(n_full) * dt;
        if (rem > 0.0) {
            x += mu * rem + sigma * std::sqrt(rem) * sign * rng.next_normal();
            disc *= std::exp(-alpha * rem);
            if (x <= 0.0) return {div, false};
            if (x > b) {
                div += disc * (x - b);
                x = b;
            }
        }
        t = t_end;
        if (t >= horizon) return {div, true};
        x += rng.next_exponential(eta);
        if (x > b) {
            div += disc * (x - b);
            x = b;
        }
        t_jump = t + rng.next_exponential(lambda);
    }
}

template <class PathFn>
SimEstimate run_paths(const ModelParams& m, const SimConfig& cfg, int n_threads,
                      PathFn&& path_fn) {
    const StepConsts sc{m.mu * cfg.dt, m.sigma * std::sqrt(cfg.dt),
                        std::exp(-m.alpha * cfg.dt)};

    const std::int64_t n_units = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
    if (n_threads <= 0) {
        n_threads = static_cast<int>(std::thread::hardware_concurrency());
        if (n_threads <= 0) n_threads = 1;
    }
    if (static_cast<std::int64_t>(n_threads) > n_units)
        n_threads = static_cast<int>(n_units);

    // Per-unit samples are reduced in stream order afterwards so the result
    // is bitwise identical for every thread count.
    std::vector<double> samples(static_cast<std::size_t>(n_units));
    std::vector<unsigned char> truncated(static_cast<std::size_t>(n_units));

    auto worker = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto slot = static_cast<std::size_t>(i);
            const auto stream = static_cast<std::uint64_t>(i);
            if (cfg.antithetic) {
                const PathResult pa = path_fn(sc, cfg.seed, stream, false);
                const PathResult pb = path_fn(sc, cfg.seed, stream, true);
                samples[slot] = 0.5 * (pa.payoff + pb.payoff);
                truncated[slot] = static_cast<unsigned char>((pa.truncated ? 1 : 0) +
                                                             (pb.truncated ? 1 : 0));
            } else {
                const PathResult p = path_fn(sc, cfg.seed, stream, false);
                samples[slot] = p.payoff;
                truncated[slot] = p.truncated ? 1 : 0;
            }
        }
    };

    if (n_threads == 1) {
        worker(0, n_units);
    } else {
        std::vector<std::thread> threads;
        const std::int64_t chunk = (n_units + n_threads - 1) / n_threads;
        for (int tid = 0; tid < n_threads; ++tid) {
            const std::int64_t lo = tid * chunk;
            const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n_units);
            threads.emplace_back(worker, lo, hi);
        }
        for (auto& th : threads) th.join();
    }

    struct {
        double sum = 0.0, sum_sq = 0.0;
        std::int64_t truncated = 0;
    } total;
    for (std::int64_t i = 0; i < n_units; ++i) {
        const auto slot = static_cast<std::size_t>(i);
        total.sum += samples[slot];
        total.sum_sq += samples[slot] * samples[slot];
        total.truncated += truncated[slot];
    }

    const double n = static_cast<double>(n_units);
    const double mean = total.sum / n;
    const double var = n > 1 ? (total.sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
    SimEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(std::max(var, 0.0) / n);
    est.n_paths = cfg.n_paths;
    est.truncated_fraction = static_cast<double>(total.truncated) /
                             static_cast<double>(cfg.n_paths);
    return est;
}

} // namespace

SimEstimate simulate_ipo(const ModelParams& model, double a, double b, double r,
                         double x0, const SimConfig& cfg, int n_threads) {
    cfg.validate(model);
    if (!(a < b) || a < 0.0) throw ConfigError("simulate_ipo: requires 0 <= a < b");
    if (x0 < 0.0) throw ConfigError("simulate_ipo: x0 must be >= 0");
    return run_paths(model, cfg, n_threads,
                     [&](const auto& sc, std::uint64_t seed, std::uint64_t stream,
                         bool neg) {
                         return ipo_path(model, a, b, r, x0, cfg, sc, seed, stream, neg);
                     });
}

SimEstimate simulate_harvest(const ModelParams& model, double b, double x0,
                             const SimConfig& cfg, int n_threads) {
    cfg.validate(model);
    if (!(b > 0.0)) throw ConfigError("simulate_harvest: b must be > 0");
    if (x0 < 0.0) throw ConfigError("simulate_harvest: x0 must be >= 0");
    return run_paths(model, cfg, n_threads,
                     [&](const auto& sc, std::uint64_t seed, std::uint64_t stream,
                         bool neg) {
                         return harvest_path(model, b, x0, cfg, sc, seed, stream, neg);
                     });
}

SimEstimate estimate_exp_moment(const ModelParams& m, double gamma, double t, double x0,
                                std::int64_t n_paths, double dt, std::uint64_t seed) {
    if (!(dt > 0.0) || n_paths <= 0)
        throw ConfigError("estimate_exp_moment: need dt > 0 and n_paths > 0");

    const double mu_dt = m.mu * dt;
    const double sig_sqdt = m.sigma * std::sqrt(dt);

    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t i = 0; i < n_paths; ++i) {
        PathRng rng(seed, static_cast<std::uint64_t>(i));
        double x = x0;
        double now = 0.0;
        double t_jump = rng.next_exponential(m.lambda);
        while (now < t) {
            const double t_end = t_jump < t ? t_jump : t;
            while (now < t_end) {
                const double rem = t_end - now;
                if (rem >= dt) {
                    x += mu_dt + sig_sqdt * rng.next_normal();
                    now += dt;
                } else {
                    x += m.mu * rem + m.sigma * std::sqrt(rem) * rng.next_normal();
                    now = t_end;
                }
            }
            if (t_jump < t) {
                x += rng.next_exponential(m.eta);
                t_jump = now + rng.next_exponential(m.lambda);
            }
        }
        const double sample = std::exp(gamma * x);
        sum += sample;
        sum_sq += sample * sample;
    }

    const double n = static_cast<double>(n_paths);
    const double mean = sum / n;
    const double var = n > 1 ? (sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
    return SimEstimate{mean, std::sqrt(std::max(var, 0.0) / n), n_paths, 0.0};
}

} // namespace jdopt
