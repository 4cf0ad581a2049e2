#include "jdopt/model.hpp"

#include <cmath>
#include <string>

#include "jdopt/rootfind.hpp"

namespace jdopt {

ModelParams::ModelParams(double mu_, double sigma_, double lambda_, double eta_,
                         double alpha_)
    : mu(mu_), sigma(sigma_), lambda(lambda_), eta(eta_), alpha(alpha_) {
    if (!(sigma > 0.0)) throw ValidationError("ModelParams: sigma must be > 0");
    if (!(lambda > 0.0)) throw ValidationError("ModelParams: lambda must be > 0");
    if (!(eta > 0.0)) throw ValidationError("ModelParams: eta must be > 0");
    if (!(alpha > 0.0)) throw ValidationError("ModelParams: alpha must be > 0");
    if (!std::isfinite(mu)) throw ValidationError("ModelParams: mu must be finite");
}

double characteristic_value(const ModelParams& p, double gamma) {
    const double guard = 1e-12 * std::max(1.0, p.eta);
    if (std::fabs(gamma - p.eta) < guard)
        throw PoleAtEta("characteristic_value: gamma at the pole eta");
    return 0.5 * p.sigma * p.sigma * gamma * gamma + p.mu * gamma +
           p.lambda * p.eta / (p.eta - gamma) - p.lambda;
}

double characteristic_derivative(const ModelParams& p, double gamma) {
    const double d = p.eta - gamma;
    return p.sigma * p.sigma * gamma + p.mu + p.lambda * p.eta / (d * d);
}

CharRoots solve_roots(const ModelParams& p) {
    const auto g = [&](double x) { return characteristic_value(p, x) - p.alpha; };
    const auto dg = [&](double x) { return characteristic_derivative(p, x); };

    const double eps = 1e-9 * p.eta;

    // gamma1 in (0, eta): G - alpha goes from -alpha at 0+ to +inf at eta-.
    const double gamma1 = bisect(g, eps, p.eta - eps, 1e-12, dg);

    // gamma2 in (eta, inf): from -inf at eta+ to +inf; expand the far end.
    double hi = expand_until_sign_change(g, p.eta + eps, 1.0);
    const double gamma2 = bisect(g, p.eta + eps, hi, 1e-12, dg);

    // Negative root in (-inf, 0): from +inf at -inf to -alpha at 0-.
    double lo = -expand_until_sign_change([&](double x) { return g(-x); }, eps, 1.0);
    const double neg = bisect(g, lo, -eps, 1e-12, dg);

    return CharRoots{gamma1, gamma2, -neg};
}

} // namespace jdopt
