#pragma once

#include "jdopt/errors.hpp"

namespace jdopt {

/// Jump-diffusion parameters: drift mu, volatility sigma, Poisson jump
/// intensity lambda, exponential jump-size rate eta (mean jump 1/eta), and
/// discount rate alpha.
struct ModelParams {
    double mu;
    double sigma;
    double lambda;
    double eta;
    double alpha;

    ModelParams(double mu_, double sigma_, double lambda_, double eta_, double alpha_);

    /// Expected appreciation rate mu + lambda/eta.
    double trend() const { return mu + lambda / eta; }

    /// Perpetuity value of the trend, (mu + lambda/eta)/alpha.
    double b_star() const { return trend() / alpha; }
};

/// The three roots of G(gamma) = alpha: 0 < gamma1 < eta < gamma2 and the
/// negative root stored as its positive magnitude gamma3.
struct CharRoots {
    double gamma1;
    double gamma2;
    double gamma3;
};

/// G(gamma) = 1/2 sigma^2 gamma^2 + mu gamma + lambda eta/(eta - gamma) - lambda.
double characteristic_value(const ModelParams& params, double gamma);

/// G'(gamma), used to polish root brackets.
double characteristic_derivative(const ModelParams& params, double gamma);

/// Solves G(gamma) = alpha for the two positive roots and the negative one.
CharRoots solve_roots(const ModelParams& params);

} // namespace jdopt
