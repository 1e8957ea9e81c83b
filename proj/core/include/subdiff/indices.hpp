#pragma once

#include <limits>

namespace subdiff {

/// Exponent bookkeeping (gamma, alpha, alpha_tilde, beta, q, rho) and the
/// derived regularity indices theta, xi, sigma.
struct ProblemIndices {
    double gamma = 0.5;        // in (0,1)
    double alpha = 0.5;        // state space V_alpha
    double alpha_tilde = 0.0;  // control target V_alpha_tilde
    double beta = 0.0;         // nonlinearity target V_beta
    double q = std::numeric_limits<double>::infinity();  // control integrability
    double rho = 1.0;          // in (0,1]

    void validate() const;  // throws ConfigError naming the offending field

    double theta() const;  // min of the three exponents; > 0 when valid
    double xi() const;     // in (0, theta/(1-theta)); midpoint choice
    double sigma() const;  // min(1 + xi, q)
};

/// theta = min{ g/2 (2-a+at) - 1/q, g/2 (2-a+b), g/2 (2-a+at) + rho }.
double theta_exponent(const ProblemIndices& idx);

}  // namespace subdiff
