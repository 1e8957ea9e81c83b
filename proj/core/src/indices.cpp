#include "subdiff/indices.hpp"

#include <algorithm>
#include <cmath>

#include "subdiff/errors.hpp"

namespace subdiff {

double theta_exponent(const ProblemIndices& idx) {
    const double g = idx.gamma;
    const double t1 = 0.5 * g * (2.0 - idx.alpha + idx.alpha_tilde) -
                      (std::isinf(idx.q) ? 0.0 : 1.0 / idx.q);
    const double t2 = 0.5 * g * (2.0 - idx.alpha + idx.beta);
    const double t3 = 0.5 * g * (2.0 - idx.alpha + idx.alpha_tilde) + idx.rho;
    const double theta = std::min({t1, t2, t3});
    if (!(theta > 0.0))
        throw ConfigError("indices", "theta <= 0: q too small for gamma(2-alpha+alpha_tilde) (H2)");
    return theta;
}

void ProblemIndices::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("indices.gamma", "must be in (0,1)");
    if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("indices.rho", "must be in (0,1]");
    if (!(alpha_tilde >= -1.0))
        throw ConfigError("indices.alpha_tilde", "must be >= -1");
    // (H1): alpha in [beta, beta+2) and [alpha_tilde, alpha_tilde+2)
    if (!(alpha >= beta && alpha < beta + 2.0))
        throw ConfigError("indices.alpha", "must lie in [beta, beta+2) (H1)");
    if (!(alpha >= alpha_tilde && alpha < alpha_tilde + 2.0))
        throw ConfigError("indices.alpha", "must lie in [alpha_tilde, alpha_tilde+2) (H1)");
    const double q_floor = 2.0 / (gamma * (2.0 - alpha + alpha_tilde));
    if (!(q > q_floor))
        throw ConfigError("indices.q", "must exceed 2/(gamma(2-alpha+alpha_tilde)) (H2)");
    theta_exponent(*this);  // must be positive
}

double ProblemIndices::theta() const { return theta_exponent(*this); }

double ProblemIndices::xi() const {
    const double th = theta();
    return 0.5 * th / (1.0 - th);  // midpoint of (0, theta/(1-theta))
}

double ProblemIndices::sigma() const { return std::min(1.0 + xi(), q); }

}  // namespace subdiff
