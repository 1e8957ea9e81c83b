#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace subdiff {

/// Adaptive Simpson quadrature on [a, b].
///
/// Returns the integral to absolute tolerance `tol` (best effort: intervals
/// that fail to converge within `max_depth` bisections contribute their last
/// estimate and set *converged to false when the pointer is given).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48, bool* converged = nullptr);

/// Composite trapezoid with explicit node weights: sum_i w_i * v_i.
template <typename Va, typename Vb>
double weighted_dot(const Va& w, const Vb& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
    return s;
}

}  // namespace subdiff
