#pragma once

#include <cstddef>

namespace subdiff {

/// Truncation control for series evaluations.
struct SeriesControl {
    double abs_tol = 1e-13;
    int max_terms = 600;  // >= 8
};

/// Gamma function. Rejects the poles x = 0, -1, -2, ...
double gamma_fn(double x);

/// Reciprocal gamma 1/Gamma(x); entire, zero at the poles of Gamma.
double rgamma(double x);

/// Riemann-Liouville kernel g_gamma(t) = t^(gamma-1)/Gamma(gamma) for t > 0,
/// 0 for t <= 0. Requires gamma in (0, 1].
double kernel_g(double gamma, double t);

/// Largest positive argument accepted by ml_eval. The solver only ever needs
/// x <= 0; positive support exists for testing against exp.
inline constexpr double ml_x_max = 2.0;

/// Mittag-Leffler function E_{alpha,beta}(x) for alpha in (0,1], beta > 0,
/// real x <= ml_x_max.
///
/// Strategy: Taylor series where the alternating sum keeps its digits
/// (x >= -14^alpha; the largest term grows like exp(|x|^(1/alpha))), the
/// optimally truncated asymptotic series for large -x, and otherwise the
/// Gorenflo-Luchko real-line integral representation with the near-pole
/// Lorentzian removed analytically so the quadrature stays uniform in
/// alpha -> 1. alpha == 1 uses the Kummer-transformed confluent series,
/// which has positive terms for x < 0.
double ml_eval(double alpha, double beta, double x, const SeriesControl& ctl = {});

/// Wright/Mainardi function Phi_gamma(t), gamma in (0,1), t >= 0.
///
/// Direct series in extended precision with a running cancellation estimate;
/// throws EvalError when the estimate exceeds ctl.abs_tol (outside the
/// reliable window) instead of returning noise.
double wright_eval(double gamma, double t, const SeriesControl& ctl = {});

/// Upper end of the t-window where wright_eval can deliver `tol` absolute
/// accuracy (cancellation-limited; grows as gamma decreases).
double wright_reliable_tmax(double gamma, double tol = 1e-10);

}  // namespace subdiff
