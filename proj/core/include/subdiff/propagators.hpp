#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "subdiff/specfun.hpp"
#include "subdiff/spectral.hpp"
#include "subdiff/time_grid.hpp"

namespace subdiff {

// Scalar layer -------------------------------------------------------------

/// E_{g,1}(-lambda t^g): the per-mode factor of S_gamma(t).
double s_factor(double gamma, double lambda, double t, const SeriesControl& ctl = {});

/// t^{g-1} E_{g,g}(-lambda t^g): the per-mode factor of P_gamma(t), t > 0.
double p_factor(double gamma, double lambda, double t, const SeriesControl& ctl = {});

/// K(s) = s^g E_{g,g+1}(-lambda s^g) = int_0^s p_factor; K' = p_factor.
/// Evaluated as (1 - E_{g,1}(-lambda s^g))/lambda when the argument is large.
double kernel_mass(double gamma, double lambda, double s, const SeriesControl& ctl = {});

// Cached per-mode curves ----------------------------------------------------

/// Piecewise-Chebyshev interpolant of a smooth scalar curve in log(s),
/// self-validated against the exact evaluator at build time.
class LogChebCurve {
public:
    LogChebCurve() = default;
    LogChebCurve(std::function<double(double)> exact, double s_lo, double s_hi, double tol);

    bool covers(double s) const { return !panels_.empty() && s >= s_lo_ && s <= s_hi_; }
    double eval(double s) const;  // falls back to the exact evaluator off-range
    double max_build_error() const { return build_err_; }

private:
    struct Panel {
        double v_lo, v_hi;
        std::vector<double> cheb;  // Chebyshev coefficients on the panel
    };
    std::function<double(double)> exact_;
    std::vector<Panel> panels_;
    double s_lo_ = 0.0, s_hi_ = 0.0, build_err_ = 0.0;

    void build_panel(double v_lo, double v_hi, double tol, int depth);
};

/// Resolvent family context: basis + order + cached kernel-mass curves.
/// gamma in (0,1]; gamma = 1 reproduces the classical semigroup.
class PropagatorContext {
public:
    PropagatorContext(std::shared_ptr<const EigenBasis> basis, double gamma,
                      SeriesControl ctl = {});

    const std::shared_ptr<const EigenBasis>& basis() const { return basis_; }
    double gamma() const { return gamma_; }
    const SeriesControl& series_control() const { return ctl_; }

    /// Kernel mass K_n(s) for mode n, via the cached curve when covered.
    double mass(int mode, double s) const;
    /// Prepare mass curves covering lags in [s_lo, s_hi].
    void prepare_mass_tables(double s_lo, double s_hi) const;

private:
    std::shared_ptr<const EigenBasis> basis_;
    double gamma_;
    SeriesControl ctl_;
    mutable std::vector<LogChebCurve> mass_curves_;  // one per mode, lazily built
    mutable double table_lo_ = 0.0, table_hi_ = 0.0;
};

// Field layer ---------------------------------------------------------------

/// S_gamma(t) v; t = 0 returns v exactly.
SpectralField apply_S(const PropagatorContext& ctx, double t, const SpectralField& v);

/// P_gamma(t) v; t must be > 0 (P is singular at 0).
SpectralField apply_P(const PropagatorContext& ctx, double t, const SpectralField& v);

/// Volterra convolution int_0^{t_j} P_gamma(t_j - tau) f(tau) dtau at every
/// node, with piecewise-constant (endpoint-averaged) forcing and exact
/// kernel masses.
std::vector<SpectralField> convolve_P(const PropagatorContext& ctx, const GradedTimeGrid& grid,
                                      const std::vector<SpectralField>& forcing);

}  // namespace subdiff
