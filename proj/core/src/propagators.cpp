#include "subdiff/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double s_factor(double gamma, double lambda, double t, const SeriesControl& ctl) {
    if (t < 0.0) throw DomainError("s_factor: t must be >= 0");
    if (t == 0.0) return 1.0;
    return ml_eval(gamma, 1.0, -lambda * std::pow(t, gamma), ctl);
}

double p_factor(double gamma, double lambda, double t, const SeriesControl& ctl) {
    if (!(t > 0.0)) throw DomainError("p_factor: t must be > 0");
    return std::pow(t, gamma - 1.0) * ml_eval(gamma, gamma, -lambda * std::pow(t, gamma), ctl);
}

double kernel_mass(double gamma, double lambda, double s, const SeriesControl& ctl) {
    if (s <= 0.0) return 0.0;
    const double x = lambda * std::pow(s, gamma);
    // Small arguments: direct series for E_{g,g+1}. Large: reduce to E_{g,1},
    // where 1 - E has no cancellation left.
    if (x <= 1.0) return std::pow(s, gamma) * ml_eval(gamma, gamma + 1.0, -x, ctl);
    return (1.0 - ml_eval(gamma, 1.0, -x, ctl)) / lambda;
}

// --------------------------------------------------------------------------
// LogChebCurve
// --------------------------------------------------------------------------

namespace {
constexpr int kChebDegree = 20;  // points per panel
}

LogChebCurve::LogChebCurve(std::function<double(double)> exact, double s_lo, double s_hi,
                           double tol)
    : exact_(std::move(exact)), s_lo_(s_lo), s_hi_(s_hi) {
    if (!(s_lo > 0.0 && s_hi > s_lo)) throw DomainError("LogChebCurve: bad range");
    const double v_lo = std::log(s_lo), v_hi = std::log(s_hi);
    // dyadic panels of width ~ log(2) keep the curve locally analytic
    const int n_panels = std::max(1, (int)std::ceil((v_hi - v_lo) / std::log(2.0)));
    const double dv = (v_hi - v_lo) / n_panels;
    for (int p = 0; p < n_panels; ++p)
        build_panel(v_lo + p * dv, v_lo + (p + 1) * dv, tol, 0);
    std::sort(panels_.begin(), panels_.end(),
              [](const Panel& a, const Panel& b) { return a.v_lo < b.v_lo; });
}

void LogChebCurve::build_panel(double v_lo, double v_hi, double tol, int depth) {
    Panel pn;
    pn.v_lo = v_lo;
    pn.v_hi = v_hi;
    const int N = kChebDegree;
    std::vector<double> fv((std::size_t)N + 1);
    for (int k = 0; k <= N; ++k) {
        const double theta = kPi * k / N;
        const double v = 0.5 * (v_lo + v_hi) + 0.5 * (v_hi - v_lo) * std::cos(theta);
        fv[(std::size_t)k] = exact_(std::exp(v));
    }
    // Chebyshev coefficients from the extrema samples (type-I DCT)
    pn.cheb.assign((std::size_t)N + 1, 0.0);
    for (int j = 0; j <= N; ++j) {
        double acc = 0.0;
        for (int k = 0; k <= N; ++k) {
            const double w = (k == 0 || k == N) ? 0.5 : 1.0;
            acc += w * fv[(std::size_t)k] * std::cos(kPi * j * k / N);
        }
        pn.cheb[(std::size_t)j] = 2.0 * acc / N;
    }
    pn.cheb[0] *= 0.5;
    pn.cheb[(std::size_t)N] *= 0.5;

    // validate at off-node points; split the panel if out of tolerance
    double err = 0.0;
    for (int k = 0; k < 7; ++k) {
        const double v = v_lo + (v_hi - v_lo) * (k + 0.5) / 7.0;
        double t2 = 1.0, t1 = 2.0 * (v - 0.5 * (v_lo + v_hi)) / (v_hi - v_lo);
        const double xx = t1;
        double acc = pn.cheb[0] + pn.cheb[1] * t1;
        for (int j = 2; j <= N; ++j) {
            const double t0 = 2.0 * xx * t1 - t2;
            acc += pn.cheb[(std::size_t)j] * t0;
            t2 = t1;
            t1 = t0;
        }
        err = std::max(err, std::abs(acc - exact_(std::exp(v))));
    }
    if (err > tol && depth < 8) {
        const double mid = 0.5 * (v_lo + v_hi);
        build_panel(v_lo, mid, tol, depth + 1);
        build_panel(mid, v_hi, tol, depth + 1);
        return;
    }
    build_err_ = std::max(build_err_, err);
    panels_.push_back(std::move(pn));
}

double LogChebCurve::eval(double s) const {
    if (!covers(s)) return exact_(s);
    const double v = std::log(s);
    // panels are sorted and contiguous
    std::size_t lo = 0, hi = panels_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (v <= panels_[mid].v_hi)
            hi = mid;
        else
            lo = mid + 1;
    }
    const Panel& pn = panels_[lo];
    const double x = std::clamp(2.0 * (v - 0.5 * (pn.v_lo + pn.v_hi)) / (pn.v_hi - pn.v_lo),
                                -1.0, 1.0);
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t j = pn.cheb.size(); j-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + pn.cheb[j];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + pn.cheb[0];
}

// --------------------------------------------------------------------------
// PropagatorContext
// --------------------------------------------------------------------------

PropagatorContext::PropagatorContext(std::shared_ptr<const EigenBasis> basis, double gamma,
                                     SeriesControl ctl)
    : basis_(std::move(basis)), gamma_(gamma), ctl_(ctl) {
    if (!(gamma_ > 0.0 && gamma_ <= 1.0))
        throw DomainError("PropagatorContext: gamma must be in (0,1]");
    if (!basis_) throw DomainError("PropagatorContext: null basis");
}

void PropagatorContext::prepare_mass_tables(double s_lo, double s_hi) const {
    if (!mass_curves_.empty() && s_lo >= table_lo_ && s_hi <= table_hi_) return;
    table_lo_ = s_lo;
    table_hi_ = s_hi;
    mass_curves_.clear();
    mass_curves_.reserve((std::size_t)basis_->n_modes());
    for (int n = 0; n < basis_->n_modes(); ++n) {
        const double lam = basis_->eigenvalues[(std::size_t)n];
        const double g = gamma_;
        const SeriesControl c = ctl_;
        mass_curves_.emplace_back([g, lam, c](double s) { return kernel_mass(g, lam, s, c); },
                                  s_lo, s_hi, 1e-12);
    }
}

double PropagatorContext::mass(int mode, double s) const {
    if (s <= 0.0) return 0.0;
    if (!mass_curves_.empty() && mass_curves_[(std::size_t)mode].covers(s))
        return mass_curves_[(std::size_t)mode].eval(s);
    return kernel_mass(gamma_, basis_->eigenvalues[(std::size_t)mode], s, ctl_);
}

SpectralField apply_S(const PropagatorContext& ctx, double t, const SpectralField& v) {
    if (v.basis.get() != ctx.basis().get()) throw DomainError("apply_S: basis mismatch");
    if (t < 0.0) throw DomainError("apply_S: t must be >= 0");
    if (t == 0.0) return v;
    SpectralField r = v;
    for (std::size_t n = 0; n < r.coef.size(); ++n) {
        if (r.coef[n] == 0.0) continue;
        r.coef[n] *= s_factor(ctx.gamma(), ctx.basis()->eigenvalues[n], t, ctx.series_control());
    }
    return r;
}

SpectralField apply_P(const PropagatorContext& ctx, double t, const SpectralField& v) {
    if (v.basis.get() != ctx.basis().get()) throw DomainError("apply_P: basis mismatch");
    if (!(t > 0.0)) throw DomainError("apply_P: t must be > 0 (P_gamma is singular at 0)");
    SpectralField r = v;
    for (std::size_t n = 0; n < r.coef.size(); ++n) {
        if (r.coef[n] == 0.0) continue;
        r.coef[n] *= p_factor(ctx.gamma(), ctx.basis()->eigenvalues[n], t, ctx.series_control());
    }
    return r;
}

std::vector<SpectralField> convolve_P(const PropagatorContext& ctx, const GradedTimeGrid& grid,
                                      const std::vector<SpectralField>& forcing) {
    const std::size_t n_nodes = grid.nodes.size();
    if (forcing.size() != n_nodes) throw DomainError("convolve_P: forcing size mismatch");
    const int n_modes = ctx.basis()->n_modes();
    for (const auto& f : forcing)
        if (f.basis.get() != ctx.basis().get()) throw DomainError("convolve_P: basis mismatch");

    double s_min = grid.horizon;
    for (int k = 1; k <= grid.n_steps; ++k) s_min = std::min(s_min, grid.dt(k));
    ctx.prepare_mass_tables(0.5 * s_min, grid.horizon);

    std::vector<SpectralField> out(n_nodes, SpectralField::zeros(forcing.front().basis));
    std::vector<double> favg((std::size_t)grid.n_steps);
    for (int m = 0; m < n_modes; ++m) {
        for (int k = 1; k <= grid.n_steps; ++k)
            favg[(std::size_t)k - 1] = 0.5 * (forcing[(std::size_t)k - 1].coef[(std::size_t)m] +
                                              forcing[(std::size_t)k].coef[(std::size_t)m]);
        for (int j = 1; j <= grid.n_steps; ++j) {
            const double tj = grid.t(j);
            double acc = 0.0;
            double mass_left = ctx.mass(m, tj - grid.t(0));
            for (int k = 1; k <= j; ++k) {
                const double mass_right = k == j ? 0.0 : ctx.mass(m, tj - grid.t(k));
                acc += favg[(std::size_t)k - 1] * (mass_left - mass_right);
                mass_left = mass_right;
            }
            out[(std::size_t)j].coef[(std::size_t)m] = acc;
        }
    }
    return out;
}

}  // namespace subdiff
