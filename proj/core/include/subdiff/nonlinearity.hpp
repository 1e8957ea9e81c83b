#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subdiff/spectral.hpp"

namespace subdiff {

enum class NonlinearityKind {
    allen_cahn,      // f = -F', F = c1 u^4 - c2 u^2, c2 > c1 > 0
    fisher_kpp,      // f = r u (1 - u/K)
    nonlocal_burgers,  // f = -u div(J * u)
    polynomial,      // f = sum_i c_i u^i (no constant term; f(0) = 0)
};

/// Pointwise (or convolution) reaction term with derivatives and potential.
/// All built-in kinds satisfy f(0) = 0.
struct Nonlinearity {
    NonlinearityKind kind = NonlinearityKind::polynomial;
    double c1 = 1.0, c2 = 2.0;              // allen_cahn
    double r = 1.0, K = 1.0;                // fisher_kpp
    std::vector<double> coefficients;       // polynomial, index i -> u^(i+1)
    // nonlocal_burgers kernel J and its derivative; defaults to a Gaussian bump
    std::function<double(double)> J;
    std::function<double(double)> J_prime;

    static Nonlinearity allen_cahn_make(double c1, double c2);
    static Nonlinearity fisher_kpp_make(double r, double K);
    static Nonlinearity polynomial_make(std::vector<double> coefficients);
    static Nonlinearity burgers_make(double amplitude = 1.0, double width = 0.25);
    static Nonlinearity zero() { return polynomial_make({}); }

    bool is_zero() const {
        return kind == NonlinearityKind::polynomial && coefficients.empty();
    }
    bool pointwise() const { return kind != NonlinearityKind::nonlocal_burgers; }

    double f_scalar(double u) const;
    double fprime_scalar(double u) const;
    double fsecond_scalar(double u) const;
    double potential_scalar(double u) const;  // F(u) = int_0^u f
};

/// f(u): synthesize, apply the pointwise/convolution rule, analyze back.
/// On Wentzell bases the reaction acts on the interior component only.
SpectralField eval_f(const Nonlinearity& nl, const SpectralField& u);

/// g_u(v) = f'(u) v.
SpectralField eval_fprime_apply(const Nonlinearity& nl, const SpectralField& u,
                                const SpectralField& v);

/// b_u(v,w) = f''(u) v w.
SpectralField eval_fsecond_apply(const Nonlinearity& nl, const SpectralField& u,
                                 const SpectralField& v, const SpectralField& w);

/// int F(u) dx over the interior (quadrature of the potential).
double potential_integral(const Nonlinearity& nl, const SpectralField& u);

}  // namespace subdiff
