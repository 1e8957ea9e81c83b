#include "subdiff/nonlinearity.hpp"

#include <cmath>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {

void check_finite(const std::vector<double>& v, const char* who) {
    for (double x : v)
        if (!std::isfinite(x)) throw EvalError(std::string(who) + ": non-finite intermediate", x, 0);
}

// (J * u)(x_i) and (J' * u)(x_i) by grid quadrature
std::vector<double> convolve_kernel(const EigenBasis& b, const std::function<double(double)>& ker,
                                    const std::vector<double>& u) {
    const auto& x = b.grid.nodes;
    const auto& w = b.grid.quad_weights;
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += w[j] * ker(x[i] - x[j]) * u[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace

Nonlinearity Nonlinearity::allen_cahn_make(double c1, double c2) {
    if (!(c2 > c1 && c1 > 0.0)) throw DomainError("allen_cahn: need c2 > c1 > 0");
    Nonlinearity nl;
    nl.kind = NonlinearityKind::allen_cahn;
    nl.c1 = c1;
    nl.c2 = c2;
    return nl;
}

Nonlinearity Nonlinearity::fisher_kpp_make(double r, double K) {
    if (!(r > 0.0 && K > 0.0)) throw DomainError("fisher_kpp: need r, K > 0");
    Nonlinearity nl;
    nl.kind = NonlinearityKind::fisher_kpp;
    nl.r = r;
    nl.K = K;
    return nl;
}

Nonlinearity Nonlinearity::polynomial_make(std::vector<double> coefficients) {
    Nonlinearity nl;
    nl.kind = NonlinearityKind::polynomial;
    nl.coefficients = std::move(coefficients);
    return nl;
}

Nonlinearity Nonlinearity::burgers_make(double amplitude, double width) {
    Nonlinearity nl;
    nl.kind = NonlinearityKind::nonlocal_burgers;
    const double a = amplitude, s2 = width * width;
    nl.J = [a, s2](double x) { return a * std::exp(-0.5 * x * x / s2); };
    nl.J_prime = [a, s2](double x) { return -a * x / s2 * std::exp(-0.5 * x * x / s2); };
    return nl;
}

double Nonlinearity::f_scalar(double u) const {
    switch (kind) {
        case NonlinearityKind::allen_cahn:
            // f = -F' with F = c1 u^4 - c2 u^2
            return -(4.0 * c1 * u * u * u - 2.0 * c2 * u);
        case NonlinearityKind::fisher_kpp:
            return r * u * (1.0 - u / K);
        case NonlinearityKind::polynomial: {
            double p = 0.0;
            for (std::size_t i = coefficients.size(); i-- > 0;) p = p * u + coefficients[i];
            return p * u;
        }
        case NonlinearityKind::nonlocal_burgers:
            throw DomainError("nonlocal kind has no pointwise rule");
    }
    return 0.0;
}

double Nonlinearity::fprime_scalar(double u) const {
    switch (kind) {
        case NonlinearityKind::allen_cahn:
            return -(12.0 * c1 * u * u - 2.0 * c2);
        case NonlinearityKind::fisher_kpp:
            return r * (1.0 - 2.0 * u / K);
        case NonlinearityKind::polynomial: {
            double p = 0.0;
            for (std::size_t i = coefficients.size(); i-- > 0;)
                p = p * u + (double)(i + 1) * coefficients[i];
            return p;
        }
        case NonlinearityKind::nonlocal_burgers:
            throw DomainError("nonlocal kind has no pointwise rule");
    }
    return 0.0;
}

double Nonlinearity::fsecond_scalar(double u) const {
    switch (kind) {
        case NonlinearityKind::allen_cahn:
            return -24.0 * c1 * u;
        case NonlinearityKind::fisher_kpp:
            return -2.0 * r / K;
        case NonlinearityKind::polynomial: {
            double p = 0.0;
            for (std::size_t i = coefficients.size(); i-- > 1;)
                p = p * u + (double)(i + 1) * (double)i * coefficients[i];
            return p;
        }
        case NonlinearityKind::nonlocal_burgers:
            throw DomainError("nonlocal kind has no pointwise rule");
    }
    return 0.0;
}

double Nonlinearity::potential_scalar(double u) const {
    switch (kind) {
        case NonlinearityKind::allen_cahn:
            // F(u) = int f = c2 u^2 - c1 u^4 (negative of the double well)
            return c2 * u * u - c1 * u * u * u * u;
        case NonlinearityKind::fisher_kpp:
            return r * (0.5 * u * u - u * u * u / (3.0 * K));
        case NonlinearityKind::polynomial: {
            double p = 0.0;
            for (std::size_t i = coefficients.size(); i-- > 0;)
                p = p * u + coefficients[i] / (double)(i + 2);
            return p * u * u;
        }
        case NonlinearityKind::nonlocal_burgers:
            throw DomainError("potential unavailable for the nonlocal kind");
    }
    return 0.0;
}

SpectralField eval_f(const Nonlinearity& nl, const SpectralField& u) {
    if (nl.is_zero()) return SpectralField::zeros(u.basis);
    PhysicalValues v = synthesize(u);
    if (nl.pointwise()) {
        for (auto& x : v.interior) x = nl.f_scalar(x);
    } else {
        const auto conv = convolve_kernel(*u.basis, nl.J_prime, v.interior);
        for (std::size_t i = 0; i < v.interior.size(); ++i) v.interior[i] *= -conv[i];
    }
    v.boundary_left = 0.0;  // the reaction acts on the interior component
    v.boundary_right = 0.0;
    check_finite(v.interior, "eval_f");
    return analyze(u.basis, v);
}

SpectralField eval_fprime_apply(const Nonlinearity& nl, const SpectralField& u,
                                const SpectralField& v) {
    if (nl.is_zero()) return SpectralField::zeros(u.basis);
    PhysicalValues uu = synthesize(u);
    PhysicalValues vv = synthesize(v);
    if (nl.pointwise()) {
        for (std::size_t i = 0; i < uu.interior.size(); ++i)
            vv.interior[i] *= nl.fprime_scalar(uu.interior[i]);
    } else {
        // d/du [-u (G*u)] v = -v (G*u) - u (G*v)
        const auto gu = convolve_kernel(*u.basis, nl.J_prime, uu.interior);
        const auto gv = convolve_kernel(*u.basis, nl.J_prime, vv.interior);
        for (std::size_t i = 0; i < uu.interior.size(); ++i)
            vv.interior[i] = -vv.interior[i] * gu[i] - uu.interior[i] * gv[i];
    }
    vv.boundary_left = 0.0;
    vv.boundary_right = 0.0;
    check_finite(vv.interior, "eval_fprime_apply");
    return analyze(u.basis, vv);
}

SpectralField eval_fsecond_apply(const Nonlinearity& nl, const SpectralField& u,
                                 const SpectralField& v, const SpectralField& w) {
    if (nl.is_zero()) return SpectralField::zeros(u.basis);
    PhysicalValues uu = synthesize(u);
    PhysicalValues vv = synthesize(v);
    PhysicalValues ww = synthesize(w);
    if (nl.pointwise()) {
        for (std::size_t i = 0; i < uu.interior.size(); ++i)
            ww.interior[i] = nl.fsecond_scalar(uu.interior[i]) * vv.interior[i] * ww.interior[i];
    } else {
        // b_u(v,w) = -v (G*w) - w (G*v), symmetric
        const auto gv = convolve_kernel(*u.basis, nl.J_prime, vv.interior);
        const auto gw = convolve_kernel(*u.basis, nl.J_prime, ww.interior);
        for (std::size_t i = 0; i < uu.interior.size(); ++i)
            ww.interior[i] = -vv.interior[i] * gw[i] - ww.interior[i] * gv[i];
    }
    ww.boundary_left = 0.0;
    ww.boundary_right = 0.0;
    check_finite(ww.interior, "eval_fsecond_apply");
    return analyze(u.basis, ww);
}

double potential_integral(const Nonlinearity& nl, const SpectralField& u) {
    if (nl.is_zero()) return 0.0;
    const PhysicalValues v = synthesize(u);
    const auto& w = u.basis->grid.quad_weights;
    double acc = 0.0;
    for (std::size_t i = 0; i < v.interior.size(); ++i)
        acc += w[i] * nl.potential_scalar(v.interior[i]);
    return acc;
}

}  // namespace subdiff
