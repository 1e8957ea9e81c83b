#include "subdiff/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_same_basis(const SpectralField& a, const SpectralField& b) {
    if (a.basis.get() != b.basis.get() || a.coef.size() != b.coef.size())
        throw DomainError("SpectralField: basis mismatch");
}

// Wentzell secular function in k (lambda = k^2 before shift):
//   -k^2 sin(kL) + k cos(kL)(b0 + bL - 2k^2) - (k^2 - bL)(b0 - k^2) sin(kL)
double wentzell_secular(double k, double L, double b0, double bL) {
    const double skl = std::sin(k * L), ckl = std::cos(k * L);
    return -k * k * skl + k * ckl * (b0 + bL - 2.0 * k * k) -
           (k * k - bL) * (b0 - k * k) * skl;
}

struct WentzellMode {
    double k;
    double A, B;  // u = A cos(kx) + B sin(kx)
};

// mu-norm^2 of A cos(kx) + B sin(kx): analytic interior integral plus atoms.
double wentzell_mu_norm_sq(const WentzellMode& m, double L) {
    const double k = m.k, A = m.A, B = m.B;
    const double s2 = std::sin(2.0 * k * L), c2 = std::cos(2.0 * k * L);
    const double intAA = 0.5 * L + s2 / (4.0 * k);
    const double intBB = 0.5 * L - s2 / (4.0 * k);
    const double intAB = (1.0 - c2) / (2.0 * k);
    const double u0 = A;
    const double uL = A * std::cos(k * L) + B * std::sin(k * L);
    return A * A * intAA + B * B * intBB + A * B * intAB + u0 * u0 + uL * uL;
}

std::vector<WentzellMode> solve_wentzell_modes(const OperatorSpec& spec, int n_modes) {
    const double L = spec.domain_length;
    const double b0 = spec.robin_left, bL = spec.robin_right;
    auto G = [&](double k) { return wentzell_secular(k, L, b0, bL); };

    std::vector<WentzellMode> out;
    const double dk = kPi / (L * 64.0);
    double k_prev = dk * 1e-3;
    double g_prev = G(k_prev);
    double k = dk;
    const double k_cap = (n_modes + 8) * kPi / L + std::sqrt(std::max(b0, bL)) + 10.0;
    while ((int)out.size() < n_modes && k < k_cap) {
        const double g = G(k);
        if (g_prev == 0.0) {
            out.push_back({k_prev, 1.0, 0.0});
        } else if (g * g_prev < 0.0) {
            double lo = k_prev, hi = k;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (G(mid) * G(lo) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
                if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
            }
            const double kr = 0.5 * (lo + hi);
            WentzellMode m{kr, 1.0, (b0 - kr * kr) / kr};
            const double nrm = std::sqrt(wentzell_mu_norm_sq(m, L));
            m.A /= nrm;
            m.B /= nrm;
            out.push_back(m);
        }
        k_prev = k;
        g_prev = g;
        k += dk;
    }
    if ((int)out.size() < n_modes) {
        std::ostringstream os;
        os << "build_basis: Wentzell root bracketing failed at mode index " << out.size()
           << " (found " << out.size() << " of " << n_modes << " below k=" << k_cap << ")";
        throw ConstructionError(os.str());
    }
    return out;
}

}  // namespace

std::string to_string(OperatorKind k) {
    switch (k) {
        case OperatorKind::dirichlet_laplacian_1d: return "dirichlet_laplacian_1d";
        case OperatorKind::neumann_laplacian_1d: return "neumann_laplacian_1d";
        case OperatorKind::fractional_neumann: return "fractional_neumann";
        case OperatorKind::wentzell_robin_1d: return "wentzell_robin_1d";
    }
    return "unknown";
}

OperatorKind operator_kind_from_string(const std::string& s) {
    if (s == "dirichlet_laplacian_1d") return OperatorKind::dirichlet_laplacian_1d;
    if (s == "neumann_laplacian_1d") return OperatorKind::neumann_laplacian_1d;
    if (s == "fractional_neumann") return OperatorKind::fractional_neumann;
    if (s == "wentzell_robin_1d") return OperatorKind::wentzell_robin_1d;
    throw DomainError("unknown operator kind: " + s);
}

void OperatorSpec::validate() const {
    if (!(domain_length > 0.0)) throw DomainError("operator: domain_length must be > 0");
    if (!(shift >= 0.0)) throw DomainError("operator: shift must be >= 0");
    if (kind == OperatorKind::neumann_laplacian_1d || kind == OperatorKind::fractional_neumann) {
        if (!(shift > 0.0))
            throw DomainError("operator: Neumann kinds need shift > 0 (0 must lie in rho(A))");
    }
    if (kind == OperatorKind::fractional_neumann && !(s > 0.0 && s <= 1.0))
        throw DomainError("operator: fractional order s must be in (0,1]");
    if (kind == OperatorKind::wentzell_robin_1d) {
        if (!(robin_left > 0.0 && robin_right > 0.0))
            throw DomainError("operator: Robin coefficients must be >= beta0 > 0");
        if (delta != 0 && delta != 1) throw DomainError("operator: delta must be 0 or 1");
    }
}

PhysicalGrid PhysicalGrid::uniform_trapezoid(double L, int n_nodes) {
    if (!(L > 0.0) || n_nodes < 3) throw DomainError("PhysicalGrid: need L > 0, n_nodes >= 3");
    PhysicalGrid g;
    g.nodes.resize((std::size_t)n_nodes);
    g.quad_weights.assign((std::size_t)n_nodes, 0.0);
    const double h = L / (n_nodes - 1);
    for (int i = 0; i < n_nodes; ++i) {
        g.nodes[(std::size_t)i] = i * h;
        g.quad_weights[(std::size_t)i] = (i == 0 || i == n_nodes - 1) ? 0.5 * h : h;
    }
    g.nodes.back() = L;
    return g;
}

PhysicalGrid PhysicalGrid::uniform_simpson_with_atoms(double L, int n_nodes) {
    if (!(L > 0.0) || n_nodes < 3) throw DomainError("PhysicalGrid: need L > 0, n_nodes >= 3");
    if (n_nodes % 2 == 0) ++n_nodes;  // Simpson needs an even interval count
    PhysicalGrid g;
    g.nodes.resize((std::size_t)n_nodes);
    g.quad_weights.assign((std::size_t)n_nodes, 0.0);
    const double h = L / (n_nodes - 1);
    for (int i = 0; i < n_nodes; ++i) {
        g.nodes[(std::size_t)i] = i * h;
        double w;
        if (i == 0 || i == n_nodes - 1)
            w = h / 3.0;
        else if (i % 2 == 1)
            w = 4.0 * h / 3.0;
        else
            w = 2.0 * h / 3.0;
        g.quad_weights[(std::size_t)i] = w;
    }
    g.nodes.back() = L;
    g.boundary_weight_left = 1.0;
    g.boundary_weight_right = 1.0;
    return g;
}

double EigenBasis::mode_inner(const PhysicalValues& v, int n) const {
    const auto& phi = modes[(std::size_t)n];
    double s = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) s += grid.quad_weights[i] * phi[i] * v.interior[i];
    s += grid.boundary_weight_left * trace_left[(std::size_t)n] * v.boundary_left;
    s += grid.boundary_weight_right * trace_right[(std::size_t)n] * v.boundary_right;
    return s;
}

SpectralField SpectralField::zeros(std::shared_ptr<const EigenBasis> basis) {
    SpectralField f;
    f.coef.assign((std::size_t)basis->n_modes(), 0.0);
    f.basis = std::move(basis);
    return f;
}

SpectralField SpectralField::unit(std::shared_ptr<const EigenBasis> basis, int mode,
                                  double value) {
    SpectralField f = zeros(std::move(basis));
    f.coef.at((std::size_t)mode) = value;
    return f;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    check_same_basis(a, b);
    SpectralField r = a;
    for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] += b.coef[i];
    return r;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    check_same_basis(a, b);
    SpectralField r = a;
    for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] -= b.coef[i];
    return r;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField r = a;
    for (auto& c : r.coef) c *= s;
    return r;
}

void axpy(double a, const SpectralField& x, SpectralField& y) {
    check_same_basis(x, y);
    for (std::size_t i = 0; i < y.coef.size(); ++i) y.coef[i] += a * x.coef[i];
}

double dot(const SpectralField& a, const SpectralField& b) {
    check_same_basis(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.coef.size(); ++i) s += a.coef[i] * b.coef[i];
    return s;
}

EigenBasis build_basis(const OperatorSpec& spec, int n_modes, const PhysicalGrid& grid) {
    spec.validate();
    if (n_modes < 1) throw DomainError("build_basis: n_modes must be >= 1");
    const double L = spec.domain_length;
    if (std::abs(grid.length() - L) > 1e-12 * std::max(1.0, L))
        throw ConstructionError("build_basis: grid length does not match the operator domain");

    EigenBasis basis;
    basis.spec = spec;
    basis.grid = grid;
    basis.eigenvalues.reserve((std::size_t)n_modes);
    basis.modes.reserve((std::size_t)n_modes);
    basis.trace_left.assign((std::size_t)n_modes, 0.0);
    basis.trace_right.assign((std::size_t)n_modes, 0.0);

    const int M = grid.n_nodes();
    auto sample = [&](auto&& f) {
        std::vector<double> v((std::size_t)M);
        for (int i = 0; i < M; ++i) v[(std::size_t)i] = f(grid.nodes[(std::size_t)i]);
        return v;
    };

    double k_max = 0.0;
    switch (spec.kind) {
        case OperatorKind::dirichlet_laplacian_1d: {
            const double amp = std::sqrt(2.0 / L);
            for (int n = 1; n <= n_modes; ++n) {
                const double k = n * kPi / L;
                k_max = k;
                basis.eigenvalues.push_back(spec.shift + k * k);
                basis.modes.push_back(sample([&](double x) { return amp * std::sin(k * x); }));
                basis.trace_left[(std::size_t)n - 1] = 0.0;
                basis.trace_right[(std::size_t)n - 1] = 0.0;
            }
            break;
        }
        case OperatorKind::neumann_laplacian_1d:
        case OperatorKind::fractional_neumann: {
            for (int n = 0; n < n_modes; ++n) {
                const double k = n * kPi / L;
                k_max = k;
                const double lam0 = spec.shift + k * k;
                const double lam = spec.kind == OperatorKind::fractional_neumann
                                       ? std::pow(lam0, spec.s)
                                       : lam0;
                const double amp = n == 0 ? std::sqrt(1.0 / L) : std::sqrt(2.0 / L);
                basis.eigenvalues.push_back(lam);
                basis.modes.push_back(sample([&](double x) { return amp * std::cos(k * x); }));
                basis.trace_left[(std::size_t)n] = amp;
                basis.trace_right[(std::size_t)n] = amp * std::cos(k * L);
            }
            break;
        }
        case OperatorKind::wentzell_robin_1d: {
            if (!(grid.boundary_weight_left > 0.0 && grid.boundary_weight_right > 0.0))
                throw ConstructionError(
                    "build_basis: Wentzell basis needs a grid with boundary atoms");
            const auto roots = solve_wentzell_modes(spec, n_modes);
            for (int n = 0; n < n_modes; ++n) {
                const auto& m = roots[(std::size_t)n];
                k_max = m.k;
                basis.eigenvalues.push_back(spec.shift + m.k * m.k);
                basis.modes.push_back(sample(
                    [&](double x) { return m.A * std::cos(m.k * x) + m.B * std::sin(m.k * x); }));
                basis.trace_left[(std::size_t)n] = m.A;
                basis.trace_right[(std::size_t)n] =
                    m.A * std::cos(m.k * L) + m.B * std::sin(m.k * L);
            }
            break;
        }
    }

    // >= 8 nodes per wavelength of the highest mode
    if (k_max > 0.0) {
        const double nodes_per_wavelength = (2.0 * kPi / k_max) / (L / (M - 1));
        if (nodes_per_wavelength < 8.0 - 1e-9) {
            std::ostringstream os;
            os << "build_basis: grid too coarse for mode with wavenumber " << k_max << " ("
               << nodes_per_wavelength << " nodes/wavelength, need >= 8)";
            throw ConstructionError(os.str());
        }
    }

    for (std::size_t n = 1; n < basis.eigenvalues.size(); ++n) {
        if (basis.eigenvalues[n] < basis.eigenvalues[n - 1])
            throw ConstructionError("build_basis: eigenvalues not sorted");
    }
    if (!(basis.eigenvalues.front() > 0.0))
        throw ConstructionError("build_basis: operator not strictly positive; adjust shift");
    return basis;
}

std::shared_ptr<const EigenBasis> build_basis_shared(const OperatorSpec& spec, int n_modes,
                                                     const PhysicalGrid& grid) {
    return std::make_shared<const EigenBasis>(build_basis(spec, n_modes, grid));
}

double valpha_norm(const SpectralField& field, double alpha) {
    if (!(alpha >= -2.0 && alpha <= 2.0)) throw DomainError("valpha_norm: alpha in [-2,2]");
    const auto& lam = field.basis->eigenvalues;
    double s = 0.0;
    for (std::size_t n = 0; n < field.coef.size(); ++n)
        s += std::pow(lam[n], alpha) * field.coef[n] * field.coef[n];
    return std::sqrt(s);
}

SpectralField apply_A_power(const SpectralField& field, double power) {
    if (!(power >= -2.0 && power <= 2.0)) throw DomainError("apply_A_power: |power| <= 2");
    SpectralField r = field;
    const auto& lam = field.basis->eigenvalues;
    for (std::size_t n = 0; n < r.coef.size(); ++n) r.coef[n] *= std::pow(lam[n], power);
    return r;
}

PhysicalValues synthesize(const SpectralField& field) {
    const EigenBasis& b = *field.basis;
    PhysicalValues v;
    v.interior.assign((std::size_t)b.grid.n_nodes(), 0.0);
    for (std::size_t n = 0; n < field.coef.size(); ++n) {
        const double c = field.coef[n];
        if (c == 0.0) continue;
        const auto& phi = b.modes[n];
        for (std::size_t i = 0; i < v.interior.size(); ++i) v.interior[i] += c * phi[i];
        v.boundary_left += c * b.trace_left[n];
        v.boundary_right += c * b.trace_right[n];
    }
    return v;
}

SpectralField analyze(const std::shared_ptr<const EigenBasis>& basis,
                      const PhysicalValues& values) {
    if ((int)values.interior.size() != basis->grid.n_nodes())
        throw DomainError("analyze: value dimension does not match the basis grid");
    SpectralField f = SpectralField::zeros(basis);
    for (int n = 0; n < basis->n_modes(); ++n) f.coef[(std::size_t)n] = basis->mode_inner(values, n);
    return f;
}

double tail_indicator(const SpectralField& field, double alpha) {
    if (field.coef.empty()) return 0.0;
    const std::size_t last = field.coef.size() - 1;
    return std::pow(field.basis->eigenvalues[last], 0.5 * alpha) * std::abs(field.coef[last]);
}

}  // namespace subdiff
