#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace subdiff {

enum class OperatorKind {
    dirichlet_laplacian_1d,
    neumann_laplacian_1d,
    fractional_neumann,
    wentzell_robin_1d,
};

std::string to_string(OperatorKind k);
OperatorKind operator_kind_from_string(const std::string& s);

/// Concrete realization of the abstract diffusion operator on (0, L).
/// `shift` adds a multiple of the identity so 0 is in the resolvent set;
/// Neumann-type kinds require shift > 0.
struct OperatorSpec {
    OperatorKind kind = OperatorKind::dirichlet_laplacian_1d;
    double domain_length = 1.0;
    double shift = 0.0;
    double s = 1.0;            // fractional_neumann order, in (0,1]
    double robin_left = 1.0;   // Wentzell beta(0) >= beta0 > 0
    double robin_right = 1.0;  // Wentzell beta(L)
    int delta = 1;             // Wentzell surface-diffusion flag; inert in 1-D

    void validate() const;
};

/// Uniform grid on [0, L] with interior quadrature weights and boundary
/// atom weights (the measure mu = dx + delta_0 + delta_L for Wentzell).
struct PhysicalGrid {
    std::vector<double> nodes;
    std::vector<double> quad_weights;   // interior measure, sums to L
    double boundary_weight_left = 0.0;  // 0 or 1
    double boundary_weight_right = 0.0;

    static PhysicalGrid uniform_trapezoid(double L, int n_nodes);
    /// Composite-Simpson interior weights plus unit boundary atoms; used by
    /// the Wentzell basis where trapezoid cannot reach the Gram tolerance.
    static PhysicalGrid uniform_simpson_with_atoms(double L, int n_nodes);

    double length() const { return nodes.empty() ? 0.0 : nodes.back(); }
    int n_nodes() const { return (int)nodes.size(); }
};

/// Values of a state on the physical grid; boundary components carry the
/// Wentzell trace pair (equal to the endpoint values for smooth states).
struct PhysicalValues {
    std::vector<double> interior;
    double boundary_left = 0.0;
    double boundary_right = 0.0;
};

/// Eigenpairs (lambda_n, phi_n) of the operator plus their grid samples.
/// Modes are orthonormal in L^2(closure, mu).
struct EigenBasis {
    OperatorSpec spec;
    PhysicalGrid grid;
    std::vector<double> eigenvalues;          // sorted, > 0
    std::vector<std::vector<double>> modes;   // [n][grid node]
    std::vector<double> trace_left;           // phi_n(0)
    std::vector<double> trace_right;          // phi_n(L)

    int n_modes() const { return (int)eigenvalues.size(); }
    bool has_boundary_atoms() const {
        return grid.boundary_weight_left > 0.0 || grid.boundary_weight_right > 0.0;
    }
    /// mu inner product of grid values against mode n.
    double mode_inner(const PhysicalValues& v, int n) const;
};

/// Coefficient vector of a state in an eigenbasis.
struct SpectralField {
    std::shared_ptr<const EigenBasis> basis;
    std::vector<double> coef;

    static SpectralField zeros(std::shared_ptr<const EigenBasis> basis);
    static SpectralField unit(std::shared_ptr<const EigenBasis> basis, int mode,
                              double value = 1.0);

    int size() const { return (int)coef.size(); }
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
void axpy(double a, const SpectralField& x, SpectralField& y);  // y += a x
double dot(const SpectralField& a, const SpectralField& b);     // l2 = mu pairing

/// Build the eigenbasis. Closed forms for Dirichlet/Neumann/fractional
/// Neumann; the Wentzell secular equation is solved by scan-and-bisect.
/// Requires the grid to resolve the highest mode (>= 8 nodes/wavelength).
EigenBasis build_basis(const OperatorSpec& spec, int n_modes, const PhysicalGrid& grid);
std::shared_ptr<const EigenBasis> build_basis_shared(const OperatorSpec& spec, int n_modes,
                                                     const PhysicalGrid& grid);

/// |u|_alpha = (sum lambda_n^alpha c_n^2)^(1/2), alpha in [-2, 2].
double valpha_norm(const SpectralField& field, double alpha);

/// Coefficients scaled by lambda_n^power, |power| <= 2.
SpectralField apply_A_power(const SpectralField& field, double power);

/// u(x_j) = sum c_n phi_n(x_j), plus the boundary trace pair.
PhysicalValues synthesize(const SpectralField& field);

/// c_n = <values, phi_n>_mu by the grid quadrature rule.
SpectralField analyze(const std::shared_ptr<const EigenBasis>& basis,
                      const PhysicalValues& values);

/// Spectral tail indicator lambda_N^(alpha/2) |c_N| for judging truncation.
double tail_indicator(const SpectralField& field, double alpha);

}  // namespace subdiff
