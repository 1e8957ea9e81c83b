#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "subdiff/spectral.hpp"
#include "subdiff/time_grid.hpp"

namespace subdiff {

enum class ControlKind {
    interior_identity,   // D = Omega; B z = projection of z
    boundary_injection,  // D = boundary; B z = (0, z) in the Wentzell product space
};

/// Control operator B in L(L^2(D); V_alpha_tilde) with its adjoint.
struct ControlOperator {
    ControlKind kind = ControlKind::interior_identity;
    double alpha_tilde = 0.0;
    std::shared_ptr<const EigenBasis> basis;

    /// Dimension of a control sample (grid nodes or the two boundary points).
    int sample_dim() const;
    /// Quadrature weights of the control domain D.
    std::vector<double> domain_weights() const;
};

/// Time-indexed control values on the control domain D.
struct ControlSignal {
    GradedTimeGrid grid;
    std::vector<std::vector<double>> values;  // [node][control dof]

    static ControlSignal zeros(const GradedTimeGrid& grid, int dim);
    static ControlSignal constant(const GradedTimeGrid& grid, std::vector<double> sample);
    int dim() const { return values.empty() ? 0 : (int)values.front().size(); }
};

ControlSignal operator+(const ControlSignal& a, const ControlSignal& b);
ControlSignal operator-(const ControlSignal& a, const ControlSignal& b);
ControlSignal operator*(double s, const ControlSignal& a);

/// Box bounds plus the t^(rho-1) derivative budget of Z_ad.
struct AdmissibleSet {
    double z_lower = -1.0;
    double z_upper = 1.0;
    double M = 10.0;    // derivative bound scale, > 0
    double rho = 0.75;  // > 1/2
    void validate() const;
};

struct ProjectionReport {
    double clamped_fraction = 0.0;
    int derivative_violations_before = 0;
    int derivative_violations_after = 0;
    bool mollified = false;
    double max_residual_violation = 0.0;  // excess over M t^(rho-1) after the pass
};

/// Tracking cost J = J1 + J2.
struct CostSpec {
    double a1 = 1.0;    // interior tracking weight
    double a2 = 0.0;    // boundary tracking weight
    double zeta = 1e-2; // control regularization
    // targets sampled per time node; empty means zero target
    std::vector<std::vector<double>> z_Q;      // [node][grid node]
    std::vector<std::vector<double>> z_Sigma;  // [node][2]
    void validate() const;
};

/// B z for one time sample.
SpectralField apply_B(const ControlOperator& op, const std::vector<double>& z_sample);

/// B^T w with respect to (.,.)_{L^2(D)} and the mu inner product.
std::vector<double> apply_B_star(const ControlOperator& op, const SpectralField& field);

/// ||z||_{C([0,T];L^2(D))} + sup_j t_j^(1-rho) ||dz/dt(t_j)||_{L^2(D)}.
double zrho_norm(const ControlSignal& z, double rho, const ControlOperator& op);

/// Pointwise clamp into [z_a, z_b]; the derivative constraint is verified and
/// (optionally) repaired by a causal moving average, then re-clamped.
/// Violations are reported, never thrown.
ControlSignal project_admissible(const ControlSignal& z, const AdmissibleSet& set,
                                 const ControlOperator& op, ProjectionReport* report = nullptr,
                                 bool mollify_on_violation = false);

/// J1 + J2 with interval-midpoint time quadrature (the rule that makes the
/// discrete adjoint an exact transpose on uniform grids).
double eval_cost(const std::vector<SpectralField>& traj, const GradedTimeGrid& grid,
                 const ControlSignal& z, const CostSpec& cs, const ControlOperator& op);

/// d_u J1 at one state sample: a1 (u - z_Q) on the interior plus
/// a2 (u|bd - z_Sigma) on the boundary atoms, projected to the basis.
SpectralField cost_state_gradient(const SpectralField& u, std::size_t node, const CostSpec& cs,
                                  const ControlOperator& op);

}  // namespace subdiff
