#pragma once

#include <span>
#include <vector>

#include "subdiff/spectral.hpp"
#include "subdiff/time_grid.hpp"

namespace subdiff {

enum class Direction { left, right };

/// L1 product-integration Caputo derivative (g_{1-gamma} * u')(t_j), exact
/// for piecewise-linear u. Value at t_0 is 0.
ScalarTrajectory caputo_l1(const ScalarTrajectory& traj, double gamma);

/// Riemann-Liouville fractional integral of the given order and direction,
/// product integration exact for piecewise-linear u.
ScalarTrajectory rl_integral(const ScalarTrajectory& traj, double order, Direction dir);

/// Right RL derivative via time reversal: reverse, apply the left
/// generalized-Caputo machinery, reverse back (the -d/dt = d/dtbar identity).
/// The node at t = T uses the zero-kernel convention and is not meaningful.
ScalarTrajectory right_rl_derivative(const ScalarTrajectory& traj, double gamma);

/// | int v C-d^g u dt - int (d_{t,T}^g v) u dt - [I_{t,T}^{1-g} v u]_0^T |
/// by trapezoid quadrature over the shared grid.
double ibp_residual(const ScalarTrajectory& u, const ScalarTrajectory& v, double gamma);

/// Trapezoid value of int_0^T (d_t^gamma u, d_t u) dt, computed mode-by-mode
/// with the L1 Caputo derivative and finite differences. Nonnegative up to
/// discretization (Hardy-Littlewood).
double coercivity_value(const std::vector<SpectralField>& traj, const GradedTimeGrid& grid,
                        double gamma);

// Node-array core (shared by the trajectory wrappers and the solvers).
namespace detail {
std::vector<double> caputo_l1_nodes(std::span<const double> t, std::span<const double> u,
                                    double gamma);
std::vector<double> rl_integral_left_nodes(std::span<const double> t, std::span<const double> u,
                                           double order);
}  // namespace detail

}  // namespace subdiff
