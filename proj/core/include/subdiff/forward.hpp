#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "subdiff/control.hpp"
#include "subdiff/indices.hpp"
#include "subdiff/nonlinearity.hpp"
#include "subdiff/propagators.hpp"
#include "subdiff/spectral.hpp"
#include "subdiff/time_grid.hpp"

namespace subdiff {

struct PicardOptions {
    double tol = 1e-10;
    int max_iter = 60;
};

struct SolveOptions {
    PicardOptions picard;
    double blowup_threshold = 1e8;
    int max_split_depth = 14;
    int threads = 1;
};

/// Discrete mild solution: one state per node of the grid. On blow-up the
/// states stop at the last finite node.
struct Trajectory {
    GradedTimeGrid grid;
    std::vector<SpectralField> states;
    std::optional<int> blowup_node;

    bool completed() const { return !blowup_node.has_value(); }
    double blowup_time() const { return grid.t(*blowup_node); }
};

struct SolveReport {
    std::vector<int> picard_iterations;
    double max_valpha_norm = 0.0;
    double ynorm_seminorm = 0.0;  // sup t^(1-theta) |du/dt|_alpha
    bool blowup = false;
    int blowup_node = -1;
    int substep_intervals = 0;  // intervals added by local step halving
};

// Shared time-marching core -------------------------------------------------

/// State-dependent part of the right-hand side, iterated by Picard.
using StateForcing = std::function<SpectralField(double t, const SpectralField& u)>;
/// Known data part (B z etc.), evaluated once per time.
using DataForcing = std::function<SpectralField(double t)>;

struct MarchResult {
    std::vector<SpectralField> states;
    std::optional<int> blowup_node;
    std::vector<int> picard_iterations;
    int substep_intervals = 0;
};

/// March the Volterra fixed point u(t) = S(t) u0 + int P(t-s)[F_state + F_data] ds
/// over the nodes with per-step Picard iteration; steps whose observed
/// contraction factor exceeds 1/2 are halved locally (the interval records
/// keep the refined forcing for later history sums).
MarchResult march_mild(const PropagatorContext& ctx, std::span<const double> nodes,
                       const SpectralField& u0, bool include_initial_term,
                       const StateForcing& f_state, const DataForcing& f_data,
                       double alpha_norm, const SolveOptions& opts);

// Forward solver -------------------------------------------------------------

std::pair<Trajectory, SolveReport> solve_forward(const std::shared_ptr<const EigenBasis>& basis,
                                                 const ProblemIndices& idx,
                                                 const Nonlinearity& nl, const ControlOperator& B,
                                                 const ControlSignal& z, const SpectralField& u0,
                                                 const GradedTimeGrid& grid,
                                                 const SolveOptions& opts = {});

/// Residual of the discrete mild-solution identity at every node (the
/// converged trajectory substituted back into the Duhamel formula).
std::vector<double> mild_residual(const std::shared_ptr<const EigenBasis>& basis,
                                  const ProblemIndices& idx, const Nonlinearity& nl,
                                  const ControlOperator& B, const ControlSignal& z,
                                  const SpectralField& u0, const Trajectory& traj);

/// sup over interior nodes of t^(1-theta) |finite-difference du/dt|_alpha.
double ynorm_seminorm(const Trajectory& traj, const ProblemIndices& idx);

/// E_gamma(t_j) = C_T + |u|_1^2 - 2 (F(u),1) - 2 (B z, u), per node.
ScalarTrajectory energy_functional(const Trajectory& traj, const Nonlinearity& nl,
                                   const ControlOperator& B, const ControlSignal& z, double C_T);

}  // namespace subdiff
