#include "subdiff/forward.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {

// Resolved interval with its frozen midpoint forcing (modal coefficients).
struct IntervalRecord {
    double a, b;
    std::vector<double> fbar;
};

struct Marcher {
    const PropagatorContext& ctx;
    const StateForcing& f_state;
    const DataForcing& f_data;
    const SpectralField& u0;
    bool with_S;
    double alpha;
    const SolveOptions& opts;

    std::vector<IntervalRecord> records;
    int substeps = 0;
    int picard_total_current = 0;
    bool blew_up = false;

    int n_modes() const { return ctx.basis()->n_modes(); }

    SpectralField base_state(double t) const {
        if (!with_S) return SpectralField::zeros(u0.basis);
        return apply_S(ctx, t, u0);
    }

    // history contribution at target time t over all resolved intervals
    // (every record ends at or before the current interval's left endpoint)
    SpectralField history(double t) const {
        SpectralField h = SpectralField::zeros(u0.basis);
        const int nm = n_modes();
        for (const auto& rec : records) {
            for (int m = 0; m < nm; ++m) {
                const double mass = ctx.mass(m, t - rec.a) - ctx.mass(m, t - rec.b);
                h.coef[(std::size_t)m] += mass * rec.fbar[(std::size_t)m];
            }
        }
        return h;
    }

    SpectralField full_forcing(double t, const SpectralField& u) const {
        SpectralField f = f_state(t, u);
        if (f_data) {
            const SpectralField d = f_data(t);
            axpy(1.0, d, f);
        }
        return f;
    }

    // advance over [a, b] from u_a; returns the state at b or nullopt on blow-up
    std::optional<SpectralField> step(double a, double b, const SpectralField& u_a, int depth) {
        const SpectralField f_left = full_forcing(a, u_a);
        SpectralField base = base_state(b);
        const SpectralField hist = history(b);
        SpectralField u = u_a;                  // initial iterate
        const int nm = n_modes();
        std::vector<double> w((std::size_t)nm);
        for (int m = 0; m < nm; ++m) w[(std::size_t)m] = ctx.mass(m, b - a);

        double prev_diff = -1.0;
        bool converged = false, want_split = false;
        SpectralField f_right = f_left;
        for (int it = 0; it < opts.picard.max_iter; ++it) {
            ++picard_total_current;
            f_right = full_forcing(b, u);
            SpectralField next = base;
            for (int m = 0; m < nm; ++m)
                next.coef[(std::size_t)m] +=
                    hist.coef[(std::size_t)m] +
                    w[(std::size_t)m] * 0.5 *
                        (f_left.coef[(std::size_t)m] + f_right.coef[(std::size_t)m]);
            const double nrm = valpha_norm(next, alpha);
            if (!std::isfinite(nrm) || nrm > opts.blowup_threshold) {
                blew_up = true;
                return std::nullopt;
            }
            const double diff = valpha_norm(next - u, alpha);
            u = std::move(next);
            if (diff <= opts.picard.tol * std::max(1.0, nrm)) {
                converged = true;
                break;
            }
            if (prev_diff > 0.0 && diff > 0.5 * prev_diff && it >= 2) {
                want_split = true;  // observed contraction factor above 1/2
                break;
            }
            prev_diff = diff;
        }
        if (converged) {
            f_right = full_forcing(b, u);
            IntervalRecord rec{a, b, std::vector<double>((std::size_t)nm)};
            for (int m = 0; m < nm; ++m)
                rec.fbar[(std::size_t)m] =
                    0.5 * (f_left.coef[(std::size_t)m] + f_right.coef[(std::size_t)m]);
            records.push_back(std::move(rec));
            return u;
        }
        if (!want_split && depth >= opts.max_split_depth) {
            std::ostringstream os;
            os << "solve: Picard iteration failed to contract on [" << a << ", " << b
               << "] after max step halvings";
            throw SolverError(os.str());
        }
        if (depth >= opts.max_split_depth) {
            std::ostringstream os;
            os << "solve: step halving exhausted at depth " << depth << " on [" << a << ", " << b
               << "]";
            throw SolverError(os.str());
        }
        const double mid = 0.5 * (a + b);
        ++substeps;
        auto um = step(a, mid, u_a, depth + 1);
        if (!um) return std::nullopt;
        return step(mid, b, *um, depth + 1);
    }
};

}  // namespace

MarchResult march_mild(const PropagatorContext& ctx, std::span<const double> nodes,
                       const SpectralField& u0, bool include_initial_term,
                       const StateForcing& f_state, const DataForcing& f_data,
                       double alpha_norm, const SolveOptions& opts) {
    if (nodes.size() < 2) throw DomainError("march_mild: need >= 2 nodes");
    double s_min = nodes.back();
    for (std::size_t j = 1; j < nodes.size(); ++j) s_min = std::min(s_min, nodes[j] - nodes[j - 1]);
    ctx.prepare_mass_tables(0.5 * s_min, nodes.back());

    Marcher m{ctx, f_state, f_data, u0, include_initial_term, alpha_norm, opts, {}, 0, 0, false};
    m.records.reserve(nodes.size());

    MarchResult out;
    out.states.reserve(nodes.size());
    out.states.push_back(u0);
    out.picard_iterations.assign(nodes.size(), 0);

    SpectralField u = u0;
    for (std::size_t j = 1; j < nodes.size(); ++j) {
        m.picard_total_current = 0;
        auto next = m.step(nodes[j - 1], nodes[j], u, 0);
        out.picard_iterations[j] = m.picard_total_current;
        if (!next) {
            out.blowup_node = (int)j;
            break;
        }
        u = *next;
        out.states.push_back(u);
    }
    out.substep_intervals = m.substeps;
    return out;
}

std::pair<Trajectory, SolveReport> solve_forward(const std::shared_ptr<const EigenBasis>& basis,
                                                 const ProblemIndices& idx,
                                                 const Nonlinearity& nl, const ControlOperator& B,
                                                 const ControlSignal& z, const SpectralField& u0,
                                                 const GradedTimeGrid& grid,
                                                 const SolveOptions& opts) {
    idx.validate();
    if (u0.basis.get() != basis.get()) throw DomainError("solve_forward: u0 basis mismatch");
    for (double c : u0.coef)
        if (!std::isfinite(c)) throw DomainError("solve_forward: u0 not finite");
    if (!z.grid.same_as(grid)) throw DomainError("solve_forward: control grid mismatch");

    PropagatorContext ctx(basis, idx.gamma);

    // B z at nodes precomputed; substep times interpolate z linearly.
    std::vector<SpectralField> bz;
    bool have_data = false;
    bz.reserve(z.values.size());
    for (const auto& sample : z.values) {
        bz.push_back(apply_B(B, sample));
        for (double c : bz.back().coef) have_data = have_data || c != 0.0;
    }
    const auto& t = grid.nodes;
    DataForcing f_data;
    if (have_data) {
        f_data = [&t, &bz, basis](double tt) {
            auto it = std::upper_bound(t.begin(), t.end(), tt);
            std::size_t k = (std::size_t)std::clamp<std::ptrdiff_t>(it - t.begin(), 1,
                                                                    (std::ptrdiff_t)t.size() - 1);
            const double w = (tt - t[k - 1]) / (t[k] - t[k - 1]);
            SpectralField f = SpectralField::zeros(basis);
            for (std::size_t m = 0; m < f.coef.size(); ++m)
                f.coef[m] = (1.0 - w) * bz[k - 1].coef[m] + w * bz[k].coef[m];
            return f;
        };
    }
    StateForcing f_state = [&nl](double, const SpectralField& u) { return eval_f(nl, u); };

    MarchResult mr = march_mild(ctx, grid.nodes, u0, true, f_state, f_data, idx.alpha, opts);

    Trajectory traj{grid, std::move(mr.states), mr.blowup_node};
    SolveReport rep;
    rep.picard_iterations = std::move(mr.picard_iterations);
    rep.substep_intervals = mr.substep_intervals;
    rep.blowup = mr.blowup_node.has_value();
    rep.blowup_node = mr.blowup_node.value_or(-1);
    for (const auto& s : traj.states)
        rep.max_valpha_norm = std::max(rep.max_valpha_norm, valpha_norm(s, idx.alpha));
    if (traj.completed() && traj.states.size() >= 3) rep.ynorm_seminorm = ynorm_seminorm(traj, idx);
    return {std::move(traj), std::move(rep)};
}

std::vector<double> mild_residual(const std::shared_ptr<const EigenBasis>& basis,
                                  const ProblemIndices& idx, const Nonlinearity& nl,
                                  const ControlOperator& B, const ControlSignal& z,
                                  const SpectralField& u0, const Trajectory& traj) {
    PropagatorContext ctx(basis, idx.gamma);
    const auto& grid = traj.grid;
    std::vector<SpectralField> forcing;
    forcing.reserve(traj.states.size());
    for (std::size_t j = 0; j < traj.states.size(); ++j) {
        SpectralField f = eval_f(nl, traj.states[j]);
        axpy(1.0, apply_B(B, z.values[j]), f);
        forcing.push_back(std::move(f));
    }
    const auto conv = convolve_P(ctx, grid, forcing);
    std::vector<double> res(traj.states.size(), 0.0);
    for (std::size_t j = 1; j < traj.states.size(); ++j) {
        SpectralField rhs = apply_S(ctx, grid.t((int)j), u0);
        axpy(1.0, conv[j], rhs);
        res[j] = valpha_norm(traj.states[j] - rhs, idx.alpha);
    }
    return res;
}

double ynorm_seminorm(const Trajectory& traj, const ProblemIndices& idx) {
    if (traj.states.size() < 3) throw DomainError("ynorm_seminorm: need >= 3 nodes");
    const double theta = idx.theta();
    const auto& t = traj.grid.nodes;
    double sup = 0.0;
    for (std::size_t j = 1; j + 1 < traj.states.size(); ++j) {
        const SpectralField d = traj.states[j + 1] - traj.states[j - 1];
        const double der = valpha_norm(d, idx.alpha) / (t[j + 1] - t[j - 1]);
        sup = std::max(sup, std::pow(t[j], 1.0 - theta) * der);
    }
    return sup;
}

ScalarTrajectory energy_functional(const Trajectory& traj, const Nonlinearity& nl,
                                   const ControlOperator& B, const ControlSignal& z, double C_T) {
    ScalarTrajectory e = ScalarTrajectory::zeros(traj.grid);
    for (std::size_t j = 0; j < traj.states.size(); ++j) {
        const auto& u = traj.states[j];
        double v = C_T;
        const double n1 = valpha_norm(u, 1.0);
        v += n1 * n1;
        v -= 2.0 * potential_integral(nl, u);
        const SpectralField bz = apply_B(B, z.values[j]);
        v -= 2.0 * dot(bz, u);
        e.values[j] = v;
    }
    return e;
}

}  // namespace subdiff
