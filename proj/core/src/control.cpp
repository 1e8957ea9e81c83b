#include "subdiff/control.hpp"

#include <algorithm>
#include <cmath>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {

void check_dims(const ControlOperator& op, const std::vector<double>& z) {
    if ((int)z.size() != op.sample_dim())
        throw DomainError("control: sample dimension does not match the operator domain");
}

double weighted_norm_sq(const std::vector<double>& w, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i] * v[i];
    return s;
}

}  // namespace

int ControlOperator::sample_dim() const {
    return kind == ControlKind::interior_identity ? basis->grid.n_nodes() : 2;
}

std::vector<double> ControlOperator::domain_weights() const {
    if (kind == ControlKind::interior_identity) return basis->grid.quad_weights;
    return {1.0, 1.0};  // boundary counting measure
}

ControlSignal ControlSignal::zeros(const GradedTimeGrid& grid, int dim) {
    ControlSignal z;
    z.grid = grid;
    z.values.assign(grid.nodes.size(), std::vector<double>((std::size_t)dim, 0.0));
    return z;
}

ControlSignal ControlSignal::constant(const GradedTimeGrid& grid, std::vector<double> sample) {
    ControlSignal z;
    z.grid = grid;
    z.values.assign(grid.nodes.size(), std::move(sample));
    return z;
}

ControlSignal operator+(const ControlSignal& a, const ControlSignal& b) {
    ControlSignal r = a;
    for (std::size_t j = 0; j < r.values.size(); ++j)
        for (std::size_t i = 0; i < r.values[j].size(); ++i) r.values[j][i] += b.values[j][i];
    return r;
}

ControlSignal operator-(const ControlSignal& a, const ControlSignal& b) {
    ControlSignal r = a;
    for (std::size_t j = 0; j < r.values.size(); ++j)
        for (std::size_t i = 0; i < r.values[j].size(); ++i) r.values[j][i] -= b.values[j][i];
    return r;
}

ControlSignal operator*(double s, const ControlSignal& a) {
    ControlSignal r = a;
    for (auto& row : r.values)
        for (auto& x : row) x *= s;
    return r;
}

void AdmissibleSet::validate() const {
    if (!(z_lower <= z_upper)) throw ConfigError("admissible.z_lower", "must satisfy z_a <= z_b");
    if (!(M > 0.0)) throw ConfigError("admissible.M", "must be > 0");
    if (!(rho > 0.5)) throw ConfigError("admissible.rho", "admissible set requires M>0, rho>1/2");
}

void CostSpec::validate() const {
    if (!(a1 >= 0.0) || !(a2 >= 0.0) || a1 + a2 <= 0.0)
        throw ConfigError("cost.a1", "need a1, a2 >= 0 and a1 + a2 > 0");
    if (!(zeta >= 0.0)) throw ConfigError("cost.zeta", "must be >= 0");
}

SpectralField apply_B(const ControlOperator& op, const std::vector<double>& z_sample) {
    check_dims(op, z_sample);
    PhysicalValues v;
    if (op.kind == ControlKind::interior_identity) {
        v.interior = z_sample;
    } else {
        if (!op.basis->has_boundary_atoms())
            throw DomainError("apply_B: boundary injection needs a basis with boundary atoms");
        v.interior.assign((std::size_t)op.basis->grid.n_nodes(), 0.0);
        v.boundary_left = z_sample[0];
        v.boundary_right = z_sample[1];
    }
    return analyze(op.basis, v);
}

std::vector<double> apply_B_star(const ControlOperator& op, const SpectralField& field) {
    if (field.basis.get() != op.basis.get()) throw DomainError("apply_B_star: basis mismatch");
    const PhysicalValues v = synthesize(field);
    if (op.kind == ControlKind::interior_identity) return v.interior;
    return {v.boundary_left, v.boundary_right};
}

double zrho_norm(const ControlSignal& z, double rho, const ControlOperator& op) {
    if (z.values.size() < 3) throw DomainError("zrho_norm: need >= 3 nodes");
    const auto w = op.domain_weights();
    const auto& t = z.grid.nodes;
    double sup_val = 0.0, sup_der = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j)
        sup_val = std::max(sup_val, std::sqrt(weighted_norm_sq(w, z.values[j])));
    std::vector<double> d((std::size_t)op.sample_dim());
    for (std::size_t j = 1; j + 1 < t.size(); ++j) {
        const double h = t[j + 1] - t[j - 1];
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = (z.values[j + 1][i] - z.values[j - 1][i]) / h;
        sup_der = std::max(sup_der, std::pow(t[j], 1.0 - rho) *
                                        std::sqrt(weighted_norm_sq(w, d)));
    }
    return sup_val + sup_der;
}

ControlSignal project_admissible(const ControlSignal& z, const AdmissibleSet& set,
                                 const ControlOperator& op, ProjectionReport* report,
                                 bool mollify_on_violation) {
    set.validate();
    ControlSignal out = z;
    std::size_t clamped = 0, total = 0;
    auto clamp_all = [&](ControlSignal& s, bool count) {
        for (auto& row : s.values)
            for (auto& x : row) {
                const double c = std::clamp(x, set.z_lower, set.z_upper);
                if (count) {
                    ++total;
                    if (c != x) ++clamped;
                }
                x = c;
            }
    };
    clamp_all(out, true);

    const auto w = op.domain_weights();
    const auto& t = z.grid.nodes;
    auto derivative_check = [&](const ControlSignal& s, int* violations, double* max_excess) {
        *violations = 0;
        *max_excess = 0.0;
        std::vector<double> d((std::size_t)op.sample_dim());
        for (std::size_t j = 1; j + 1 < t.size(); ++j) {
            const double h = t[j + 1] - t[j - 1];
            for (std::size_t i = 0; i < d.size(); ++i)
                d[i] = (s.values[j + 1][i] - s.values[j - 1][i]) / h;
            const double dn = std::sqrt(weighted_norm_sq(w, d));
            const double budget = set.M * std::pow(t[j], set.rho - 1.0);
            if (dn > budget * (1.0 + 1e-9)) {
                ++(*violations);
                *max_excess = std::max(*max_excess, dn - budget);
            }
        }
    };

    ProjectionReport rep;
    rep.clamped_fraction = total ? (double)clamped / (double)total : 0.0;
    derivative_check(out, &rep.derivative_violations_before, &rep.max_residual_violation);
    rep.derivative_violations_after = rep.derivative_violations_before;

    if (rep.derivative_violations_before > 0 && mollify_on_violation) {
        // causal moving average over [t_j - t_j/2, t_j], then re-clamp
        ControlSignal smooth = out;
        for (std::size_t j = 1; j < t.size(); ++j) {
            const double lo = t[j] - 0.5 * t[j];
            double wsum = 0.0;
            std::vector<double> acc((std::size_t)op.sample_dim(), 0.0);
            for (std::size_t k = 0; k <= j; ++k) {
                if (t[k] < lo) continue;
                const double wk = (k == 0 || k == j) ? 0.5 : 1.0;
                wsum += wk;
                for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += wk * out.values[k][i];
            }
            if (wsum > 0.0)
                for (std::size_t i = 0; i < acc.size(); ++i)
                    smooth.values[j][i] = acc[i] / wsum;
        }
        clamp_all(smooth, false);
        out = std::move(smooth);
        rep.mollified = true;
        derivative_check(out, &rep.derivative_violations_after, &rep.max_residual_violation);
    }
    if (report) *report = rep;
    return out;
}

double eval_cost(const std::vector<SpectralField>& traj, const GradedTimeGrid& grid,
                 const ControlSignal& z, const CostSpec& cs, const ControlOperator& op) {
    cs.validate();
    if (traj.size() != grid.nodes.size()) throw DomainError("eval_cost: trajectory/grid mismatch");
    if (!z.grid.same_as(grid)) throw DomainError("eval_cost: control grid mismatch");
    const auto& basis = *traj.front().basis;
    const int M = basis.grid.n_nodes();
    if (!cs.z_Q.empty() && ((int)cs.z_Q.front().size() != M || cs.z_Q.size() != traj.size()))
        throw DomainError("eval_cost: z_Q sampled on the wrong grid");
    if (!cs.z_Sigma.empty() && (cs.z_Sigma.front().size() != 2 || cs.z_Sigma.size() != traj.size()))
        throw DomainError("eval_cost: z_Sigma sampled on the wrong grid");

    std::vector<PhysicalValues> uv(traj.size());
    for (std::size_t j = 0; j < traj.size(); ++j) uv[j] = synthesize(traj[j]);

    const auto wD = op.domain_weights();
    double J = 0.0;
    std::vector<double> diff((std::size_t)M);
    for (int k = 1; k <= grid.n_steps; ++k) {
        const double dt = grid.dt(k);
        const std::size_t a = (std::size_t)k - 1, b = (std::size_t)k;
        if (cs.a1 > 0.0) {
            for (int i = 0; i < M; ++i) {
                const double u_mid = 0.5 * (uv[a].interior[(std::size_t)i] +
                                            uv[b].interior[(std::size_t)i]);
                const double tgt = cs.z_Q.empty() ? 0.0
                                                  : 0.5 * (cs.z_Q[a][(std::size_t)i] +
                                                           cs.z_Q[b][(std::size_t)i]);
                diff[(std::size_t)i] = u_mid - tgt;
            }
            J += 0.5 * cs.a1 * dt * weighted_norm_sq(basis.grid.quad_weights, diff);
        }
        if (cs.a2 > 0.0) {
            const double tl = cs.z_Sigma.empty() ? 0.0 : 0.5 * (cs.z_Sigma[a][0] + cs.z_Sigma[b][0]);
            const double tr = cs.z_Sigma.empty() ? 0.0 : 0.5 * (cs.z_Sigma[a][1] + cs.z_Sigma[b][1]);
            const double dl = 0.5 * (uv[a].boundary_left + uv[b].boundary_left) - tl;
            const double dr = 0.5 * (uv[a].boundary_right + uv[b].boundary_right) - tr;
            J += 0.5 * cs.a2 * dt * (dl * dl + dr * dr);
        }
        if (cs.zeta > 0.0) {
            double s = 0.0;
            for (std::size_t i = 0; i < wD.size(); ++i) {
                const double zm = 0.5 * (z.values[a][i] + z.values[b][i]);
                s += wD[i] * zm * zm;
            }
            J += 0.5 * cs.zeta * dt * s;
        }
    }
    return J;
}

SpectralField cost_state_gradient(const SpectralField& u, std::size_t node, const CostSpec& cs,
                                  const ControlOperator& op) {
    (void)op;
    PhysicalValues g = synthesize(u);
    const std::size_t M = g.interior.size();
    for (std::size_t i = 0; i < M; ++i) {
        const double tgt = cs.z_Q.empty() ? 0.0 : cs.z_Q[node][i];
        g.interior[i] = cs.a1 * (g.interior[i] - tgt);
    }
    const double tl = cs.z_Sigma.empty() ? 0.0 : cs.z_Sigma[node][0];
    const double tr = cs.z_Sigma.empty() ? 0.0 : cs.z_Sigma[node][1];
    g.boundary_left = cs.a2 * (g.boundary_left - tl);
    g.boundary_right = cs.a2 * (g.boundary_right - tr);
    return analyze(u.basis, g);
}

}  // namespace subdiff
