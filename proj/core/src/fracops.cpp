#include "subdiff/fracops.hpp"

#include <algorithm>
#include <cmath>

#include "subdiff/errors.hpp"
#include "subdiff/specfun.hpp"

namespace subdiff {

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("fracops: order must be in (0,1)");
}

void check_grids(const ScalarTrajectory& a, const ScalarTrajectory& b) {
    if (!a.grid.same_as(b.grid)) throw DomainError("fracops: trajectories on different grids");
}

std::vector<double> reversed_nodes(std::span<const double> t) {
    const double T = t.back();
    std::vector<double> r(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) r[j] = T - t[t.size() - 1 - j];
    return r;
}

std::vector<double> reversed_values(std::span<const double> u) {
    return std::vector<double>(u.rbegin(), u.rend());
}

// finite differences on a nonuniform grid: central in the interior
std::vector<double> fd_derivative(std::span<const double> t, std::span<const double> u) {
    const std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d[0] = (u[1] - u[0]) / (t[1] - t[0]);
    d[n - 1] = (u[n - 1] - u[n - 2]) / (t[n - 1] - t[n - 2]);
    for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (u[j + 1] - u[j - 1]) / (t[j + 1] - t[j - 1]);
    return d;
}

std::vector<double> trapezoid_weights(std::span<const double> t) {
    std::vector<double> w(t.size(), 0.0);
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double h = t[k] - t[k - 1];
        w[k - 1] += 0.5 * h;
        w[k] += 0.5 * h;
    }
    return w;
}

}  // namespace

namespace detail {

std::vector<double> caputo_l1_nodes(std::span<const double> t, std::span<const double> u,
                                    double gamma) {
    const std::size_t n = t.size();
    std::vector<double> out(n, 0.0);
    const double ig = rgamma(2.0 - gamma);  // 1/Gamma(2-gamma)
    const double e = 1.0 - gamma;
    // antiderivative of g_{1-gamma}: G(s) = s^(1-gamma)/Gamma(2-gamma)
    auto G = [&](double s) { return s <= 0.0 ? 0.0 : std::pow(s, e) * ig; };
    for (std::size_t j = 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= j; ++k) {
            const double slope = (u[k] - u[k - 1]) / (t[k] - t[k - 1]);
            acc += slope * (G(t[j] - t[k - 1]) - G(t[j] - t[k]));
        }
        out[j] = acc;
    }
    return out;
}

std::vector<double> rl_integral_left_nodes(std::span<const double> t, std::span<const double> u,
                                           double order) {
    const std::size_t n = t.size();
    std::vector<double> out(n, 0.0);
    const double ig = rgamma(order);
    for (std::size_t j = 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= j; ++k) {
            const double a = t[k - 1], b = t[k];
            const double m = (u[k] - u[k - 1]) / (b - a);
            const double sa = t[j] - a, sb = t[j] - b;
            const double pa = std::pow(sa, order), pb = sb <= 0.0 ? 0.0 : std::pow(sb, order);
            // int_a^b (t_j - tau)^(order-1) (u_{k-1} + m (tau - a)) dtau / Gamma(order)
            const double c0 = u[k - 1] + m * (t[j] - a);
            acc += ig * (c0 * (pa - pb) / order -
                         m * (pa * sa - pb * sb) / (order + 1.0));
        }
        out[j] = acc;
    }
    return out;
}

}  // namespace detail

ScalarTrajectory caputo_l1(const ScalarTrajectory& traj, double gamma) {
    check_gamma(gamma);
    if (traj.values.size() < 2) throw DomainError("caputo_l1: need >= 2 nodes");
    return {traj.grid, detail::caputo_l1_nodes(traj.grid.nodes, traj.values, gamma)};
}

ScalarTrajectory rl_integral(const ScalarTrajectory& traj, double order, Direction dir) {
    if (!(order > 0.0 && order < 1.0)) throw DomainError("rl_integral: order must be in (0,1)");
    if (dir == Direction::left)
        return {traj.grid, detail::rl_integral_left_nodes(traj.grid.nodes, traj.values, order)};
    const auto rt = reversed_nodes(traj.grid.nodes);
    const auto ru = reversed_values(traj.values);
    auto v = detail::rl_integral_left_nodes(rt, ru, order);
    std::reverse(v.begin(), v.end());
    return {traj.grid, std::move(v)};
}

ScalarTrajectory right_rl_derivative(const ScalarTrajectory& traj, double gamma) {
    check_gamma(gamma);
    const auto rt = reversed_nodes(traj.grid.nodes);
    const auto ru = reversed_values(traj.values);
    // left RL derivative of the reversed samples:
    //   D^g v = C-d^g v + v(0) g_{1-gamma}(t)   (generalized Caputo identity)
    auto v = detail::caputo_l1_nodes(rt, ru, gamma);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += ru[0] * kernel_g(1.0 - gamma, rt[j]);
    std::reverse(v.begin(), v.end());
    return {traj.grid, std::move(v)};
}

double ibp_residual(const ScalarTrajectory& u, const ScalarTrajectory& v, double gamma) {
    check_gamma(gamma);
    check_grids(u, v);
    const auto& t = u.grid.nodes;
    const auto w = trapezoid_weights(t);
    const auto cu = detail::caputo_l1_nodes(t, u.values, gamma);
    const auto dv = right_rl_derivative(v, gamma).values;
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        lhs += w[j] * v.values[j] * cu[j];
        rhs += w[j] * dv[j] * u.values[j];
    }
    // bracket [I_{t,T}^{1-g} v * u] from 0 to T; the t = T factor vanishes
    const double I0 = rl_integral(v, 1.0 - gamma, Direction::right).values.front();
    const double bracket = -I0 * u.values.front();
    return std::abs(lhs - rhs - bracket);
}

double coercivity_value(const std::vector<SpectralField>& traj, const GradedTimeGrid& grid,
                        double gamma) {
    check_gamma(gamma);
    if (traj.size() != grid.nodes.size())
        throw DomainError("coercivity_value: trajectory/grid size mismatch");
    if (traj.size() < 3) throw DomainError("coercivity_value: need >= 3 nodes");
    const auto& t = grid.nodes;
    const auto w = trapezoid_weights(t);
    const int n_modes = traj.front().size();
    std::vector<double> integrand(t.size(), 0.0);
    std::vector<double> series(t.size());
    for (int m = 0; m < n_modes; ++m) {
        for (std::size_t j = 0; j < t.size(); ++j) series[j] = traj[j].coef[(std::size_t)m];
        const auto cap = detail::caputo_l1_nodes(t, series, gamma);
        const auto der = fd_derivative(t, series);
        for (std::size_t j = 0; j < t.size(); ++j) integrand[j] += cap[j] * der[j];
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) acc += w[j] * integrand[j];
    return acc;
}

}  // namespace subdiff
