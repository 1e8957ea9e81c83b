#include "subdiff/time_grid.hpp"

#include "subdiff/errors.hpp"

namespace subdiff {

GradedTimeGrid GradedTimeGrid::make(double T, int n_steps, double grading) {
    if (!(T > 0.0)) throw DomainError("GradedTimeGrid: horizon must be > 0");
    if (n_steps < 1) throw DomainError("GradedTimeGrid: n_steps must be >= 1");
    if (!(grading >= 1.0)) throw DomainError("GradedTimeGrid: grading must be >= 1");
    GradedTimeGrid g;
    g.horizon = T;
    g.n_steps = n_steps;
    g.grading = grading;
    g.nodes.resize((std::size_t)n_steps + 1);
    for (int j = 0; j <= n_steps; ++j)
        g.nodes[(std::size_t)j] = T * std::pow((double)j / n_steps, grading);
    g.nodes[0] = 0.0;
    g.nodes[(std::size_t)n_steps] = T;
    return g;
}

ScalarTrajectory ScalarTrajectory::zeros(const GradedTimeGrid& g) {
    return {g, std::vector<double>(g.nodes.size(), 0.0)};
}

}  // namespace subdiff
