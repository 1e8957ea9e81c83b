#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace subdiff {

/// Time grid t_j = T (j/n)^r, j = 0..n. Grading r >= 1 clusters nodes at
/// t = 0 where the solution derivative behaves like t^(theta-1).
struct GradedTimeGrid {
    double horizon = 1.0;
    int n_steps = 1;
    double grading = 1.0;
    std::vector<double> nodes;

    static GradedTimeGrid make(double T, int n_steps, double grading);

    int n() const { return n_steps; }
    double t(int j) const { return nodes[(std::size_t)j]; }
    double dt(int k) const { return nodes[(std::size_t)k] - nodes[(std::size_t)k - 1]; }
    bool same_as(const GradedTimeGrid& o) const {
        return horizon == o.horizon && n_steps == o.n_steps && grading == o.grading;
    }
};

/// One real value per grid node.
struct ScalarTrajectory {
    GradedTimeGrid grid;
    std::vector<double> values;

    static ScalarTrajectory zeros(const GradedTimeGrid& g);
};

}  // namespace subdiff
