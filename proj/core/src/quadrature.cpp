#include "subdiff/quadrature.hpp"

namespace subdiff {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    double tol;
    int max_depth;
    bool ok = true;
};

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st.f(lm), frm = st.f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= st.max_depth) {
        if (depth >= st.max_depth && std::abs(delta) > 15.0 * tol) st.ok = false;
        return left + right + delta / 15.0;
    }
    return recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth, bool* converged) {
    if (a == b) {
        if (converged) *converged = true;
        return 0.0;
    }
    SimpsonState st{f, tol, max_depth};
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, a, b);
    const double v = recurse(st, a, b, fa, fm, fb, whole, tol, 0);
    if (converged) *converged = st.ok;
    return v;
}

}  // namespace subdiff
