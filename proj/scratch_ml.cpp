// scratch check of ml_eval branches against independent oracles
#include <cmath>
#include <cstdio>
#include <initializer_list>

#include "subdiff/specfun.hpp"

using namespace subdiff;

// erfcx(x) = exp(x^2) erfc(x), stable for large x
static double erfcx(double x) {
    if (x < 6.0) return std::exp(x * x) * std::erfc(x);
    // asymptotic: 1/(x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4) - 15/(8x^6) + ...)
    const double ix2 = 1.0 / (x * x);
    double s = 1.0, term = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term *= -(2.0 * k - 1.0) / 2.0 * ix2;
        s += term;
    }
    return s / (x * std::sqrt(M_PI));
}

int main() {
    // E_{1/2,1}(-x) = erfcx(x)
    double worst = 0.0;
    for (double x = 0.25; x <= 200.0; x *= 1.37) {
        double e = ml_eval(0.5, 1.0, -x);
        double o = erfcx(x);
        double err = std::abs(e - o);
        if (err > worst) worst = err;
        if (err > 1e-11) std::printf("E(0.5,1,-%g) = %.15g oracle %.15g err %.3g\n", x, e, o, err);
    }
    std::printf("E_{1/2,1} worst abs err vs erfcx: %.3g\n", worst);

    // E_{1,1}(x) vs exp
    worst = 0.0;
    for (double x = -20.0; x <= 2.0; x += 0.173) {
        double err = std::abs(ml_eval(1.0, 1.0, x) - std::exp(x));
        worst = std::max(worst, err);
    }
    std::printf("E_{1,1} vs exp worst abs err: %.3g\n", worst);

    // specific values
    std::printf("E(0.5,1,-1)   = %.15f (expect 0.427583576155807)\n", ml_eval(0.5, 1.0, -1.0));
    std::printf("E(0.5,0.5,-1) = %.15f (identity: %.15f)\n", ml_eval(0.5, 0.5, -1.0),
                1.0 / std::sqrt(M_PI) - erfcx(1.0));
    std::printf("E(0.6,1,0)    = %.15f (expect 1)\n", ml_eval(0.6, 1.0, 0.0));

    // beta reduction: E_{g,g+1}(z) = (E_{g,1}(z)-1)/z  at large negative z
    for (double g : {0.3, 0.5, 0.8}) {
        for (double x : {-7.0, -40.0, -300.0}) {
            double lhs = ml_eval(g, g + 1.0, x);
            double rhs = (ml_eval(g, 1.0, x) - 1.0) / x;
            std::printf("g=%.1f x=%g: E_{g,g+1}=%.14g  via-recur=%.14g  diff=%.2g\n", g, x, lhs,
                        rhs, std::abs(lhs - rhs));
        }
    }

    // near gamma->1: E_{1-eps,1}(-x) should approach exp(-x)
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        double a = 1.0 - eps;
        for (double x : {0.5, 5.0, 20.0, 60.0}) {
            double e = ml_eval(a, 1.0, -x);
            std::printf("alpha=1-%g x=%g: E=%.12g exp(-x)=%.12g diff=%.3g\n", eps, x, e,
                        std::exp(-x), std::abs(e - std::exp(-x)));
        }
    }

    // monotone decay scan gamma=0.25 (crosses all three branches)
    double prev = 1e300;
    bool mono = true;
    for (double x = 0.0; x <= 50.0; x += 0.25) {
        double v = ml_eval(0.25, 1.0, -x);
        if (v <= 0.0 || v >= prev) {
            mono = false;
            std::printf("monotonicity breach at x=%g: %.15g (prev %.15g)\n", x, v, prev);
        }
        prev = v;
    }
    std::printf("gamma=0.25 decay monotone: %s\n", mono ? "yes" : "NO");

    // Wright: Phi_g(0) = 1/Gamma(1-g); normalization handled in tests
    std::printf("Phi_0.5(0) = %.12f (expect %.12f)\n", wright_eval(0.5, 0.0),
                1.0 / std::sqrt(M_PI));
    std::printf("Phi_0.25(0) = %.12f (expect %.12f)\n", wright_eval(0.25, 0.0),
                1.0 / std::tgamma(0.75));
    std::printf("Phi_0.5(1) = %.12f (M_1/2: %.12f)\n", wright_eval(0.5, 1.0),
                std::exp(-0.25) / std::sqrt(M_PI));
    for (double g : {0.3, 0.5, 0.7, 0.75}) {
        std::printf("wright_reliable_tmax(%.2f, 1e-10) = %.3f ; (1e-8) = %.3f\n", g,
                    wright_reliable_tmax(g, 1e-10), wright_reliable_tmax(g, 1e-8));
    }
    return 0;
}
