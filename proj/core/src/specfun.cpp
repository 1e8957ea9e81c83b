#include "subdiff/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "subdiff/errors.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long double kPiL = 3.141592653589793238462643383279503L;
constexpr long double kEpsL = 5.42101086242752217e-20L;  // 2^-64

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// sin(pi*x) with argument reduction done on x, not pi*x.
long double sinpi_l(long double x) {
    long double r = std::fmod(x, 2.0L);
    if (r < 0.0L) r += 2.0L;
    // r in [0,2); fold to [0, 0.5] where sinl is well conditioned
    if (r < 0.5L) return std::sin(kPiL * r);
    if (r < 1.0L) return std::sin(kPiL * (1.0L - r));
    if (r < 1.5L) return -std::sin(kPiL * (r - 1.0L));
    return -std::sin(kPiL * (2.0L - r));
}

// log |1/Gamma(x)| and sign, valid for all real x (zero at the poles).
struct LogRgamma {
    long double log_abs;
    int sign;  // 0 when 1/Gamma(x) == 0
};

LogRgamma log_rgamma_l(long double x) {
    if (x > 0.5L) return {-std::lgamma(x), 1};
    const long double s = sinpi_l(x);
    if (s == 0.0L) return {-std::numeric_limits<long double>::infinity(), 0};
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    return {std::log(std::abs(s)) + std::lgamma(1.0L - x) - std::log(kPiL),
            s > 0.0L ? 1 : -1};
}

long double rgamma_l(long double x) {
    const LogRgamma lr = log_rgamma_l(x);
    if (lr.sign == 0) return 0.0L;
    return lr.sign * std::exp(lr.log_abs);
}

// ---------------------------------------------------------------------------
// Mittag-Leffler branches
// ---------------------------------------------------------------------------

// Taylor series sum_{n} x^n / Gamma(alpha n + beta), extended precision.
double ml_taylor(double alpha, double beta, double x, const SeriesControl& ctl) {
    if (x == 0.0) return rgamma(beta);
    const long double lax = std::log(std::abs((long double)x));
    const int sgnx = x > 0.0 ? 1 : -1;
    long double sum = 0.0L, comp = 0.0L, max_mag = 0.0L, last_mag = 0.0L;
    int sign = 1;
    bool past_hump = false;
    int n = 0;
    for (; n < ctl.max_terms; ++n) {
        const long double mag =
            std::exp((long double)n * lax - std::lgamma((long double)alpha * n + (long double)beta));
        const long double term = sign * mag;
        // Kahan
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        max_mag = std::max(max_mag, mag);
        if (n > 0 && mag < last_mag) past_hump = true;
        last_mag = mag;
        if (past_hump && mag < 0.01L * (long double)ctl.abs_tol) break;
        sign *= sgnx;
    }
    const double cancel_est =
        (double)(max_mag * kEpsL * (n + 2)) + (double)last_mag;
    if (n >= ctl.max_terms || cancel_est > std::max(ctl.abs_tol, 1e-11)) {
        std::ostringstream os;
        os << "ml_eval: Taylor series did not converge to tolerance (alpha=" << alpha
           << ", beta=" << beta << ", x=" << x << ", terms=" << n << ")";
        throw EvalError(os.str(), (double)sum, cancel_est);
    }
    return (double)sum;
}

// alpha == 1: E_{1,beta}(x) = e^x M(beta-1, beta, -x) / Gamma(beta).
// For x <= 0 the transformed series has one sign; no cancellation.
double ml_alpha_one(double beta, double x, const SeriesControl& ctl) {
    const long double y = -(long double)x;  // >= 0
    long double sum = 1.0L, term = 1.0L;
    for (int n = 1; n < ctl.max_terms; ++n) {
        term *= y / n;
        const long double c = ((long double)beta - 1.0L) / ((long double)beta - 1.0L + n);
        sum += c * term;
        if (term < 1e-3L * (long double)ctl.abs_tol && n > 4) break;
    }
    return (double)(std::exp((long double)x) * sum * rgamma_l((long double)beta));
}

// Asymptotic expansion for x -> -inf: E ~ -sum_{k>=1} x^{-k} / Gamma(beta - alpha k).
// Returns false when the optimally truncated error exceeds tol.
bool ml_asymptotic(double alpha, double beta, double x, double tol, double* out) {
    const double ax = -x;
    double sum = 0.0;
    double xp = 1.0 / x;  // x^{-k}
    double min_mag = std::numeric_limits<double>::infinity();
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 60; ++k) {
        const double coef = (double)rgamma_l((long double)(beta - alpha * k));
        const double term = -xp * coef;
        const double mag = std::abs(term);
        if (mag > prev_mag && mag > 0.0) break;  // divergence onset
        sum += term;
        if (mag > 0.0) prev_mag = mag;
        min_mag = std::min(min_mag, mag > 0.0 ? mag : min_mag);
        xp /= x;
    }
    // The algebraic expansion misses the exponentially small Stokes
    // contribution; floor the estimate at exp(-|x|).
    const double est = std::max(min_mag, std::exp(-ax));
    if (!(est <= tol)) return false;
    *out = sum;
    return true;
}

// Gorenflo-Luchko integral on the cut, arg z = pi, 0 < alpha < 1,
// beta < 1 + alpha:
//   E = (1/(pi alpha)) Int_0^R g(r) N(r) / D(r) dr,
//   g(r) = r^s exp(-r^{1/alpha}),  s = (1-beta)/alpha,
//   N(r) = a r + b,  a = sin(pi(1-beta)),  b = y sin(pi(1-beta+alpha)),
//   D(r) = (r + c)^2 + w^2,  c = y cos(pi alpha), w = y sin(pi alpha), y = -x.
// As alpha -> 1 the denominator develops a Lorentzian near r0 = -c; the
// first two terms of g around r0 are removed and integrated in closed form.
struct MLIntegralParams {
    double alpha, beta, y;
    double s, a, b, c, w, r0;
};

double g_of(const MLIntegralParams& p, double r) {
    if (r <= 0.0) return p.s > 0.0 ? 0.0 : (p.s == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    return std::pow(r, p.s) * std::exp(-std::pow(r, 1.0 / p.alpha));
}

double gprime_of(const MLIntegralParams& p, double r) {
    return g_of(p, r) * (p.s / r - std::pow(r, 1.0 / p.alpha - 1.0) / p.alpha);
}

double ml_integral(double alpha, double beta, double x, const SeriesControl& ctl) {
    MLIntegralParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.y = -x;
    p.s = (1.0 - beta) / alpha;
    p.a = std::sin(kPi * (1.0 - beta));
    p.b = p.y * std::sin(kPi * (1.0 - beta + alpha));
    p.c = p.y * std::cos(kPi * alpha);
    p.w = p.y * std::sin(kPi * alpha);
    p.r0 = -p.c;

    const double tol = std::max(ctl.abs_tol, 1e-15);
    const double R = std::max({1.0, 2.0 * p.y, std::pow(-std::log(tol * kPi / 6.0), alpha)});

    const bool spiky = (p.r0 > 0.0) && (p.w < 0.25 * p.r0);

    auto denom = [&p](double r) { return (r + p.c) * (r + p.c) + p.w * p.w; };
    auto raw = [&](double r) { return g_of(p, r) * (p.a * r + p.b) / denom(r); };

    double integral = 0.0;
    bool all_ok = true;
    const double qtol = tol * 0.05;

    // panel boundaries; resolve the small-r decay scale and the spike
    std::vector<double> cuts = {0.0, std::min(1.0, R)};
    if (R > 1.0) cuts.push_back(std::min(2.0 * p.y > 1.0 ? 2.0 * p.y : R, R));
    if (spiky) {
        cuts.push_back(std::clamp(p.r0 - 6.0 * p.w, 0.0, R));
        cuts.push_back(std::clamp(p.r0 + 6.0 * p.w, 0.0, R));
    }
    cuts.push_back(R);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double g0 = 0.0, g1 = 0.0;
    std::function<double(double)> integrand;
    if (spiky) {
        g0 = g_of(p, p.r0);
        g1 = gprime_of(p, p.r0);
        integrand = [&](double r) {
            const double gh = g_of(p, r) - g0 - g1 * (r - p.r0);
            return gh * (p.a * r + p.b) / denom(r);
        };
    } else {
        integrand = raw;
    }

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        if (hi <= lo) continue;
        bool ok = true;
        if (lo == 0.0 && p.s < 0.0) {
            // substitute r = v^m so the endpoint power singularity vanishes
            const int m = (int)std::ceil(2.0 / (1.0 + p.s)) + 1;
            const double vhi = std::pow(hi, 1.0 / m);
            auto sub = [&](double v) {
                const double r = std::pow(v, m);
                return r > 0.0 ? integrand(r) * m * std::pow(v, m - 1) : 0.0;
            };
            integral += adaptive_simpson(sub, 0.0, vhi, qtol, 48, &ok);
        } else {
            integral += adaptive_simpson(integrand, lo, hi, qtol, 48, &ok);
        }
        all_ok = all_ok && ok;
    }

    if (spiky) {
        // closed forms of Int N/D and Int N (r - r0)/D over [0, R]
        auto atan_term = [&](double r) { return std::atan((r + p.c) / p.w); };
        const double I1 = (atan_term(R) - atan_term(0.0)) / p.w;
        const double I3 = 0.5 * (std::log(denom(R)) - std::log(denom(0.0)));
        const double I4 = R - p.w * (atan_term(R) - atan_term(0.0));
        const double N0 = p.a * p.r0 + p.b;
        integral += g0 * (p.a * I3 + N0 * I1);
        integral += g1 * (p.a * I4 + N0 * I3);
    }

    if (!all_ok) {
        std::ostringstream os;
        os << "ml_eval: integral representation did not converge (alpha=" << alpha
           << ", beta=" << beta << ", x=" << x << ")";
        throw EvalError(os.str(), integral / (kPi * alpha), tol);
    }
    return integral / (kPi * alpha);
}

}  // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma_fn: non-finite argument");
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma_fn: pole at x=" << x;
        throw DomainError(os.str());
    }
    return std::tgamma(x);
}

double rgamma(double x) {
    if (!std::isfinite(x)) throw DomainError("rgamma: non-finite argument");
    return (double)rgamma_l((long double)x);
}

double kernel_g(double gamma, double t) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("kernel_g: gamma must be in (0,1]");
    if (t <= 0.0) return 0.0;
    if (gamma == 1.0) return 1.0;
    return std::pow(t, gamma - 1.0) * rgamma(gamma);
}

double ml_eval(double alpha, double beta, double x, const SeriesControl& ctl) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ml_eval: alpha must be in (0,1]");
    if (!(beta > 0.0)) throw DomainError("ml_eval: beta must be > 0");
    if (!(x <= ml_x_max)) throw DomainError("ml_eval: x exceeds the positive-argument cap");
    if (ctl.max_terms < 8 || !(ctl.abs_tol > 0.0))
        throw DomainError("ml_eval: invalid SeriesControl");

    if (alpha == 1.0)
        return x >= 0.0 ? ml_taylor(alpha, beta, x, ctl) : ml_alpha_one(beta, x, ctl);

    // Taylor while the largest series term, ~exp(|x|^(1/alpha)), cannot eat
    // the requested digits.
    const double taylor_floor = -std::pow(14.0, alpha);
    if (x >= taylor_floor) return ml_taylor(alpha, beta, x, ctl);

    // reduce beta below 1 + alpha so the integral representation applies:
    // E_{a,b}(x) = (E_{a,b-a}(x) - 1/Gamma(b-a)) / x
    if (beta >= 1.0 + alpha) {
        const double inner = ml_eval(alpha, beta - alpha, x, ctl);
        return (inner - rgamma(beta - alpha)) / x;
    }

    if (x <= -30.0) {
        double v;
        if (ml_asymptotic(alpha, beta, x, std::max(ctl.abs_tol, 1e-13), &v)) return v;
    }
    return ml_integral(alpha, beta, x, ctl);
}

double wright_eval(double gamma, double t, const SeriesControl& ctl) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("wright_eval: gamma must be in (0,1)");
    if (!(t >= 0.0)) throw DomainError("wright_eval: t must be >= 0");

    // Phi_gamma(t) = sum_n (-t)^n / (n! Gamma(1 - gamma - gamma n))
    const long double lt = t > 0.0 ? std::log((long double)t) : 0.0L;
    long double sum = 0.0L, comp = 0.0L, sum_abs = 0.0L, last_mag = 0.0L;
    long double trunc = 0.0L;
    bool past_hump = false, converged = false;
    int n = 0;
    const int cap = std::max(ctl.max_terms, 400);
    for (; n < cap; ++n) {
        const LogRgamma lr = log_rgamma_l(1.0L - (long double)gamma * (n + 1));
        long double term = 0.0L, mag = 0.0L;
        if (lr.sign != 0) {
            mag = std::exp(n * lt - std::lgamma((long double)n + 1.0L) + lr.log_abs);
            term = lr.sign * mag;
            if (n % 2 == 1) term = -term;
        }
        sum_abs += mag;
        const long double y = term - comp;
        const long double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
        if (t == 0.0) {
            converged = true;  // only the n = 0 term contributes
            break;
        }
        if (mag > 0.0L) {
            if (mag < last_mag) past_hump = true;
            if (past_hump && mag < 1e-3L * (long double)ctl.abs_tol) {
                trunc = mag;
                converged = true;
                break;
            }
            last_mag = mag;
        }
    }
    if (!converged) trunc = std::max(last_mag, (long double)1.0L);
    const double est = (double)(sum_abs * kEpsL * (n + 2) + trunc);
    if (est > ctl.abs_tol) {
        std::ostringstream os;
        os << "wright_eval: series unreliable at gamma=" << gamma << ", t=" << t
           << " (cancellation estimate " << est << " > " << ctl.abs_tol
           << "); stay within wright_reliable_tmax";
        throw EvalError(os.str(), (double)sum, est);
    }
    return (double)sum;
}

double wright_reliable_tmax(double gamma, double tol) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("wright_reliable_tmax: gamma in (0,1)");
    // predicted max term magnitude of the series at argument t
    auto log_max_term = [gamma](double t) {
        const double lt = std::log(t);
        double best = -1e300;
        for (int n = 1; n <= 2000; ++n) {
            const double arg = 1.0 - gamma * (n + 1);
            const double lr = (double)log_rgamma_l((long double)arg).log_abs;
            if (!std::isfinite(lr)) continue;
            best = std::max(best, n * lt - (double)std::lgamma((double)n + 1.0) + lr);
        }
        return best;
    };
    const double budget = std::log(tol / (double)(kEpsL * 100.0L));
    double lo = 0.5, hi = 64.0;
    if (log_max_term(hi) < budget) return hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (log_max_term(mid) < budget ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace subdiff
