#ifndef STATKIT_SPECIAL_HPP
#define STATKIT_SPECIAL_HPP

// Scalar special functions used across the library: normal CDF/quantile,
// log-gamma helpers, regularized incomplete gamma and beta with inverses,
// and Student-t quantiles via incomplete-beta inversion.

#include <cmath>
#include <cstdint>
#include <limits>

#include "statkit/errors.hpp"

namespace statkit {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt2 = 1.41421356237309504880;

inline double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi);
}

inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / sqrt2);
}

/// Inverse standard normal CDF. Rational approximation (Acklam) refined by
/// one Newton step on erfc, giving relative error below 1e-15 over (0,1).
inline double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw domain_error("norm_quantile: level must lie strictly in (0,1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Newton step against the exact erfc-based CDF.
    double e = norm_cdf(x) - p;
    double u = e * std::sqrt(2.0 * pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

inline double log_gamma(double x) { return std::lgamma(x); }

inline double log_factorial(unsigned n) {
    static const double small[] = {0.0,
                                   0.0,
                                   0.6931471805599453,
                                   1.791759469228055,
                                   3.1780538303479458,
                                   4.787491742782046,
                                   6.579251212010101,
                                   8.525161361065415,
                                   10.60460290274525,
                                   12.801827480081469};
    if (n < 10) return small[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

/// Binomial coefficient as an exact 64-bit integer; valid for n <= 62.
inline std::uint64_t choose_exact(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r / i * (n - k + i) + r % i * (n - k + i) / i;
    }
    return r;
}

/// log C(n, k); exact integer arithmetic for n <= 20, log-gamma above.
inline double log_choose(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (n <= 20 && n == std::floor(n) && k == std::floor(k)) {
        return std::log(static_cast<double>(
            choose_exact(static_cast<unsigned>(n), static_cast<unsigned>(k))));
    }
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

namespace detail {

// Regularized lower incomplete gamma by series expansion; x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// Regularized upper incomplete gamma by continued fraction; x >= a + 1.
inline double gamma_q_cf(double a, double x) {
    const double fpmin = std::numeric_limits<double>::min() / 1e-16;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

} // namespace detail

/// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
    if (a <= 0.0) throw domain_error("gamma_p: shape must be positive");
    if (x < 0.0) throw domain_error("gamma_p: argument must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_cf(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) {
    if (a <= 0.0) throw domain_error("gamma_q: shape must be positive");
    if (x < 0.0) throw domain_error("gamma_q: argument must be non-negative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_cf(a, x);
}

/// Inverse of P(a, .): returns x with gamma_p(a, x) = p.
inline double gamma_p_inv(double a, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw domain_error("gamma_p_inv: level must lie strictly in (0,1)");
    // Wilson-Hilferty starting point, then safeguarded Newton.
    double g = norm_quantile(p);
    double t = 1.0 - 1.0 / (9.0 * a) + g / (3.0 * std::sqrt(a));
    double x = a * t * t * t;
    if (x <= 0.0) x = a * std::exp((std::log(p) + log_gamma(a + 1.0)) / a);
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 100; ++it) {
        double f = gamma_p(a, x) - p;
        if (f > 0.0) hi = x; else lo = x;
        double dens = std::exp((a - 1.0) * std::log(x) - x - log_gamma(a));
        double step = (dens > 0.0) ? f / dens : 0.0;
        double xn = x - step;
        if (!(xn > lo && (xn < hi))) xn = std::isinf(hi) ? 2.0 * x : 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= 1e-14 * (std::fabs(x) + 1e-300)) { x = xn; break; }
        x = xn;
    }
    return x;
}

namespace detail {

// Continued fraction for the incomplete beta (Lentz's method).
inline double betacf(double a, double b, double x) {
    const double fpmin = std::numeric_limits<double>::min() / 1e-16;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h;
}

} // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double beta_inc(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw domain_error("beta_inc: shapes must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double lbeta = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                   a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(lbeta);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::betacf(a, b, x) / a;
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

/// Inverse of I_x(a, b) in x.
inline double beta_inc_inv(double a, double b, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("beta_inc_inv: level must lie in [0,1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    // Bisection bracket refined by Newton where safe.
    double lo = 0.0, hi = 1.0, x = a / (a + b);
    double lbeta = log_gamma(a + b) - log_gamma(a) - log_gamma(b);
    for (int it = 0; it < 200; ++it) {
        double f = beta_inc(a, b, x) - p;
        if (f > 0.0) hi = x; else lo = x;
        double logd = lbeta + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
        double xn = x - f / std::exp(logd);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= 1e-15 * (x + 1e-300)) { x = xn; break; }
        x = xn;
    }
    return x;
}

/// Student-t quantile with nu degrees of freedom at level p.
inline double t_quantile(double p, double nu) {
    if (!(p > 0.0 && p < 1.0))
        throw domain_error("t_quantile: level must lie strictly in (0,1)");
    if (nu <= 0.0) throw domain_error("t_quantile: degrees of freedom must be positive");
    if (p == 0.5) return 0.0;
    double tail = (p < 0.5) ? p : 1.0 - p;
    double z = beta_inc_inv(0.5 * nu, 0.5, 2.0 * tail);
    double t = std::sqrt(nu * (1.0 - z) / z);
    return (p < 0.5) ? -t : t;
}

} // namespace statkit

#endif
