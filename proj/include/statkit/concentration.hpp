#ifndef STATKIT_CONCENTRATION_HPP
#define STATKIT_CONCENTRATION_HPP

// Analytic tail bounds (Markov, Chebyshev, sub-Gaussian Chernoff,
// Hoeffding), the confidence radii they invert to, the CLT sample-size
// solver, and the Berry-Esseen CLT error bound.

#include <cmath>
#include <cstdint>
#include <string>

#include "statkit/errors.hpp"
#include "statkit/special.hpp"

namespace statkit {

enum class BoundKind { markov, chebyshev, chernoff_subgaussian, hoeffding };

/// Symmetric halving turns a two-sided deviation bound into a one-sided
/// figure; it is an explicit option, never applied implicitly.
enum class TailSide { two_sided, one_sided_halved };

struct BoundReport {
    double bound;  // clipped to [0, 1]
    bool vacuous;  // true when the raw bound exceeded 1
};

namespace detail {

inline BoundReport clip(double raw) {
    if (raw >= 1.0) return {1.0, true};
    return {raw < 0.0 ? 0.0 : raw, false};
}

inline double halved(double two_sided, TailSide side) {
    return side == TailSide::one_sided_halved ? 0.5 * two_sided : two_sided;
}

} // namespace detail

/// P(X > eps) <= mean / eps for non-negative X.
inline BoundReport markov_bound(double mean, double eps) {
    if (eps <= 0.0) throw domain_error("markov_bound: threshold must be positive");
    if (mean < 0.0) throw domain_error("markov_bound: mean must be non-negative");
    return detail::clip(mean / eps);
}

/// P(|mean_n - mu| > eps) <= sigma^2 / (n eps^2).
inline BoundReport chebyshev_bound(double variance, double eps, std::uint64_t n = 1,
                                   TailSide side = TailSide::two_sided) {
    if (eps <= 0.0) throw domain_error("chebyshev_bound: deviation must be positive");
    if (variance < 0.0) throw domain_error("chebyshev_bound: variance must be >= 0");
    if (n < 1) throw domain_error("chebyshev_bound: n must be >= 1");
    double raw = variance / (double(n) * eps * eps);
    return detail::clip(detail::halved(raw, side));
}

/// Sub-Gaussian deviation: P(|mean_n - mu| > eps) <= 2 exp(-n eps^2 / (2 s^2)).
inline BoundReport chernoff_subgaussian_bound(double sigma2, double eps,
                                              std::uint64_t n = 1,
                                              TailSide side = TailSide::two_sided) {
    if (eps < 0.0) throw domain_error("chernoff_bound: deviation must be >= 0");
    if (sigma2 <= 0.0) throw domain_error("chernoff_bound: variance proxy must be > 0");
    if (n < 1) throw domain_error("chernoff_bound: n must be >= 1");
    double raw = 2.0 * std::exp(-double(n) * eps * eps / (2.0 * sigma2));
    return detail::clip(detail::halved(raw, side));
}

/// Bounded support [a, b]: P(|mean_n - mu| > eps) <= 2 exp(-2 n eps^2/(b-a)^2).
inline BoundReport hoeffding_bound(double a, double b, double eps,
                                   std::uint64_t n = 1,
                                   TailSide side = TailSide::two_sided) {
    if (!(a < b)) throw domain_error("hoeffding_bound: requires a < b");
    if (eps < 0.0) throw domain_error("hoeffding_bound: deviation must be >= 0");
    if (n < 1) throw domain_error("hoeffding_bound: n must be >= 1");
    double w = b - a;
    double raw = 2.0 * std::exp(-2.0 * double(n) * eps * eps / (w * w));
    return detail::clip(detail::halved(raw, side));
}

/// Radius eps with bound(eps) <= delta for the sample mean of n draws.
/// Chebyshev: sigma / sqrt(n delta). Chernoff: sigma sqrt((2/n) log(2/delta)).
/// Hoeffding: (b-a) sqrt(log(2/delta) / (2n)).
struct RadiusQuery {
    BoundKind kind;
    double sigma = 0.0; // chebyshev / chernoff
    double a = 0.0;     // hoeffding range
    double b = 0.0;
};

inline double confidence_radius(const RadiusQuery& q, std::uint64_t n, double delta) {
    if (n < 1) throw domain_error("confidence_radius: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw domain_error("confidence_radius: delta must lie in (0,1)");
    switch (q.kind) {
    case BoundKind::chebyshev:
        if (q.sigma < 0.0) throw domain_error("confidence_radius: sigma must be >= 0");
        return q.sigma / std::sqrt(double(n) * delta);
    case BoundKind::chernoff_subgaussian:
        if (q.sigma < 0.0) throw domain_error("confidence_radius: sigma must be >= 0");
        return q.sigma * std::sqrt(2.0 / double(n) * std::log(2.0 / delta));
    case BoundKind::hoeffding:
        if (!(q.a < q.b)) throw domain_error("confidence_radius: requires a < b");
        return (q.b - q.a) * std::sqrt(std::log(2.0 / delta) / (2.0 * double(n)));
    case BoundKind::markov:
    default:
        throw domain_error("confidence_radius: no radius form for this bound kind");
    }
}

/// Least n with z_{1-alpha/2} * sigma / sqrt(n) <= eps.
inline std::uint64_t clt_sample_size(double eps, double alpha, double sigma2) {
    if (eps <= 0.0) throw domain_error("clt_sample_size: deviation must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("clt_sample_size: alpha must lie in (0,1)");
    if (sigma2 < 0.0) throw domain_error("clt_sample_size: variance must be >= 0");
    double z = norm_quantile(1.0 - alpha / 2.0);
    double root = z * std::sqrt(sigma2) / eps;
    double n = std::ceil(root * root);
    return n < 1.0 ? 1 : std::uint64_t(n);
}

/// Kolmogorov-distance CLT error: 0.77 * E|X - mu|^3 / (sigma^3 sqrt(n)).
inline double berry_esseen_error(double third_abs_central_moment, double variance,
                                 std::uint64_t n) {
    if (third_abs_central_moment < 0.0)
        throw domain_error("berry_esseen_error: third absolute moment must be >= 0");
    if (variance <= 0.0) throw domain_error("berry_esseen_error: variance must be > 0");
    if (n < 1) throw domain_error("berry_esseen_error: n must be >= 1");
    return 0.77 * third_abs_central_moment /
           (variance * std::sqrt(variance) * std::sqrt(double(n)));
}

} // namespace statkit

#endif
