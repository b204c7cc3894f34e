#ifndef STATKIT_INFERENCE_HPP
#define STATKIT_INFERENCE_HPP

// CLT confidence intervals for a mean, exact binomial tail p-values, and
// the normal-approximation proportion test.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "statkit/errors.hpp"
#include "statkit/montecarlo.hpp"
#include "statkit/special.hpp"

namespace statkit {

enum class VarianceMode {
    plugin,           // sample variance (or p(1-p) for proportions)
    worstcase_quarter // the 1/4 Bernoulli variance bound as the scale factor
};

struct IntervalReport {
    double estimate;
    double lower;
    double upper;
    double confidence; // 1 - alpha
    VarianceMode mode;
};

namespace detail {

// Radius of the CLT interval. Plug-in: z * sqrt(var / n). The worst-case
// quarter mode substitutes the variance bound 1/4 directly for the scale
// factor, radius z * (1/4) / sqrt(n).
inline double clt_radius(double variance, std::size_t n, double z, VarianceMode mode) {
    if (mode == VarianceMode::worstcase_quarter)
        return z * 0.25 / std::sqrt(double(n));
    return z * std::sqrt(variance / double(n));
}

} // namespace detail

inline IntervalReport ci_mean_clt(double mean, double variance, std::size_t n,
                                  double alpha,
                                  VarianceMode mode = VarianceMode::plugin) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("ci_mean_clt: alpha must lie in (0,1)");
    if (n < 1) throw domain_error("ci_mean_clt: n must be >= 1");
    if (variance < 0.0) throw domain_error("ci_mean_clt: variance must be >= 0");
    double z = norm_quantile(1.0 - alpha / 2.0);
    double r = detail::clt_radius(variance, n, z, mode);
    return {mean, mean - r, mean + r, 1.0 - alpha, mode};
}

inline IntervalReport ci_mean_clt(const std::vector<double>& data, double alpha,
                                  VarianceMode mode = VarianceMode::plugin) {
    if (data.size() < 2) throw domain_error("ci_mean_clt: needs at least two points");
    return ci_mean_clt(sample_mean(data), sample_variance(data), data.size(), alpha,
                       mode);
}

/// Interval for a Bernoulli proportion from (successes, n).
inline IntervalReport ci_proportion_clt(std::size_t successes, std::size_t n,
                                        double alpha,
                                        VarianceMode mode = VarianceMode::plugin) {
    if (n < 1) throw domain_error("ci_proportion_clt: n must be >= 1");
    if (successes > n)
        throw domain_error("ci_proportion_clt: successes cannot exceed n");
    double p = double(successes) / double(n);
    return ci_mean_clt(p, p * (1.0 - p), n, alpha, mode);
}

enum class TestSide { lower, upper, two_sided };

struct TestReport {
    std::string null_spec;
    std::string alt_spec;
    double statistic;
    double p_value;
    double alpha;
    bool reject; // p < alpha
};

/// Exact Binomial(n, p0) tail probability of the observed count k.
/// upper: P(X >= k); lower: P(X <= k); two_sided: min(1, 2 min(tails)).
inline double p_value_binomial_tail(std::size_t n, double p0, std::size_t k,
                                    TestSide side) {
    if (!(p0 > 0.0 && p0 < 1.0))
        throw domain_error("binomial tail: p0 must lie strictly in (0,1)");
    if (k > n) throw domain_error("binomial tail: k cannot exceed n");
    double lp = std::log(p0), lq = std::log1p(-p0);
    auto mass = [&](std::size_t j) {
        return std::exp(log_choose(double(n), double(j)) + double(j) * lp +
                        double(n - j) * lq);
    };
    // Sum each tail from its far (small-term) end to limit cancellation.
    auto upper_tail = [&](std::size_t from) {
        double s = 0.0;
        for (std::size_t j = n + 1; j-- > from;) s += mass(j);
        return std::min(1.0, s);
    };
    auto lower_tail = [&](std::size_t to) {
        double s = 0.0;
        for (std::size_t j = 0; j <= to; ++j) s = s + mass(j);
        return std::min(1.0, s);
    };
    switch (side) {
    case TestSide::upper: return upper_tail(k);
    case TestSide::lower: return lower_tail(k);
    case TestSide::two_sided:
        return std::min(1.0, 2.0 * std::min(upper_tail(k), lower_tail(k)));
    }
    throw domain_error("binomial tail: unknown side");
}

/// Normal-approximation test of H0: p = p0 against a one- or two-sided
/// alternative; statistic (p_hat - p0) / sqrt(p0 (1-p0) / n).
inline TestReport z_test_proportion(std::size_t n, double p0, std::size_t successes,
                                    TestSide side, double alpha) {
    if (!(p0 > 0.0 && p0 < 1.0))
        throw domain_error("z_test_proportion: p0 must lie strictly in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("z_test_proportion: alpha must lie in (0,1)");
    if (n < 1) throw domain_error("z_test_proportion: n must be >= 1");
    if (successes > n)
        throw domain_error("z_test_proportion: successes cannot exceed n");
    double p_hat = double(successes) / double(n);
    double z = (p_hat - p0) / std::sqrt(p0 * (1.0 - p0) / double(n));
    TestReport rep;
    rep.statistic = z;
    rep.alpha = alpha;
    rep.null_spec = "p = " + std::to_string(p0);
    switch (side) {
    case TestSide::upper:
        rep.alt_spec = "p > " + std::to_string(p0);
        rep.p_value = 1.0 - norm_cdf(z);
        break;
    case TestSide::lower:
        rep.alt_spec = "p < " + std::to_string(p0);
        rep.p_value = norm_cdf(z);
        break;
    case TestSide::two_sided:
        rep.alt_spec = "p != " + std::to_string(p0);
        rep.p_value = std::min(1.0, 2.0 * (1.0 - norm_cdf(std::fabs(z))));
        break;
    }
    rep.reject = rep.p_value < alpha;
    return rep;
}

} // namespace statkit

#endif
