#ifndef STATKIT_MONTECARLO_HPP
#define STATKIT_MONTECARLO_HPP

// Seeded simulation harness. Every replicate draws from its own counter
// stream keyed by (seed, plan tag, sample size, replicate), so reports are
// bit-identical for a given plan regardless of execution order, and
// experiments can be extended without re-drawing earlier replicates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "statkit/distributions.hpp"
#include "statkit/errors.hpp"
#include "statkit/rng.hpp"
#include "statkit/special.hpp"

namespace statkit {

inline double sample_mean(const std::vector<double>& v) {
    if (v.empty()) throw domain_error("sample_mean: empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

/// One-pass (Welford) accumulation; divisor n-1. The 1/n population form is
/// available via the flag.
inline double sample_variance(const std::vector<double>& v,
                              bool population_divisor = false) {
    if (v.size() < 2) throw domain_error("sample_variance: needs at least two points");
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double x : v) {
        ++k;
        double d = x - mean;
        mean += d / double(k);
        m2 += d * (x - mean);
    }
    return m2 / double(v.size() - (population_divisor ? 0 : 1));
}

inline double sample_stddev(const std::vector<double>& v,
                            bool population_divisor = false) {
    return std::sqrt(sample_variance(v, population_divisor));
}

struct ExperimentPlan {
    Distribution dist;
    std::vector<std::size_t> sizes; // strictly increasing
    std::size_t replicates = 1;
    std::uint64_t seed = 0;
    std::uint64_t plan_tag = 0; // distinguishes experiments sharing a seed

    void validate() const {
        if (replicates < 1) throw invalid_parameter("plan: replicates must be >= 1");
        if (sizes.empty()) throw invalid_parameter("plan: needs at least one size");
        for (std::size_t i = 1; i < sizes.size(); ++i)
            if (sizes[i] <= sizes[i - 1])
                throw invalid_parameter("plan: sizes must be strictly increasing");
    }
};

namespace detail {

inline std::vector<double> draw_replicate(const ExperimentPlan& plan, std::size_t n,
                                          std::size_t r) {
    std::uint64_t key = stream_key(plan.seed, {plan.plan_tag, n, r});
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = plan.dist.quantile(stream_u01(key, i));
    return v;
}

} // namespace detail

struct LlnRow {
    std::size_t n;
    double dev_min, dev_median, dev_max, dev_mean;
};

struct LlnResult {
    std::vector<LlnRow> rows;
    bool no_guarantee = false; // set for families without a mean (Cauchy)
    std::string note;
};

/// |sample mean - mu| summarized over replicates, per sample size.
inline LlnResult lln_experiment(const ExperimentPlan& plan) {
    plan.validate();
    LlnResult out;
    double mu;
    try {
        mu = plan.dist.moments().mean;
    } catch (const undefined_moment& e) {
        out.no_guarantee = true;
        out.note = e.what();
        return out;
    }
    for (std::size_t n : plan.sizes) {
        std::vector<double> devs(plan.replicates);
        for (std::size_t r = 0; r < plan.replicates; ++r)
            devs[r] = std::fabs(sample_mean(detail::draw_replicate(plan, n, r)) - mu);
        std::sort(devs.begin(), devs.end());
        double mean_dev = 0.0;
        for (double d : devs) mean_dev += d;
        mean_dev /= double(devs.size());
        out.rows.push_back({n, devs.front(), devs[devs.size() / 2], devs.back(),
                            mean_dev});
    }
    return out;
}

/// Kolmogorov-Smirnov distance of a sample against an analytic CDF.
inline double ks_distance(std::vector<double> values,
                          const std::function<double(double)>& cdf) {
    if (values.empty()) throw domain_error("ks_distance: empty sample");
    std::sort(values.begin(), values.end());
    double n = double(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double f = cdf(values[i]);
        d = std::max(d, std::fabs(double(i + 1) / n - f));
        d = std::max(d, std::fabs(double(i) / n - f));
    }
    return d;
}

struct CltRow {
    std::size_t n;
    double ks;
};

/// KS distance between the standardized sample mean (over replicates) and
/// the standard normal, per sample size.
inline std::vector<CltRow> clt_experiment(const ExperimentPlan& plan) {
    plan.validate();
    Moments m = plan.dist.moments();
    double sd = std::sqrt(m.variance);
    std::vector<CltRow> rows;
    for (std::size_t n : plan.sizes) {
        std::vector<double> z(plan.replicates);
        double scale = sd / std::sqrt(double(n));
        for (std::size_t r = 0; r < plan.replicates; ++r)
            z[r] = (sample_mean(detail::draw_replicate(plan, n, r)) - m.mean) / scale;
        rows.push_back({n, ks_distance(std::move(z), [](double x) { return norm_cdf(x); })});
    }
    return rows;
}

struct RiskReport {
    double bias;
    double variance;
    double mse;
    double se_of_mean; // standard error of the estimator mean over replicates
};

/// Empirical bias / variance / MSE of an estimator against the true theta.
/// Uses the first (single) entry of plan.sizes.
inline RiskReport estimator_risk(const ExperimentPlan& plan,
                                 const std::function<double(const std::vector<double>&)>& estimator,
                                 double theta_true) {
    plan.validate();
    std::size_t n = plan.sizes.front();
    std::vector<double> est(plan.replicates);
    for (std::size_t r = 0; r < plan.replicates; ++r)
        est[r] = estimator(detail::draw_replicate(plan, n, r));
    double mean = sample_mean(est);
    double var = est.size() > 1 ? sample_variance(est, /*population=*/true) : 0.0;
    RiskReport rep;
    rep.bias = mean - theta_true;
    rep.variance = var;
    rep.mse = 0.0;
    for (double e : est) rep.mse += (e - theta_true) * (e - theta_true);
    rep.mse /= double(est.size());
    rep.se_of_mean = est.size() > 1
                         ? std::sqrt(sample_variance(est) / double(est.size()))
                         : 0.0;
    return rep;
}

} // namespace statkit

#endif
