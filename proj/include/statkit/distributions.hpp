#ifndef STATKIT_DISTRIBUTIONS_HPP
#define STATKIT_DISTRIBUTIONS_HPP

// Parameter-validated distribution families with PMF/PDF, CDF, quantile,
// closed-form moments, and deterministic inverse-transform sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "statkit/errors.hpp"
#include "statkit/rng.hpp"
#include "statkit/special.hpp"

namespace statkit {

enum class Family {
    bernoulli,
    binomial,
    geometric,
    poisson,
    hypergeometric,
    negative_binomial,
    multinomial,
    discrete_uniform,
    continuous_uniform,
    exponential,
    normal,
    laplace,
    cauchy,
    gamma,
    chi_square,
    erlang,
    rayleigh,
    beta,
    dirichlet,
};

struct Moments {
    double mean;
    double variance;
};

struct Sample {
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::string provenance; // distribution descriptor or "external CSV"
};

namespace detail {

inline void require(bool ok, const char* msg) {
    if (!ok) throw invalid_parameter(msg);
}

inline bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

} // namespace detail

/// Tagged union over the supported families. Immutable after construction;
/// all member operations are pure functions.
class Distribution {
public:
    // ---- factories (validated) ----
    static Distribution bernoulli(double p) {
        detail::require(p >= 0.0 && p <= 1.0, "bernoulli: p must lie in [0,1]");
        return {Family::bernoulli, {p}};
    }
    static Distribution binomial(int n, double p) {
        detail::require(n >= 0, "binomial: n must be a non-negative integer");
        detail::require(p >= 0.0 && p <= 1.0, "binomial: p must lie in [0,1]");
        return {Family::binomial, {double(n), p}};
    }
    static Distribution geometric(double p) {
        detail::require(p > 0.0 && p <= 1.0, "geometric: p must lie in (0,1]");
        return {Family::geometric, {p}};
    }
    static Distribution poisson(double lambda) {
        detail::require(lambda > 0.0, "poisson: rate must be positive");
        return {Family::poisson, {lambda}};
    }
    static Distribution hypergeometric(int N, int K, int r) {
        detail::require(N >= 0 && K >= 0 && r >= 0,
                        "hypergeometric: counts must be non-negative integers");
        detail::require(K <= N, "hypergeometric: K must not exceed N");
        detail::require(r <= N, "hypergeometric: r must not exceed N");
        return {Family::hypergeometric, {double(N), double(K), double(r)}};
    }
    static Distribution negative_binomial(int r, double p) {
        detail::require(r >= 1, "negative_binomial: r must be a positive integer");
        detail::require(p > 0.0 && p <= 1.0, "negative_binomial: p must lie in (0,1]");
        return {Family::negative_binomial, {double(r), p}};
    }
    static Distribution multinomial(int n, std::vector<double> p) {
        detail::require(n >= 0, "multinomial: n must be a non-negative integer");
        detail::require(p.size() >= 2, "multinomial: needs at least two categories");
        double s = 0.0;
        for (double pi : p) {
            detail::require(pi >= 0.0 && pi <= 1.0, "multinomial: weights must lie in [0,1]");
            s += pi;
        }
        detail::require(std::fabs(s - 1.0) <= 1e-12, "multinomial: weights must sum to 1");
        std::vector<double> params{double(n)};
        params.insert(params.end(), p.begin(), p.end());
        return {Family::multinomial, std::move(params)};
    }
    static Distribution discrete_uniform(int a, int b) {
        detail::require(a < b, "discrete_uniform: requires a < b");
        return {Family::discrete_uniform, {double(a), double(b)}};
    }
    static Distribution continuous_uniform(double a, double b) {
        detail::require(std::isfinite(a) && std::isfinite(b) && a < b,
                        "continuous_uniform: requires finite a < b");
        return {Family::continuous_uniform, {a, b}};
    }
    static Distribution exponential(double lambda) {
        detail::require(lambda > 0.0, "exponential: rate must be positive");
        return {Family::exponential, {lambda}};
    }
    static Distribution normal(double mu, double sigma2) {
        detail::require(std::isfinite(mu), "normal: mean must be finite");
        detail::require(sigma2 > 0.0, "normal: variance must be positive");
        return {Family::normal, {mu, sigma2}};
    }
    static Distribution laplace(double mu, double sigma2) {
        detail::require(std::isfinite(mu), "laplace: location must be finite");
        detail::require(sigma2 > 0.0, "laplace: variance must be positive");
        return {Family::laplace, {mu, sigma2}};
    }
    static Distribution cauchy() { return {Family::cauchy, {}}; }
    static Distribution gamma(double alpha, double lambda) {
        detail::require(alpha > 0.0, "gamma: shape must be positive");
        detail::require(lambda > 0.0, "gamma: rate must be positive");
        return {Family::gamma, {alpha, lambda}};
    }
    static Distribution chi_square(int k) {
        detail::require(k >= 1, "chi_square: degrees of freedom must be a positive integer");
        return {Family::chi_square, {double(k)}};
    }
    static Distribution erlang(int n, double lambda) {
        detail::require(n >= 1, "erlang: order must be a positive integer");
        detail::require(lambda > 0.0, "erlang: rate must be positive");
        return {Family::erlang, {double(n), lambda}};
    }
    static Distribution rayleigh(double sigma2) {
        detail::require(sigma2 > 0.0, "rayleigh: scale must be positive");
        return {Family::rayleigh, {sigma2}};
    }
    static Distribution beta(double alpha, double b) {
        detail::require(alpha > 0.0 && b > 0.0, "beta: shapes must be positive");
        return {Family::beta, {alpha, b}};
    }
    static Distribution dirichlet(std::vector<double> alpha) {
        detail::require(alpha.size() >= 2, "dirichlet: needs at least two components");
        for (double a : alpha)
            detail::require(a > 0.0, "dirichlet: concentrations must be positive");
        return {Family::dirichlet, std::move(alpha)};
    }

    Family family() const { return family_; }
    const std::vector<double>& params() const { return params_; }

    bool is_discrete() const {
        switch (family_) {
        case Family::bernoulli:
        case Family::binomial:
        case Family::geometric:
        case Family::poisson:
        case Family::hypergeometric:
        case Family::negative_binomial:
        case Family::multinomial:
        case Family::discrete_uniform:
            return true;
        default:
            return false;
        }
    }

    bool is_vector() const {
        return family_ == Family::multinomial || family_ == Family::dirichlet;
    }

    // ---- PMF / PDF ----

    double mass_or_density(double x) const {
        if (!std::isfinite(x)) throw domain_error("mass_or_density: point must be finite");
        if (is_vector())
            throw domain_error("mass_or_density: family needs a vector support point");
        if (is_discrete() && !detail::is_integer(x))
            throw domain_error("mass_or_density: discrete family needs an integer point");
        switch (family_) {
        case Family::bernoulli: {
            double p = params_[0];
            if (x == 0.0) return 1.0 - p;
            if (x == 1.0) return p;
            return 0.0;
        }
        case Family::binomial: {
            double n = params_[0], p = params_[1];
            if (x < 0 || x > n) return 0.0;
            if (p == 0.0) return x == 0.0 ? 1.0 : 0.0;
            if (p == 1.0) return x == n ? 1.0 : 0.0;
            return std::exp(log_choose(n, x) + x * std::log(p) +
                            (n - x) * std::log1p(-p));
        }
        case Family::geometric: {
            double p = params_[0];
            if (x < 1) return 0.0;
            return std::exp(std::log(p) + (x - 1.0) * std::log1p(-p));
        }
        case Family::poisson: {
            double lam = params_[0];
            if (x < 0) return 0.0;
            return std::exp(-lam + x * std::log(lam) - log_factorial(unsigned(x)));
        }
        case Family::hypergeometric: {
            double N = params_[0], K = params_[1], r = params_[2];
            if (x < std::max(0.0, r - (N - K)) || x > std::min(K, r)) return 0.0;
            return std::exp(log_choose(K, x) + log_choose(N - K, r - x) -
                            log_choose(N, r));
        }
        case Family::negative_binomial: {
            // X = trial of the r-th success; support x = r, r+1, ...
            double r = params_[0], p = params_[1];
            if (x < r) return 0.0;
            return std::exp(log_choose(x - 1.0, r - 1.0) + r * std::log(p) +
                            (x - r) * std::log1p(-p));
        }
        case Family::discrete_uniform: {
            double a = params_[0], b = params_[1];
            if (x < a || x > b) return 0.0;
            return 1.0 / (b - a + 1.0);
        }
        case Family::continuous_uniform: {
            double a = params_[0], b = params_[1];
            return (x >= a && x <= b) ? 1.0 / (b - a) : 0.0;
        }
        case Family::exponential: {
            double lam = params_[0];
            return x >= 0.0 ? lam * std::exp(-lam * x) : 0.0;
        }
        case Family::normal: {
            double mu = params_[0], s = std::sqrt(params_[1]);
            return norm_pdf((x - mu) / s) / s;
        }
        case Family::laplace: {
            double mu = params_[0], b = laplace_scale();
            return std::exp(-std::fabs(x - mu) / b) / (2.0 * b);
        }
        case Family::cauchy:
            return 1.0 / (pi * (1.0 + x * x));
        case Family::gamma: {
            double a = params_[0], lam = params_[1];
            if (x < 0.0) return 0.0;
            if (x == 0.0) return a < 1.0 ? std::numeric_limits<double>::infinity()
                                         : (a == 1.0 ? lam : 0.0);
            return std::exp(a * std::log(lam) + (a - 1.0) * std::log(x) - lam * x -
                            log_gamma(a));
        }
        case Family::chi_square:
            return Distribution::gamma(params_[0] / 2.0, 0.5).mass_or_density(x);
        case Family::erlang:
            return Distribution::gamma(params_[0], params_[1]).mass_or_density(x);
        case Family::rayleigh: {
            double s2 = params_[0];
            return x >= 0.0 ? x / s2 * std::exp(-x * x / (2.0 * s2)) : 0.0;
        }
        case Family::beta: {
            double a = params_[0], b = params_[1];
            if (x < 0.0 || x > 1.0) return 0.0;
            if (x == 0.0 || x == 1.0) {
                double shape = (x == 0.0) ? a : b;
                if (shape < 1.0) return std::numeric_limits<double>::infinity();
                if (shape > 1.0) return 0.0;
            }
            return std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                            (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
        }
        default:
            throw domain_error("mass_or_density: unsupported family");
        }
    }

    /// Vector-support PMF/PDF for multinomial counts or dirichlet weights.
    double mass_or_density(std::span<const double> x) const {
        if (family_ == Family::multinomial) {
            double n = params_[0];
            std::size_t k = params_.size() - 1;
            if (x.size() != k)
                throw domain_error("multinomial: count vector has wrong length");
            double total = 0.0;
            for (double xi : x) {
                if (!detail::is_integer(xi) || xi < 0.0)
                    throw domain_error("multinomial: counts must be non-negative integers");
                total += xi;
            }
            if (total != n) return 0.0;
            double lp = log_factorial(unsigned(n));
            for (std::size_t i = 0; i < k; ++i) {
                double pi = params_[1 + i];
                if (x[i] > 0.0 && pi == 0.0) return 0.0;
                lp -= log_factorial(unsigned(x[i]));
                if (x[i] > 0.0) lp += x[i] * std::log(pi);
            }
            return std::exp(lp);
        }
        if (family_ == Family::dirichlet) {
            std::size_t r = params_.size();
            if (x.size() != r)
                throw domain_error("dirichlet: weight vector has wrong length");
            double s = 0.0, asum = 0.0, lp = 0.0;
            for (std::size_t i = 0; i < r; ++i) {
                if (x[i] < 0.0 || x[i] > 1.0) return 0.0;
                s += x[i];
                asum += params_[i];
                lp += (params_[i] - 1.0) * std::log(x[i]);
                lp -= log_gamma(params_[i]);
            }
            if (std::fabs(s - 1.0) > 1e-9) return 0.0;
            return std::exp(lp + log_gamma(asum));
        }
        if (x.size() == 1) return mass_or_density(x[0]);
        throw domain_error("mass_or_density: scalar family given a vector point");
    }

    // ---- CDF ----

    double cdf(double x) const {
        if (is_vector()) throw domain_error("cdf: undefined for vector families");
        if (std::isnan(x)) throw domain_error("cdf: point must not be NaN");
        switch (family_) {
        case Family::bernoulli:
        case Family::binomial: {
            double n = family_ == Family::bernoulli ? 1.0 : params_[0];
            double p = family_ == Family::bernoulli ? params_[0] : params_[1];
            double k = std::floor(x);
            if (k < 0.0) return 0.0;
            if (k >= n) return 1.0;
            if (p == 0.0) return 1.0;
            if (p == 1.0) return 0.0;
            return beta_inc(n - k, k + 1.0, 1.0 - p);
        }
        case Family::geometric: {
            double k = std::floor(x);
            if (k < 1.0) return 0.0;
            return -std::expm1(k * std::log1p(-params_[0]));
        }
        case Family::poisson: {
            double k = std::floor(x);
            if (k < 0.0) return 0.0;
            return gamma_q(k + 1.0, params_[0]);
        }
        case Family::hypergeometric:
        case Family::negative_binomial:
        case Family::discrete_uniform: {
            if (family_ == Family::negative_binomial) {
                double r = params_[0], p = params_[1], k = std::floor(x);
                if (k < r) return 0.0;
                if (k - r > 1e15) return 1.0; // far past any representable tail
                // r-th success by trial k  <=>  >= r successes in k trials.
                return beta_inc(r, k - r + 1.0, p);
            }
            if (family_ == Family::discrete_uniform) {
                double a = params_[0], b = params_[1], k = std::floor(x);
                if (k < a) return 0.0;
                if (k >= b) return 1.0;
                return (k - a + 1.0) / (b - a + 1.0);
            }
            double c = 0.0, k = std::floor(x);
            double lo = std::max(0.0, params_[2] - (params_[0] - params_[1]));
            double hi = std::min(params_[1], params_[2]);
            if (k < lo) return 0.0;
            if (k >= hi) return 1.0;
            for (double j = lo; j <= k; ++j) c += mass_or_density(j);
            return std::min(1.0, c);
        }
        case Family::continuous_uniform: {
            double a = params_[0], b = params_[1];
            if (x <= a) return 0.0;
            if (x >= b) return 1.0;
            return (x - a) / (b - a);
        }
        case Family::exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-params_[0] * x);
        case Family::normal:
            return norm_cdf((x - params_[0]) / std::sqrt(params_[1]));
        case Family::laplace: {
            double b = laplace_scale(), z = x - params_[0];
            if (z < 0.0) return 0.5 * std::exp(z / b);
            return 1.0 - 0.5 * std::exp(-z / b);
        }
        case Family::cauchy:
            return 0.5 + std::atan(x) / pi;
        case Family::gamma:
            return x <= 0.0 ? 0.0 : gamma_p(params_[0], params_[1] * x);
        case Family::chi_square:
            return x <= 0.0 ? 0.0 : gamma_p(params_[0] / 2.0, 0.5 * x);
        case Family::erlang:
            return x <= 0.0 ? 0.0 : gamma_p(params_[0], params_[1] * x);
        case Family::rayleigh:
            return x <= 0.0 ? 0.0 : -std::expm1(-x * x / (2.0 * params_[0]));
        case Family::beta:
            return beta_inc(params_[0], params_[1], std::clamp(x, 0.0, 1.0));
        default:
            throw domain_error("cdf: unsupported family");
        }
    }

    // ---- Quantile: least x with cdf(x) >= u ----

    double quantile(double u) const {
        if (!(u > 0.0 && u < 1.0))
            throw domain_error("quantile: level must lie strictly in (0,1)");
        if (is_vector()) throw domain_error("quantile: undefined for vector families");
        switch (family_) {
        case Family::bernoulli:
            return u <= 1.0 - params_[0] ? 0.0 : 1.0;
        case Family::binomial:
        case Family::poisson:
        case Family::hypergeometric:
        case Family::negative_binomial:
            return discrete_quantile_walk(u);
        case Family::geometric: {
            double p = params_[0];
            if (p == 1.0) return 1.0;
            double k = std::ceil(std::log1p(-u) / std::log1p(-p));
            if (k < 1.0) k = 1.0;
            // Guard against ties at the boundary of the ceil.
            while (cdf(k - 1.0) >= u) k -= 1.0;
            while (cdf(k) < u) k += 1.0;
            return k;
        }
        case Family::discrete_uniform: {
            double a = params_[0], b = params_[1], m = b - a + 1.0;
            double k = a + std::ceil(u * m) - 1.0;
            return std::clamp(k, a, b);
        }
        case Family::continuous_uniform:
            return params_[0] + u * (params_[1] - params_[0]);
        case Family::exponential:
            return -std::log1p(-u) / params_[0];
        case Family::normal:
            return params_[0] + std::sqrt(params_[1]) * norm_quantile(u);
        case Family::laplace: {
            double b = laplace_scale();
            if (u < 0.5) return params_[0] + b * std::log(2.0 * u);
            return params_[0] - b * std::log(2.0 * (1.0 - u));
        }
        case Family::cauchy:
            return std::tan(pi * (u - 0.5));
        case Family::gamma:
            return gamma_p_inv(params_[0], u) / params_[1];
        case Family::chi_square:
            return 2.0 * gamma_p_inv(params_[0] / 2.0, u);
        case Family::erlang:
            return gamma_p_inv(params_[0], u) / params_[1];
        case Family::rayleigh:
            return std::sqrt(-2.0 * params_[0] * std::log1p(-u));
        case Family::beta:
            return beta_inc_inv(params_[0], params_[1], u);
        default:
            throw domain_error("quantile: unsupported family");
        }
    }

    // ---- Moments ----

    Moments moments() const {
        switch (family_) {
        case Family::bernoulli: {
            double p = params_[0];
            return {p, p * (1.0 - p)};
        }
        case Family::binomial: {
            double n = params_[0], p = params_[1];
            return {n * p, n * p * (1.0 - p)};
        }
        case Family::geometric: {
            double p = params_[0];
            return {1.0 / p, (1.0 - p) / (p * p)};
        }
        case Family::poisson:
            return {params_[0], params_[0]};
        case Family::hypergeometric: {
            double N = params_[0], K = params_[1], r = params_[2];
            double f = K / N;
            double var = (N > 1) ? r * f * (1.0 - f) * (N - r) / (N - 1.0) : 0.0;
            return {r * f, var};
        }
        case Family::negative_binomial: {
            double r = params_[0], p = params_[1];
            return {r / p, r * (1.0 - p) / (p * p)};
        }
        case Family::discrete_uniform: {
            double a = params_[0], b = params_[1], m = b - a + 1.0;
            return {0.5 * (a + b), (m * m - 1.0) / 12.0};
        }
        case Family::continuous_uniform: {
            double a = params_[0], b = params_[1];
            return {0.5 * (a + b), (b - a) * (b - a) / 12.0};
        }
        case Family::exponential: {
            double lam = params_[0];
            return {1.0 / lam, 1.0 / (lam * lam)};
        }
        case Family::normal:
            return {params_[0], params_[1]};
        case Family::laplace:
            return {params_[0], params_[1]};
        case Family::cauchy:
            throw undefined_moment("cauchy: mean and variance do not exist");
        case Family::gamma: {
            double a = params_[0], lam = params_[1];
            return {a / lam, a / (lam * lam)};
        }
        case Family::chi_square:
            return {params_[0], 2.0 * params_[0]};
        case Family::erlang: {
            double n = params_[0], lam = params_[1];
            return {n / lam, n / (lam * lam)};
        }
        case Family::rayleigh: {
            double s = std::sqrt(params_[0]);
            return {s * std::sqrt(pi / 2.0), (2.0 - pi / 2.0) * params_[0]};
        }
        case Family::beta: {
            double a = params_[0], b = params_[1];
            double m = a / (a + b);
            return {m, a * b / ((a + b) * (a + b) * (a + b + 1.0))};
        }
        default:
            throw undefined_moment("moments: undefined for vector families");
        }
    }

    // ---- Sampling ----

    /// n inverse-transform draws on the counter stream (seed, draw index).
    Sample sample(std::size_t n, std::uint64_t seed) const {
        if (n < 1) throw domain_error("sample: need at least one draw");
        if (is_vector())
            throw domain_error("sample: scalar sampling undefined for vector families; "
                               "use sample_vector");
        std::uint64_t key = stream_key(seed);
        Sample s;
        s.seed = seed;
        s.provenance = name();
        s.values.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.values[i] = quantile(stream_u01(key, i));
        return s;
    }

    /// Vector draws for multinomial (counts) and dirichlet (weights).
    std::vector<std::vector<double>> sample_vector(std::size_t n,
                                                   std::uint64_t seed) const {
        if (!is_vector())
            throw domain_error("sample_vector: only for multinomial/dirichlet");
        std::vector<std::vector<double>> out(n);
        if (family_ == Family::dirichlet) {
            std::size_t r = params_.size();
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<double> g(r);
                double total = 0.0;
                for (std::size_t j = 0; j < r; ++j) {
                    std::uint64_t key = stream_key(seed, {i, j});
                    g[j] = gamma_p_inv(params_[j], stream_u01(key, 0));
                    total += g[j];
                }
                for (double& v : g) v /= total;
                out[i] = std::move(g);
            }
            return out;
        }
        // Multinomial: sequential conditional binomials.
        int n_trials = int(params_[0]);
        std::size_t k = params_.size() - 1;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> counts(k, 0.0);
            int remaining = n_trials;
            double pleft = 1.0;
            for (std::size_t j = 0; j + 1 < k && remaining > 0; ++j) {
                double pj = std::clamp(params_[1 + j] / pleft, 0.0, 1.0);
                std::uint64_t key = stream_key(seed, {i, j});
                double u = stream_u01(key, 0);
                double c = (pj >= 1.0) ? remaining
                                       : Distribution::binomial(remaining, pj).quantile(u);
                counts[j] = c;
                remaining -= int(c);
                pleft -= params_[1 + j];
            }
            counts[k - 1] = remaining;
            out[i] = std::move(counts);
        }
        return out;
    }

    // ---- Support ----

    double support_lo() const {
        switch (family_) {
        case Family::bernoulli: return 0.0;
        case Family::binomial: return 0.0;
        case Family::geometric: return 1.0;
        case Family::poisson: return 0.0;
        case Family::hypergeometric:
            return std::max(0.0, params_[2] - (params_[0] - params_[1]));
        case Family::negative_binomial: return params_[0];
        case Family::discrete_uniform: return params_[0];
        case Family::continuous_uniform: return params_[0];
        case Family::exponential: return 0.0;
        case Family::normal:
        case Family::laplace:
        case Family::cauchy:
            return -std::numeric_limits<double>::infinity();
        case Family::gamma:
        case Family::chi_square:
        case Family::erlang:
        case Family::rayleigh:
            return 0.0;
        case Family::beta: return 0.0;
        default: throw domain_error("support_lo: undefined for vector families");
        }
    }

    double support_hi() const {
        switch (family_) {
        case Family::bernoulli: return 1.0;
        case Family::binomial: return params_[0];
        case Family::hypergeometric: return std::min(params_[1], params_[2]);
        case Family::discrete_uniform: return params_[1];
        case Family::continuous_uniform: return params_[1];
        case Family::beta: return 1.0;
        case Family::geometric:
        case Family::poisson:
        case Family::negative_binomial:
        case Family::exponential:
        case Family::normal:
        case Family::laplace:
        case Family::cauchy:
        case Family::gamma:
        case Family::chi_square:
        case Family::erlang:
        case Family::rayleigh:
            return std::numeric_limits<double>::infinity();
        default: throw domain_error("support_hi: undefined for vector families");
        }
    }

    /// Enumerated support of a scalar discrete family, truncated where the
    /// remaining tail mass drops below tail_tol (infinite supports only).
    std::vector<double> discrete_support(double tail_tol = 1e-12) const {
        if (!is_discrete() || is_vector())
            throw domain_error("discrete_support: scalar discrete families only");
        std::vector<double> xs;
        double lo = support_lo();
        double hi = support_hi();
        if (std::isinf(hi)) {
            double x = lo;
            while (cdf(x) < 1.0 - tail_tol) {
                xs.push_back(x);
                x += 1.0;
                if (xs.size() > 20'000'000)
                    throw domain_error("discrete_support: truncation bound too large");
            }
            xs.push_back(x);
        } else {
            for (double x = lo; x <= hi; x += 1.0) xs.push_back(x);
        }
        return xs;
    }

    // ---- Serialization (schema: schemas/distribution.schema.json) ----

    std::string name() const {
        switch (family_) {
        case Family::bernoulli: return "bernoulli";
        case Family::binomial: return "binomial";
        case Family::geometric: return "geometric";
        case Family::poisson: return "poisson";
        case Family::hypergeometric: return "hypergeometric";
        case Family::negative_binomial: return "negative_binomial";
        case Family::multinomial: return "multinomial";
        case Family::discrete_uniform: return "discrete_uniform";
        case Family::continuous_uniform: return "continuous_uniform";
        case Family::exponential: return "exponential";
        case Family::normal: return "normal";
        case Family::laplace: return "laplace";
        case Family::cauchy: return "cauchy";
        case Family::gamma: return "gamma";
        case Family::chi_square: return "chi_square";
        case Family::erlang: return "erlang";
        case Family::rayleigh: return "rayleigh";
        case Family::beta: return "beta";
        case Family::dirichlet: return "dirichlet";
        }
        return "?";
    }

    nlohmann::json to_json() const {
        nlohmann::json p;
        switch (family_) {
        case Family::bernoulli: p["p"] = params_[0]; break;
        case Family::binomial: p["n"] = int(params_[0]); p["p"] = params_[1]; break;
        case Family::geometric: p["p"] = params_[0]; break;
        case Family::poisson: p["lambda"] = params_[0]; break;
        case Family::hypergeometric:
            p["N"] = int(params_[0]); p["K"] = int(params_[1]); p["r"] = int(params_[2]);
            break;
        case Family::negative_binomial:
            p["r"] = int(params_[0]); p["p"] = params_[1];
            break;
        case Family::multinomial: {
            p["n"] = int(params_[0]);
            p["weights"] = std::vector<double>(params_.begin() + 1, params_.end());
            break;
        }
        case Family::discrete_uniform:
            p["a"] = int(params_[0]); p["b"] = int(params_[1]);
            break;
        case Family::continuous_uniform: p["a"] = params_[0]; p["b"] = params_[1]; break;
        case Family::exponential: p["lambda"] = params_[0]; break;
        case Family::normal: p["mu"] = params_[0]; p["sigma2"] = params_[1]; break;
        case Family::laplace: p["mu"] = params_[0]; p["sigma2"] = params_[1]; break;
        case Family::cauchy: break;
        case Family::gamma: p["alpha"] = params_[0]; p["lambda"] = params_[1]; break;
        case Family::chi_square: p["k"] = int(params_[0]); break;
        case Family::erlang: p["n"] = int(params_[0]); p["lambda"] = params_[1]; break;
        case Family::rayleigh: p["sigma2"] = params_[0]; break;
        case Family::beta: p["alpha"] = params_[0]; p["beta"] = params_[1]; break;
        case Family::dirichlet: p["alpha"] = params_; break;
        }
        return nlohmann::json{{"family", name()}, {"params", p}};
    }

    static Distribution from_json(const nlohmann::json& j) {
        const std::string f = j.at("family").get<std::string>();
        const nlohmann::json& p = j.at("params");
        if (f == "bernoulli") return bernoulli(p.at("p").get<double>());
        if (f == "binomial")
            return binomial(p.at("n").get<int>(), p.at("p").get<double>());
        if (f == "geometric") return geometric(p.at("p").get<double>());
        if (f == "poisson") return poisson(p.at("lambda").get<double>());
        if (f == "hypergeometric")
            return hypergeometric(p.at("N").get<int>(), p.at("K").get<int>(),
                                  p.at("r").get<int>());
        if (f == "negative_binomial")
            return negative_binomial(p.at("r").get<int>(), p.at("p").get<double>());
        if (f == "multinomial")
            return multinomial(p.at("n").get<int>(),
                               p.at("weights").get<std::vector<double>>());
        if (f == "discrete_uniform")
            return discrete_uniform(p.at("a").get<int>(), p.at("b").get<int>());
        if (f == "continuous_uniform")
            return continuous_uniform(p.at("a").get<double>(), p.at("b").get<double>());
        if (f == "exponential") return exponential(p.at("lambda").get<double>());
        if (f == "normal")
            return normal(p.at("mu").get<double>(), p.at("sigma2").get<double>());
        if (f == "laplace")
            return laplace(p.at("mu").get<double>(), p.at("sigma2").get<double>());
        if (f == "cauchy") return cauchy();
        if (f == "gamma")
            return gamma(p.at("alpha").get<double>(), p.at("lambda").get<double>());
        if (f == "chi_square") return chi_square(p.at("k").get<int>());
        if (f == "erlang")
            return erlang(p.at("n").get<int>(), p.at("lambda").get<double>());
        if (f == "rayleigh") return rayleigh(p.at("sigma2").get<double>());
        if (f == "beta")
            return beta(p.at("alpha").get<double>(), p.at("beta").get<double>());
        if (f == "dirichlet")
            return dirichlet(p.at("alpha").get<std::vector<double>>());
        throw ingestion_error("unknown distribution family: " + f);
    }

private:
    Distribution(Family f, std::vector<double> params)
        : family_(f), params_(std::move(params)) {}

    // Normalized scale: variance sigma2 corresponds to scale b = sqrt(sigma2/2).
    double laplace_scale() const { return std::sqrt(params_[1] / 2.0); }

    double discrete_quantile_walk(double u) const {
        double x = support_lo();
        double c = 0.0;
        const double hi = support_hi();
        while (true) {
            c += mass_or_density(x);
            if (c >= u || x >= hi) return x;
            if (c >= 1.0 - 1e-15) return x;
            x += 1.0;
        }
    }

    Family family_;
    std::vector<double> params_;
};

/// Poisson(np): limit approximation of Binomial(n, p) for comparison runs.
inline Distribution poisson_approx_binomial(int n, double p) {
    if (n < 1) throw invalid_parameter("poisson_approx_binomial: n must be >= 1");
    if (!(p > 0.0 && p < 1.0))
        throw invalid_parameter("poisson_approx_binomial: p must lie in (0,1)");
    return Distribution::poisson(double(n) * p);
}

} // namespace statkit

#endif
