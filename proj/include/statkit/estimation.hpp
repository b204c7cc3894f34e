#ifndef STATKIT_ESTIMATION_HPP
#define STATKIT_ESTIMATION_HPP

// Point estimation for one-parameter families: closed-form MLE/MoM where
// the forms exist, MAP under discrete or Beta priors, Fisher information,
// CRLB, efficiency, sufficient statistics, and a guarded golden-section
// maximizer used to cross-check the closed forms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "statkit/distributions.hpp"
#include "statkit/errors.hpp"

namespace statkit {

enum class ParametricFamily {
    bernoulli,         // theta in [0,1]
    poisson,           // theta > 0
    exponential,       // theta > 0 (rate)
    uniform_zero_theta,// theta > 0, support [0, theta]
    normal_known_var,  // theta = mean; variance supplied separately
};

struct FamilySpec {
    ParametricFamily family;
    double known_variance = 1.0; // normal_known_var only
};

enum class EstimationMethod { mle, mom, map };

struct EstimatorReport {
    double theta_hat = 0.0;
    double log_likelihood = 0.0;
    EstimationMethod method = EstimationMethod::mle;
    bool boundary = false;        // maximizer sits on the parameter boundary
    bool fisher_infinite = false; // information flagged +inf at the boundary
    double fisher_information = std::numeric_limits<double>::quiet_NaN();
    double crlb = std::numeric_limits<double>::quiet_NaN();
    double efficiency = std::numeric_limits<double>::quiet_NaN();
    bool impossible = false; // MoM estimate excluded by the data (Unif case)
};

namespace detail {

inline void check_data(const FamilySpec& f, const std::vector<double>& data) {
    if (data.empty()) throw domain_error("estimation: empty data");
    for (double x : data) {
        if (!std::isfinite(x)) throw domain_error("estimation: non-finite observation");
        switch (f.family) {
        case ParametricFamily::bernoulli:
            if (x != 0.0 && x != 1.0)
                throw domain_error("estimation: bernoulli data must be 0/1");
            break;
        case ParametricFamily::poisson:
            if (x < 0.0 || x != std::floor(x))
                throw domain_error("estimation: poisson data must be counts");
            break;
        case ParametricFamily::exponential:
        case ParametricFamily::uniform_zero_theta:
            if (x < 0.0) throw domain_error("estimation: data must be non-negative");
            break;
        case ParametricFamily::normal_known_var:
            break;
        }
    }
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

} // namespace detail

/// Sum of log mass/density; -infinity when any point has zero likelihood.
inline double log_likelihood(const FamilySpec& f, double theta,
                             const std::vector<double>& data) {
    detail::check_data(f, data);
    double n = double(data.size());
    double sum = 0.0;
    for (double x : data) sum += x;
    switch (f.family) {
    case ParametricFamily::bernoulli: {
        if (theta < 0.0 || theta > 1.0)
            throw domain_error("log_likelihood: theta outside [0,1]");
        double ones = sum, zeros = n - sum;
        double ll = 0.0;
        if (ones > 0.0)
            ll += (theta == 0.0) ? -std::numeric_limits<double>::infinity()
                                 : ones * std::log(theta);
        if (zeros > 0.0)
            ll += (theta == 1.0) ? -std::numeric_limits<double>::infinity()
                                 : zeros * std::log1p(-theta);
        return ll;
    }
    case ParametricFamily::poisson: {
        if (theta <= 0.0) throw domain_error("log_likelihood: rate must be positive");
        double ll = -n * theta + sum * std::log(theta);
        for (double x : data) ll -= log_factorial(unsigned(x));
        return ll;
    }
    case ParametricFamily::exponential: {
        if (theta <= 0.0) throw domain_error("log_likelihood: rate must be positive");
        return n * std::log(theta) - theta * sum;
    }
    case ParametricFamily::uniform_zero_theta: {
        if (theta <= 0.0) throw domain_error("log_likelihood: theta must be positive");
        double mx = *std::max_element(data.begin(), data.end());
        if (mx > theta) return -std::numeric_limits<double>::infinity();
        return -n * std::log(theta);
    }
    case ParametricFamily::normal_known_var: {
        double s2 = f.known_variance;
        double ll = -0.5 * n * std::log(2.0 * pi * s2);
        for (double x : data) ll -= (x - theta) * (x - theta) / (2.0 * s2);
        return ll;
    }
    }
    throw domain_error("log_likelihood: unknown family");
}

/// Fisher information of an n-point sample at theta. The Unif(0,theta)
/// family is non-regular (support depends on theta) and has no information.
inline double fisher_information(const FamilySpec& f, double theta, std::size_t n) {
    if (n < 1) throw domain_error("fisher_information: n must be >= 1");
    switch (f.family) {
    case ParametricFamily::bernoulli:
        if (theta <= 0.0 || theta >= 1.0)
            throw domain_error("fisher_information: theta must lie in (0,1)");
        return double(n) / (theta * (1.0 - theta));
    case ParametricFamily::poisson:
        if (theta <= 0.0) throw domain_error("fisher_information: rate must be positive");
        return double(n) / theta;
    case ParametricFamily::exponential:
        if (theta <= 0.0) throw domain_error("fisher_information: rate must be positive");
        return double(n) / (theta * theta);
    case ParametricFamily::normal_known_var:
        return double(n) / f.known_variance;
    case ParametricFamily::uniform_zero_theta:
        throw undefined_moment(
            "fisher_information: Unif(0,theta) is non-regular (support depends on theta)");
    }
    throw domain_error("fisher_information: unknown family");
}

/// e = (1/I) / Var(estimator); 1 means the CRLB is met.
inline double efficiency(const FamilySpec& f, double estimator_variance, double theta,
                         std::size_t n) {
    if (estimator_variance <= 0.0)
        throw domain_error("efficiency: estimator variance must be positive");
    return 1.0 / (fisher_information(f, theta, n) * estimator_variance);
}

inline double sufficient_statistic(const FamilySpec& f,
                                   const std::vector<double>& data) {
    detail::check_data(f, data);
    switch (f.family) {
    case ParametricFamily::bernoulli:
    case ParametricFamily::poisson:
    case ParametricFamily::exponential:
    case ParametricFamily::normal_known_var: {
        double s = 0.0;
        for (double x : data) s += x;
        return s;
    }
    case ParametricFamily::uniform_zero_theta:
        return *std::max_element(data.begin(), data.end());
    }
    throw domain_error("sufficient_statistic: unknown family");
}

namespace detail {

inline void attach_information(EstimatorReport& rep, const FamilySpec& f,
                               std::size_t n) {
    if (f.family == ParametricFamily::uniform_zero_theta) return;
    bool interior = true;
    if (f.family == ParametricFamily::bernoulli)
        interior = rep.theta_hat > 0.0 && rep.theta_hat < 1.0;
    else if (f.family != ParametricFamily::normal_known_var)
        interior = rep.theta_hat > 0.0;
    if (!interior) {
        rep.fisher_infinite = true;
        rep.fisher_information = std::numeric_limits<double>::infinity();
        rep.crlb = 0.0;
        return;
    }
    rep.fisher_information = fisher_information(f, rep.theta_hat, n);
    rep.crlb = 1.0 / rep.fisher_information;
}

} // namespace detail

inline EstimatorReport mle(const FamilySpec& f, const std::vector<double>& data) {
    detail::check_data(f, data);
    EstimatorReport rep;
    rep.method = EstimationMethod::mle;
    double m = detail::mean_of(data);
    switch (f.family) {
    case ParametricFamily::bernoulli:
        rep.theta_hat = m;
        rep.boundary = (m == 0.0 || m == 1.0);
        break;
    case ParametricFamily::poisson:
        rep.theta_hat = m;
        rep.boundary = (m == 0.0);
        break;
    case ParametricFamily::exponential:
        if (m <= 0.0) throw domain_error("mle: exponential data sum to zero");
        rep.theta_hat = 1.0 / m;
        break;
    case ParametricFamily::uniform_zero_theta:
        rep.theta_hat = *std::max_element(data.begin(), data.end());
        rep.boundary = true; // boundary maximizer, not a stationary point
        if (rep.theta_hat <= 0.0) throw domain_error("mle: all observations are zero");
        break;
    case ParametricFamily::normal_known_var:
        rep.theta_hat = m;
        break;
    }
    rep.log_likelihood = log_likelihood(f, rep.theta_hat, data);
    detail::attach_information(rep, f, data.size());
    return rep;
}

inline EstimatorReport mom(const FamilySpec& f, const std::vector<double>& data) {
    detail::check_data(f, data);
    EstimatorReport rep;
    rep.method = EstimationMethod::mom;
    double m = detail::mean_of(data);
    switch (f.family) {
    case ParametricFamily::bernoulli:
    case ParametricFamily::poisson:
    case ParametricFamily::normal_known_var:
        rep.theta_hat = m;
        break;
    case ParametricFamily::exponential:
        if (m <= 0.0) throw domain_error("mom: exponential data sum to zero");
        rep.theta_hat = 1.0 / m;
        break;
    case ParametricFamily::uniform_zero_theta: {
        rep.theta_hat = 2.0 * m;
        double mx = *std::max_element(data.begin(), data.end());
        rep.impossible = rep.theta_hat < mx;
        break;
    }
    }
    rep.log_likelihood = log_likelihood(f, rep.theta_hat, data);
    if (rep.log_likelihood == -std::numeric_limits<double>::infinity())
        rep.impossible = true;
    detail::attach_information(rep, f, data.size());
    return rep;
}

// ---- MAP ----

struct DiscretePrior {
    std::vector<double> thetas;
    std::vector<double> weights; // sums to 1
};

struct BetaPrior {
    double alpha;
    double beta;
};

/// Discrete-prior MAP: exact argmax of prior x likelihood over the table;
/// ties resolved toward the smallest theta.
inline EstimatorReport map_estimate(const FamilySpec& f,
                                    const std::vector<double>& data,
                                    const DiscretePrior& prior) {
    detail::check_data(f, data);
    if (prior.thetas.size() != prior.weights.size() || prior.thetas.empty())
        throw invalid_parameter("map: malformed discrete prior");
    double wsum = 0.0;
    for (double w : prior.weights) {
        if (w < 0.0) throw invalid_parameter("map: negative prior weight");
        wsum += w;
    }
    if (std::fabs(wsum - 1.0) > 1e-12)
        throw invalid_parameter("map: prior weights must sum to 1");

    std::vector<std::size_t> order(prior.thetas.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return prior.thetas[a] < prior.thetas[b];
    });

    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_i = order.front();
    bool any = false;
    for (std::size_t i : order) {
        if (prior.weights[i] <= 0.0) continue;
        double lp = std::log(prior.weights[i]) + log_likelihood(f, prior.thetas[i], data);
        if (lp > best) { // strict: ties keep the smallest theta
            best = lp;
            best_i = i;
            any = lp > -std::numeric_limits<double>::infinity();
        }
    }
    if (!any) throw conditioning_error("map: posterior mass is zero everywhere");
    EstimatorReport rep;
    rep.method = EstimationMethod::map;
    rep.theta_hat = prior.thetas[best_i];
    rep.log_likelihood = log_likelihood(f, rep.theta_hat, data);
    detail::attach_information(rep, f, data.size());
    return rep;
}

/// Beta-prior MAP for Bernoulli data: posterior mode
/// (alpha - 1 + sum x) / (alpha + beta - 2 + n) when defined.
inline EstimatorReport map_estimate(const FamilySpec& f,
                                    const std::vector<double>& data,
                                    const BetaPrior& prior) {
    if (f.family != ParametricFamily::bernoulli)
        throw invalid_parameter("map: Beta prior applies to the Bernoulli family");
    detail::check_data(f, data);
    if (prior.alpha <= 0.0 || prior.beta <= 0.0)
        throw invalid_parameter("map: Beta prior parameters must be positive");
    double n = double(data.size());
    double s = 0.0;
    for (double x : data) s += x;
    double a = prior.alpha + s, b = prior.beta + (n - s);
    EstimatorReport rep;
    rep.method = EstimationMethod::map;
    if (a + b <= 2.0 || a < 1.0 || b < 1.0) {
        // Posterior mode sits at a boundary (or the density is flat).
        if (a >= b) rep.theta_hat = a > 1.0 ? 1.0 : 0.5;
        else rep.theta_hat = 0.0;
        rep.boundary = true;
    } else {
        rep.theta_hat = (a - 1.0) / (a + b - 2.0);
    }
    rep.log_likelihood = log_likelihood(f, rep.theta_hat, data);
    detail::attach_information(rep, f, data.size());
    return rep;
}

/// Mode of a Beta(alpha, beta) belief with alpha, beta > 1.
inline double beta_mode(double alpha, double beta) {
    if (!(alpha > 1.0 && beta > 1.0))
        throw domain_error("beta_mode: defined for alpha, beta > 1");
    return (alpha - 1.0) / (alpha + beta - 2.0);
}

/// Golden-section maximizer of the log-likelihood over [lo, hi]; numeric
/// fallback used to cross-check the closed forms.
inline double numeric_mle(const FamilySpec& f, const std::vector<double>& data,
                          double lo, double hi, double tol = 1e-10,
                          int max_iter = 200) {
    detail::check_data(f, data);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = log_likelihood(f, c, data);
    double fd = log_likelihood(f, d, data);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = log_likelihood(f, c, data);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = log_likelihood(f, d, data);
        }
    }
    return 0.5 * (a + b);
}

} // namespace statkit

#endif
