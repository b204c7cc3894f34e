#ifndef STATKIT_JOINT_HPP
#define STATKIT_JOINT_HPP

// Finite joint PMF tables: marginals, conditionals, event probabilities,
// joint construction from prior x kernel, Bayes updates, covariance and
// correlation, conditional expectation, the total-variance decomposition,
// and the standard bivariate normal conditional.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "statkit/csv.hpp"
#include "statkit/distributions.hpp"
#include "statkit/errors.hpp"
#include "statkit/transform.hpp"

namespace statkit {

enum class Axis { x, y };

class JointPmfTable {
public:
    JointPmfTable(std::vector<double> xs, std::vector<double> ys,
                  std::vector<std::vector<double>> p)
        : xs_(std::move(xs)), ys_(std::move(ys)), p_(std::move(p)) {
        if (p_.size() != xs_.size())
            throw invalid_parameter("joint table: row count must match x support");
        // compensated summation: the 1e-12 check must not drown in rounding
        double total = 0.0, comp = 0.0;
        for (const auto& row : p_) {
            if (row.size() != ys_.size())
                throw invalid_parameter("joint table: column count must match y support");
            for (double v : row) {
                if (v < 0.0 || !std::isfinite(v))
                    throw invalid_parameter("joint table: entries must be finite and >= 0");
                double t = total + v;
                comp += std::fabs(total) >= std::fabs(v) ? (total - t) + v
                                                         : (v - t) + total;
                total = t;
            }
        }
        total += comp;
        if (std::fabs(total - 1.0) > 1e-12)
            throw invalid_parameter("joint table: entries must sum to 1");
        if (xs_.size() * ys_.size() > 1'000'000)
            throw invalid_parameter("joint table: more than 1e6 cells");
    }

    const std::vector<double>& x_support() const { return xs_; }
    const std::vector<double>& y_support() const { return ys_; }
    double p(std::size_t i, std::size_t j) const { return p_[i][j]; }

    PmfTable marginal(Axis axis) const {
        PmfTable t;
        if (axis == Axis::x) {
            t.xs = xs_;
            t.ps.assign(xs_.size(), 0.0);
            for (std::size_t i = 0; i < xs_.size(); ++i)
                for (std::size_t j = 0; j < ys_.size(); ++j) t.ps[i] += p_[i][j];
        } else {
            t.xs = ys_;
            t.ps.assign(ys_.size(), 0.0);
            for (std::size_t j = 0; j < ys_.size(); ++j)
                for (std::size_t i = 0; i < xs_.size(); ++i) t.ps[j] += p_[i][j];
        }
        return t;
    }

    /// PMF of the other variable given axis == value; the conditioning slice
    /// must carry positive mass.
    PmfTable conditional(Axis given_axis, double value) const {
        PmfTable t;
        if (given_axis == Axis::y) {
            std::size_t j = index_of(ys_, value, "y");
            double mass = 0.0;
            for (std::size_t i = 0; i < xs_.size(); ++i) mass += p_[i][j];
            if (mass <= 0.0)
                throw conditioning_error("conditional: slice y=" + std::to_string(value) +
                                         " has zero mass");
            t.xs = xs_;
            for (std::size_t i = 0; i < xs_.size(); ++i) t.ps.push_back(p_[i][j] / mass);
        } else {
            std::size_t i = index_of(xs_, value, "x");
            double mass = 0.0;
            for (std::size_t j = 0; j < ys_.size(); ++j) mass += p_[i][j];
            if (mass <= 0.0)
                throw conditioning_error("conditional: slice x=" + std::to_string(value) +
                                         " has zero mass");
            t.xs = ys_;
            for (std::size_t j = 0; j < ys_.size(); ++j) t.ps.push_back(p_[i][j] / mass);
        }
        return t;
    }

    double event_probability(const std::function<bool(double, double)>& pred) const {
        double s = 0.0;
        for (std::size_t i = 0; i < xs_.size(); ++i)
            for (std::size_t j = 0; j < ys_.size(); ++j)
                if (pred(xs_[i], ys_[j])) s += p_[i][j];
        return s;
    }

    struct SecondOrder {
        double mean_x, mean_y;
        double var_x, var_y;
        double cov;
        double correlation;
        bool degenerate; // a variance fell below 1e-15; correlation reported 0
    };

    SecondOrder expectation_ops() const {
        SecondOrder r{};
        for (std::size_t i = 0; i < xs_.size(); ++i)
            for (std::size_t j = 0; j < ys_.size(); ++j) {
                r.mean_x += xs_[i] * p_[i][j];
                r.mean_y += ys_[j] * p_[i][j];
            }
        double exy = 0.0;
        for (std::size_t i = 0; i < xs_.size(); ++i)
            for (std::size_t j = 0; j < ys_.size(); ++j) {
                r.var_x += (xs_[i] - r.mean_x) * (xs_[i] - r.mean_x) * p_[i][j];
                r.var_y += (ys_[j] - r.mean_y) * (ys_[j] - r.mean_y) * p_[i][j];
                exy += xs_[i] * ys_[j] * p_[i][j];
            }
        r.cov = exy - r.mean_x * r.mean_y;
        r.degenerate = (r.var_x < 1e-15 || r.var_y < 1e-15);
        r.correlation = r.degenerate ? 0.0 : r.cov / std::sqrt(r.var_x * r.var_y);
        return r;
    }

    /// E(X | other = value) for every value of the conditioning axis with
    /// positive mass. given_axis names the conditioning variable.
    std::map<double, double> conditional_expectation(Axis given_axis) const {
        std::map<double, double> g;
        const auto& cond_support = (given_axis == Axis::y) ? ys_ : xs_;
        for (double v : cond_support) {
            double mass = slice_mass(given_axis, v);
            if (mass <= 0.0) continue;
            PmfTable c = conditional(given_axis, v);
            g[v] = c.mean();
        }
        return g;
    }

    struct VarianceDecomposition {
        double var_of_conditional_mean; // Var(E(X|Y))
        double mean_of_conditional_var; // E(Var(X|Y))
        double var_x;
    };

    /// Pieces of Var(X) = Var(E(X|Y)) + E(Var(X|Y)).
    VarianceDecomposition total_variance_check() const {
        VarianceDecomposition d{};
        PmfTable py = marginal(Axis::y);
        double ex = marginal(Axis::x).mean();
        for (std::size_t j = 0; j < ys_.size(); ++j) {
            if (py.ps[j] <= 0.0) continue;
            PmfTable c = conditional(Axis::y, ys_[j]);
            double m = c.mean();
            d.var_of_conditional_mean += (m - ex) * (m - ex) * py.ps[j];
            d.mean_of_conditional_var += c.variance() * py.ps[j];
        }
        d.var_x = marginal(Axis::x).variance();
        return d;
    }

private:
    static std::size_t index_of(const std::vector<double>& v, double value,
                                const char* axis) {
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] == value) return k;
        throw domain_error(std::string("joint table: ") + axis + "-value " +
                           std::to_string(value) + " not in support");
    }

    double slice_mass(Axis given_axis, double value) const {
        double m = 0.0;
        if (given_axis == Axis::y) {
            std::size_t j = index_of(ys_, value, "y");
            for (std::size_t i = 0; i < xs_.size(); ++i) m += p_[i][j];
        } else {
            std::size_t i = index_of(xs_, value, "x");
            for (std::size_t j = 0; j < ys_.size(); ++j) m += p_[i][j];
        }
        return m;
    }

    std::vector<double> xs_, ys_;
    std::vector<std::vector<double>> p_;
};

/// p(x, y) = prior(x) * kernel(x)(y).
inline JointPmfTable build_joint_from_conditional(
    const PmfTable& prior, const std::function<PmfTable(double)>& kernel) {
    std::map<double, std::size_t> ypos;
    std::vector<PmfTable> slices;
    slices.reserve(prior.xs.size());
    for (double x : prior.xs) {
        slices.push_back(kernel(x));
        for (double y : slices.back().xs) ypos.emplace(y, 0);
    }
    std::vector<double> ys;
    ys.reserve(ypos.size());
    for (auto& [y, pos] : ypos) {
        pos = ys.size();
        ys.push_back(y);
    }
    std::vector<std::vector<double>> p(prior.xs.size(),
                                       std::vector<double>(ys.size(), 0.0));
    for (std::size_t i = 0; i < prior.xs.size(); ++i)
        for (std::size_t k = 0; k < slices[i].xs.size(); ++k)
            p[i][ypos[slices[i].xs[k]]] = prior.ps[i] * slices[i].ps[k];
    return {prior.xs, ys, std::move(p)};
}

struct BayesResult {
    PmfTable posterior;
    double evidence;
};

/// posterior(theta) proportional to prior(theta) * likelihood(theta).
inline BayesResult bayes_update(const PmfTable& prior,
                                const std::function<double(double)>& likelihood) {
    BayesResult r;
    r.posterior.xs = prior.xs;
    r.posterior.ps.resize(prior.ps.size());
    r.evidence = 0.0;
    for (std::size_t i = 0; i < prior.xs.size(); ++i) {
        double w = likelihood(prior.xs[i]);
        if (w < 0.0) throw domain_error("bayes_update: negative likelihood");
        r.posterior.ps[i] = prior.ps[i] * w;
        r.evidence += r.posterior.ps[i];
    }
    if (r.evidence <= 0.0)
        throw conditioning_error("bayes_update: zero evidence");
    for (double& p : r.posterior.ps) p /= r.evidence;
    return r;
}

/// Total probability over a finite partition: sum p(B_i) P(A | B_i).
inline double total_probability(const std::vector<double>& priors,
                                const std::vector<double>& conditionals) {
    if (priors.size() != conditionals.size() || priors.empty())
        throw invalid_parameter("total_probability: size mismatch");
    double sp = 0.0, s = 0.0;
    for (std::size_t i = 0; i < priors.size(); ++i) {
        if (priors[i] < 0.0 || conditionals[i] < 0.0 || conditionals[i] > 1.0)
            throw invalid_parameter("total_probability: values out of range");
        sp += priors[i];
        s += priors[i] * conditionals[i];
    }
    if (std::fabs(sp - 1.0) > 1e-12)
        throw invalid_parameter("total_probability: partition priors must sum to 1");
    return s;
}

/// Standard bivariate normal with correlation rho; |rho| < 1.
struct BivariateNormalStd {
    double rho;
    explicit BivariateNormalStd(double r) : rho(r) {
        if (!(std::fabs(r) < 1.0))
            throw invalid_parameter("bivariate normal: |rho| must be < 1");
    }
};

/// Y | X = x is N(rho * x, 1 - rho^2).
inline Distribution bivariate_normal_conditional(const BivariateNormalStd& b,
                                                 double x) {
    return Distribution::normal(b.rho * x, 1.0 - b.rho * b.rho);
}

/// Conditional in original units when both marginals are N(mu, sigma^2) and
/// the standardized pair has correlation rho; x_std is the standardized
/// conditioning value.
inline Distribution bivariate_normal_conditional_rescaled(const BivariateNormalStd& b,
                                                          double x_std, double mu,
                                                          double sigma) {
    if (sigma <= 0.0) throw invalid_parameter("bivariate normal: sigma must be > 0");
    return Distribution::normal(mu + sigma * b.rho * x_std,
                                (1.0 - b.rho * b.rho) * sigma * sigma);
}

// ---- CSV loading: (x,y,p) triples or dense matrix with header row/col ----

inline JointPmfTable joint_from_triples(const CsvTable& t) {
    const auto& xs = t.column("x");
    const auto& ys = t.column("y");
    const auto& ps = t.column("p");
    std::map<double, std::size_t> xi, yi;
    for (double x : xs) xi.emplace(x, 0);
    for (double y : ys) yi.emplace(y, 0);
    std::vector<double> xv, yv;
    for (auto& [x, pos] : xi) {
        pos = xv.size();
        xv.push_back(x);
    }
    for (auto& [y, pos] : yi) {
        pos = yv.size();
        yv.push_back(y);
    }
    std::vector<std::vector<double>> p(xv.size(), std::vector<double>(yv.size(), 0.0));
    for (std::size_t r = 0; r < xs.size(); ++r) p[xi[xs[r]]][yi[ys[r]]] += ps[r];
    return {std::move(xv), std::move(yv), std::move(p)};
}

/// Dense layout: first header cell is a label, remaining header cells are
/// the y support; first column of each row is the x value.
inline JointPmfTable joint_from_dense(const CsvTable& t) {
    if (t.columns.size() < 2)
        throw ingestion_error("joint dense csv: needs a row label plus y columns");
    std::vector<double> ys;
    for (std::size_t c = 1; c < t.columns.size(); ++c) {
        try {
            ys.push_back(std::stod(t.columns[c]));
        } catch (...) {
            throw ingestion_error("joint dense csv: header cell '" + t.columns[c] +
                                  "' is not a y value");
        }
    }
    std::vector<double> xs = t.data[0];
    std::vector<std::vector<double>> p(xs.size(), std::vector<double>(ys.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) p[i][j] = t.data[j + 1][i];
    return {std::move(xs), std::move(ys), std::move(p)};
}

} // namespace statkit

#endif
