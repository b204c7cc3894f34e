#ifndef STATKIT_LINMODELS_HPP
#define STATKIT_LINMODELS_HPP

// Linear-model stack: moment-form simple regression, least squares with
// Gauss-Markov diagnostics, basis expansion, kernel ridge in the dual,
// logistic regression by damped IRLS, and multi-response fitting.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "statkit/errors.hpp"
#include "statkit/special.hpp"

namespace statkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Design matrices
// ---------------------------------------------------------------------------

struct DesignMatrix {
    MatrixXd X;                       // n x (d+1), first column ones by default
    std::vector<std::string> labels;  // one per column
};

/// Prepend the intercept column and label raw feature columns.
inline DesignMatrix make_design(const MatrixXd& features,
                                std::vector<std::string> names = {},
                                bool intercept = true) {
    DesignMatrix d;
    Eigen::Index n = features.rows(), p = features.cols();
    d.X.resize(n, p + (intercept ? 1 : 0));
    Eigen::Index at = 0;
    if (intercept) {
        d.X.col(0).setOnes();
        d.labels.emplace_back("intercept");
        at = 1;
    }
    for (Eigen::Index j = 0; j < p; ++j) {
        d.X.col(at + j) = features.col(j);
        d.labels.push_back(j < Eigen::Index(names.size()) ? names[j]
                                                          : "x" + std::to_string(j + 1));
    }
    return d;
}

enum class BasisKind { polynomial, sinusoidal };

/// Polynomial basis (x, x^2, ..., x^degree) or sinusoidal basis
/// (cos pi x, sin pi x, ..., cos m pi x, sin m pi x); intercept prepended
/// unless suppressed. Degree/order 0 yields the intercept-only design.
inline DesignMatrix basis_expand(const VectorXd& x, BasisKind kind, int order,
                                 bool intercept = true) {
    if (order < 0) throw invalid_parameter("basis_expand: order must be >= 0");
    Eigen::Index n = x.size();
    std::vector<std::string> names;
    Eigen::Index cols = (kind == BasisKind::polynomial) ? order : 2 * order;
    MatrixXd F(n, cols);
    if (kind == BasisKind::polynomial) {
        for (int k = 1; k <= order; ++k) {
            F.col(k - 1) = x.array().pow(double(k));
            names.push_back("x^" + std::to_string(k));
        }
    } else {
        for (int k = 1; k <= order; ++k) {
            F.col(2 * (k - 1)) = (double(k) * pi * x.array()).cos();
            F.col(2 * (k - 1) + 1) = (double(k) * pi * x.array()).sin();
            names.push_back("cos" + std::to_string(k) + "pix");
            names.push_back("sin" + std::to_string(k) + "pix");
        }
    }
    return make_design(F, names, intercept);
}

// ---------------------------------------------------------------------------
// Ordinary least squares + Gauss-Markov diagnostics
// ---------------------------------------------------------------------------

struct LinearFit {
    VectorXd theta;
    double s2 = 0.0;           // SSE / (n - d - 1)
    double r_squared = 0.0;    // 1 - SSE / TSS
    double sse = 0.0;
    MatrixXd coef_covariance;  // s^2 (X'X)^-1
    VectorXd std_errors;
    VectorXd t_statistics;
    Eigen::Index n = 0;
    Eigen::Index df_residual = 0;
    std::vector<std::string> labels;
    double condition_estimate = 0.0;
    bool condition_warning = false; // estimate above 1e8
};

/// Least squares via column-pivoted QR; (X'X)^-1 recovered from R by
/// triangular solves only for the covariance report.
inline LinearFit ols_fit(const DesignMatrix& design, const VectorXd& y) {
    const MatrixXd& X = design.X;
    if (X.rows() != y.size())
        throw invalid_parameter("ols_fit: row count mismatch between X and y");
    Eigen::Index n = X.rows(), p = X.cols();
    if (n <= p)
        throw invalid_parameter("ols_fit: needs more rows than columns for diagnostics");

    Eigen::ColPivHouseholderQR<MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) {
        Eigen::Index bad = qr.colsPermutation().indices()(qr.rank());
        std::string name = std::size_t(bad) < design.labels.size()
                               ? design.labels[std::size_t(bad)]
                               : ("column " + std::to_string(bad));
        throw singular_design("ols_fit: design is rank-deficient; column '" + name +
                              "' is a linear combination of earlier columns");
    }
    MatrixXd R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    double cond = std::numeric_limits<double>::infinity();
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < p; ++j) {
        double d = std::fabs(R(j, j));
        rmax = std::max(rmax, d);
        rmin = std::min(rmin, d);
    }
    if (rmin > 0.0) cond = rmax / rmin;
    if (cond > 1e12)
        throw singular_design("ols_fit: condition estimate " + std::to_string(cond) +
                              " exceeds 1e12");

    LinearFit fit;
    fit.labels = design.labels;
    fit.n = n;
    fit.df_residual = n - p;
    fit.condition_estimate = cond;
    fit.condition_warning = cond > 1e8;
    fit.theta = qr.solve(y);

    VectorXd resid = y - X * fit.theta;
    fit.sse = resid.squaredNorm();
    fit.s2 = fit.sse / double(fit.df_residual);

    double ybar = y.mean();
    double tss = (y.array() - ybar).square().sum();
    fit.r_squared = tss > 0.0 ? 1.0 - fit.sse / tss : 1.0;

    // (X'X)^-1 = P R^-1 R^-T P' with the pivoting permutation P.
    MatrixXd rinv = R.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(p, p));
    MatrixXd xtx_inv = rinv * rinv.transpose();
    MatrixXd Pm = qr.colsPermutation();
    xtx_inv = Pm * xtx_inv * Pm.transpose();
    fit.coef_covariance = fit.s2 * xtx_inv;

    fit.std_errors.resize(p);
    fit.t_statistics.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        fit.std_errors(j) = std::sqrt(fit.coef_covariance(j, j));
        fit.t_statistics(j) =
            fit.std_errors(j) > 0.0 ? fit.theta(j) / fit.std_errors(j)
                                    : std::numeric_limits<double>::infinity();
    }
    return fit;
}

struct TInterval {
    double t_statistic;
    double lower;
    double upper;
};

/// t statistic and 100(1-alpha)% interval for one coefficient.
inline TInterval slope_t_interval(const LinearFit& fit, Eigen::Index coef,
                                  double alpha) {
    if (coef < 0 || coef >= fit.theta.size())
        throw domain_error("slope_t_interval: coefficient index out of range");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("slope_t_interval: alpha must lie in (0,1)");
    double tcrit = t_quantile(1.0 - alpha / 2.0, double(fit.df_residual));
    double se = fit.std_errors(coef);
    return {fit.t_statistics(coef), fit.theta(coef) - tcrit * se,
            fit.theta(coef) + tcrit * se};
}

inline double r_squared(const LinearFit& fit) { return fit.r_squared; }

// ---------------------------------------------------------------------------
// Moment-form simple regression
// ---------------------------------------------------------------------------

struct SecondOrderMoments {
    double mean_x;
    double mean_y;
    double var_x;
    double cov_xy;
};

/// theta1 = Cov(X,Y)/Var(X), theta0 = E(Y) - theta1 E(X).
inline std::pair<double, double> sulm_moment_form(const SecondOrderMoments& m) {
    if (m.var_x <= 0.0) throw domain_error("sulm_moment_form: Var(X) must be positive");
    double slope = m.cov_xy / m.var_x;
    return {m.mean_y - slope * m.mean_x, slope};
}

// ---------------------------------------------------------------------------
// Kernels and kernel ridge
// ---------------------------------------------------------------------------

enum class KernelKind { linear, polynomial, gaussian };

struct KernelSpec {
    KernelKind kind = KernelKind::linear;
    double degree = 2.0;  // polynomial
    double offset = 1.0;  // polynomial
    double width = 1.0;   // gaussian
    double lambda = 1e-6; // ridge strength, > 0
};

inline double kernel_eval(const KernelSpec& spec, const VectorXd& a,
                          const VectorXd& b) {
    switch (spec.kind) {
    case KernelKind::linear: return a.dot(b);
    case KernelKind::polynomial: return std::pow(a.dot(b) + spec.offset, spec.degree);
    case KernelKind::gaussian: {
        double d2 = (a - b).squaredNorm();
        return std::exp(-d2 / (2.0 * spec.width * spec.width));
    }
    }
    throw domain_error("kernel_eval: unknown kernel");
}

inline MatrixXd gram_matrix(const KernelSpec& spec, const MatrixXd& rows) {
    Eigen::Index n = rows.rows();
    MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            double v = kernel_eval(spec, rows.row(i).transpose(), rows.row(j).transpose());
            K(i, j) = v;
            K(j, i) = v;
        }
    return K;
}

struct KernelRidgeFit {
    VectorXd alpha;   // dual coefficients, (K + lambda n I) alpha = y
    MatrixXd points;  // training rows
    KernelSpec spec;

    double predict(const VectorXd& x) const {
        double s = 0.0;
        for (Eigen::Index i = 0; i < points.rows(); ++i)
            s += alpha(i) * kernel_eval(spec, points.row(i).transpose(), x);
        return s;
    }
};

namespace detail {

// LDLT solve with an escalating jitter schedule on the diagonal:
// 1e-12 * trace/n, escalated x10 up to 1e-6 before giving up.
inline VectorXd solve_spd_with_jitter(MatrixXd A, const VectorXd& b) {
    double scale = A.trace() / double(A.rows());
    if (scale <= 0.0) scale = 1.0;
    Eigen::LDLT<MatrixXd> ldlt(A);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
        VectorXd x = ldlt.solve(b);
        if ((A * x - b).norm() <= 1e-8 * (b.norm() + 1.0)) return x;
    }
    for (double jitter = 1e-12; jitter <= 1e-6; jitter *= 10.0) {
        MatrixXd Aj = A + jitter * scale * MatrixXd::Identity(A.rows(), A.cols());
        Eigen::LDLT<MatrixXd> lj(Aj);
        if (lj.info() != Eigen::Success || !lj.isPositive()) continue;
        VectorXd x = lj.solve(b);
        if ((Aj * x - b).norm() <= 1e-8 * (b.norm() + 1.0)) return x;
    }
    throw singular_design("kernel solve: factorization failed after maximum jitter");
}

} // namespace detail

/// Dual-form ridge: alpha = (K + lambda n I)^-1 y. No intercept term.
inline KernelRidgeFit kernel_ridge_fit(const MatrixXd& rows, const VectorXd& y,
                                       const KernelSpec& spec) {
    if (spec.lambda <= 0.0)
        throw invalid_parameter("kernel_ridge_fit: lambda must be positive");
    if (rows.rows() != y.size())
        throw invalid_parameter("kernel_ridge_fit: row count mismatch");
    Eigen::Index n = rows.rows();
    MatrixXd K = gram_matrix(spec, rows);
    MatrixXd A = K + spec.lambda * double(n) * MatrixXd::Identity(n, n);
    KernelRidgeFit fit;
    fit.alpha = detail::solve_spd_with_jitter(std::move(A), y);
    fit.points = rows;
    fit.spec = spec;
    return fit;
}

// ---------------------------------------------------------------------------
// Logistic regression (labels in {-1, +1}) by damped Newton / IRLS
// ---------------------------------------------------------------------------

inline double sigmoid(double u) {
    if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
    double e = std::exp(u);
    return e / (1.0 + e);
}

inline double logistic_loss(double u) {
    // ln(1 + exp(-u)) evaluated stably.
    if (u > 0.0) return std::log1p(std::exp(-u));
    return -u + std::log1p(std::exp(u));
}

/// Primal regularized logistic objective (1/n) sum ln(1+exp(-y_i w'x_i)) +
/// lambda w'w and its gradient.
inline double logistic_objective(const MatrixXd& X, const VectorXd& y, double lambda,
                                 const VectorXd& w) {
    double s = 0.0;
    VectorXd u = X * w;
    for (Eigen::Index i = 0; i < X.rows(); ++i) s += logistic_loss(y(i) * u(i));
    return s / double(X.rows()) + lambda * w.squaredNorm();
}

inline VectorXd logistic_gradient(const MatrixXd& X, const VectorXd& y, double lambda,
                                  const VectorXd& w) {
    VectorXd u = X * w;
    VectorXd g = VectorXd::Zero(X.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        g -= sigmoid(-y(i) * u(i)) * y(i) * X.row(i).transpose();
    return VectorXd(g / double(X.rows()) + 2.0 * lambda * w);
}

struct LogisticFit {
    VectorXd weights;  // primal weights, or dual alpha when kernelized
    bool kernelized = false;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = std::numeric_limits<double>::infinity();
    double objective = std::numeric_limits<double>::infinity();
    double lambda = 0.0;
    std::vector<double> objective_history; // value after each accepted step
    MatrixXd points;   // training rows (kernelized predictions)
    KernelSpec spec;

    double decision_value(const VectorXd& x) const {
        if (!kernelized) return weights.dot(x);
        double s = 0.0;
        for (Eigen::Index i = 0; i < points.rows(); ++i)
            s += weights(i) * kernel_eval(spec, points.row(i).transpose(), x);
        return s;
    }
    double probability(const VectorXd& x) const { return sigmoid(decision_value(x)); }
};

namespace detail {

inline void check_labels(const VectorXd& y) {
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y(i) != 1.0 && y(i) != -1.0)
            throw invalid_parameter("logistic: labels must be -1 or +1");
}

} // namespace detail

/// Primal objective: (1/n) sum ln(1 + exp(-y_i w'x_i)) + lambda w'w.
/// Newton steps with step-halving; the objective never increases across
/// accepted steps.
inline LogisticFit logistic_fit_irls(const MatrixXd& X, const VectorXd& y,
                                     double lambda, double tol = 1e-8,
                                     int max_iter = 100) {
    detail::check_labels(y);
    if (lambda <= 0.0) throw invalid_parameter("logistic: lambda must be positive");
    if (X.rows() != y.size()) throw invalid_parameter("logistic: row count mismatch");
    Eigen::Index n = X.rows(), p = X.cols();

    VectorXd w = VectorXd::Zero(p);
    LogisticFit fit;
    fit.lambda = lambda;
    double obj = logistic_objective(X, y, lambda, w);
    fit.objective_history.push_back(obj);
    for (int it = 1; it <= max_iter; ++it) {
        VectorXd u = X * w;
        VectorXd g = logistic_gradient(X, y, lambda, w);
        fit.gradient_norm = g.norm();
        if (fit.gradient_norm < tol) {
            fit.converged = true;
            fit.iterations = it - 1;
            break;
        }
        MatrixXd H = 2.0 * lambda * MatrixXd::Identity(p, p);
        for (Eigen::Index i = 0; i < n; ++i) {
            double s = sigmoid(u(i)) * sigmoid(-u(i));
            H += (s / double(n)) * X.row(i).transpose() * X.row(i);
        }
        VectorXd step = detail::solve_spd_with_jitter(std::move(H), g);
        double t = 1.0;
        VectorXd w_new = w - step;
        double obj_new = logistic_objective(X, y, lambda, w_new);
        int halvings = 0;
        while (obj_new > obj && halvings < 30) {
            t *= 0.5;
            w_new = w - t * step;
            obj_new = logistic_objective(X, y, lambda, w_new);
            ++halvings;
        }
        if (obj_new > obj) { // no decrease found; report honestly
            fit.iterations = it;
            break;
        }
        w = w_new;
        obj = obj_new;
        fit.objective_history.push_back(obj);
        fit.iterations = it;
    }
    fit.weights = w;
    fit.objective = obj;
    fit.gradient_norm = logistic_gradient(X, y, lambda, w).norm();
    fit.converged = fit.gradient_norm < tol;
    return fit;
}

/// Kernelized variant on the dual objective
/// (1/n) sum ln(1 + exp(-y_i (K a)_i)) + (lambda/2) a'K a, whose damped
/// Newton step solves (W K + lambda n I) a = W z.
inline LogisticFit logistic_fit_irls_kernel(const MatrixXd& rows, const VectorXd& y,
                                            const KernelSpec& spec, double tol = 1e-8,
                                            int max_iter = 100) {
    detail::check_labels(y);
    if (spec.lambda <= 0.0) throw invalid_parameter("logistic: lambda must be positive");
    Eigen::Index n = rows.rows();
    MatrixXd K = gram_matrix(spec, rows);

    VectorXd a = VectorXd::Zero(n);
    auto objective = [&](const VectorXd& av) {
        VectorXd f = K * av;
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += logistic_loss(y(i) * f(i));
        return s / double(n) + 0.5 * spec.lambda * av.dot(f);
    };

    LogisticFit fit;
    fit.kernelized = true;
    fit.lambda = spec.lambda;
    fit.points = rows;
    fit.spec = spec;

    double obj = objective(a);
    fit.objective_history.push_back(obj);
    for (int it = 1; it <= max_iter; ++it) {
        VectorXd f = K * a;
        VectorXd pvec(n), wvec(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            pvec(i) = -sigmoid(-y(i) * f(i)) * y(i); // loss slope times label
            wvec(i) = sigmoid(f(i)) * sigmoid(-f(i));
        }
        VectorXd grad = (K * pvec) / double(n) + spec.lambda * (K * a);
        fit.gradient_norm = grad.norm();
        if (fit.gradient_norm < tol) {
            fit.converged = true;
            fit.iterations = it - 1;
            break;
        }
        // Working response z = K a - W^-1 p (guarding degenerate weights);
        // the solve matches the gradient (1/n) K p + lambda K a above.
        VectorXd z(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            double wi = std::max(wvec(i), 1e-12);
            z(i) = f(i) - pvec(i) / wi;
        }
        MatrixXd A = wvec.asDiagonal() * K +
                     spec.lambda * double(n) * MatrixXd::Identity(n, n);
        VectorXd a_target = A.partialPivLu().solve(wvec.asDiagonal() * z);
        VectorXd dir = a_target - a;
        double t = 1.0;
        VectorXd a_new = a + dir;
        double obj_new = objective(a_new);
        int halvings = 0;
        while (obj_new > obj && halvings < 30) {
            t *= 0.5;
            a_new = a + t * dir;
            obj_new = objective(a_new);
            ++halvings;
        }
        if (obj_new > obj) {
            fit.iterations = it;
            break;
        }
        a = a_new;
        obj = obj_new;
        fit.objective_history.push_back(obj);
        fit.iterations = it;
    }
    fit.weights = a;
    fit.objective = obj;
    VectorXd f_final = K * a;
    VectorXd p_final(n);
    for (Eigen::Index i = 0; i < n; ++i)
        p_final(i) = -sigmoid(-y(i) * f_final(i)) * y(i);
    fit.gradient_norm =
        ((K * p_final) / double(n) + spec.lambda * f_final).norm();
    fit.converged = fit.gradient_norm < tol;
    return fit;
}

// ---------------------------------------------------------------------------
// Multi-response linear model
// ---------------------------------------------------------------------------

/// Column-wise least squares; equal by construction to the stacked
/// (I_p (x) X) normal-equations solve.
inline MatrixXd mmlm_fit(const DesignMatrix& design, const MatrixXd& Y) {
    if (design.X.rows() != Y.rows())
        throw invalid_parameter("mmlm_fit: row count mismatch");
    MatrixXd Theta(design.X.cols(), Y.cols());
    for (Eigen::Index j = 0; j < Y.cols(); ++j)
        Theta.col(j) = ols_fit(design, Y.col(j)).theta;
    return Theta;
}

} // namespace statkit

#endif
