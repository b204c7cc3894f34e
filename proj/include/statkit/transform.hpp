#ifndef STATKIT_TRANSFORM_HPP
#define STATKIT_TRANSFORM_HPP

// Derived distributions: push-forward PMFs of g(X), densities of g(X) via
// monotone-piece CDF differentiation, numeric convolutions for sums,
// products and ratios of independent variables, and the max of n draws.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "statkit/distributions.hpp"
#include "statkit/errors.hpp"

namespace statkit {

// ---------------------------------------------------------------------------
// Discrete side
// ---------------------------------------------------------------------------

struct PmfTable {
    std::vector<double> xs; // strictly increasing
    std::vector<double> ps;

    double total_mass() const {
        double s = 0.0;
        for (double p : ps) s += p;
        return s;
    }
    double at(double x) const {
        auto it = std::lower_bound(xs.begin(), xs.end(), x);
        if (it == xs.end() || *it != x) return 0.0;
        return ps[std::size_t(it - xs.begin())];
    }
    double mean() const {
        double m = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) m += xs[i] * ps[i];
        return m;
    }
    double variance() const {
        double m = mean(), v = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            v += (xs[i] - m) * (xs[i] - m) * ps[i];
        return v;
    }
};

inline PmfTable make_pmf(std::map<double, double>&& acc) {
    PmfTable t;
    t.xs.reserve(acc.size());
    t.ps.reserve(acc.size());
    for (auto& [x, p] : acc) {
        t.xs.push_back(x);
        t.ps.push_back(p);
    }
    return t;
}

/// Tabulate a scalar discrete family (tail-truncated for infinite support).
inline PmfTable pmf_of(const Distribution& d, double tail_tol = 1e-12) {
    PmfTable t;
    for (double x : d.discrete_support(tail_tol)) {
        t.xs.push_back(x);
        t.ps.push_back(d.mass_or_density(x));
    }
    return t;
}

using DiscreteMap = std::function<double(double)>;

/// Push-forward PMF of Y = g(X): p_Y(y) = sum over {x : g(x) = y} of p_X(x).
inline PmfTable derived_pmf(const PmfTable& px, const DiscreteMap& g) {
    std::map<double, double> acc;
    for (std::size_t i = 0; i < px.xs.size(); ++i) {
        double y = g(px.xs[i]);
        if (!std::isfinite(y))
            throw domain_error("derived_pmf: map undefined at support point " +
                               std::to_string(px.xs[i]));
        acc[y] += px.ps[i];
    }
    return make_pmf(std::move(acc));
}

inline PmfTable derived_pmf(const Distribution& d, const DiscreteMap& g) {
    return derived_pmf(pmf_of(d), g);
}

/// PMF of h(X, Y) for independent discrete X, Y.
inline PmfTable pair_pmf(const PmfTable& px, const PmfTable& py,
                         const std::function<double(double, double)>& h) {
    std::map<double, double> acc;
    for (std::size_t i = 0; i < px.xs.size(); ++i)
        for (std::size_t j = 0; j < py.xs.size(); ++j)
            acc[h(px.xs[i], py.xs[j])] += px.ps[i] * py.ps[j];
    return make_pmf(std::move(acc));
}

inline PmfTable sum_pmf(const PmfTable& px, const PmfTable& py) {
    return pair_pmf(px, py, [](double a, double b) { return a + b; });
}
inline PmfTable product_pmf(const PmfTable& px, const PmfTable& py) {
    return pair_pmf(px, py, [](double a, double b) { return a * b; });
}
inline PmfTable max_pmf(const PmfTable& px, const PmfTable& py) {
    return pair_pmf(px, py, [](double a, double b) { return std::max(a, b); });
}

// ---------------------------------------------------------------------------
// Continuous side
// ---------------------------------------------------------------------------

/// A density handle over a (possibly open) interval. Endpoints flagged
/// singular are integrated through a square-root substitution.
struct Density {
    std::function<double(double)> pdf;
    double lo;
    double hi;
    bool singular_lo = false;
    bool singular_hi = false;

    double operator()(double x) const {
        if (x < lo || x > hi) return 0.0;
        return pdf(x);
    }
};

inline Density density_of(const Distribution& d, double tail_tol = 1e-13) {
    if (d.is_discrete() || d.is_vector())
        throw domain_error("density_of: continuous scalar families only");
    double lo = d.support_lo();
    double hi = d.support_hi();
    if (std::isinf(lo)) lo = d.quantile(tail_tol);
    if (std::isinf(hi)) hi = d.quantile(1.0 - tail_tol);
    return Density{[d](double x) { return d.mass_or_density(x); }, lo, hi};
}

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double m,
                      double b, double fa, double fm, double fb, double whole,
                      double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-8, int depth = 40) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson(f, a, m, b, fa, fm, fb, whole, tol, depth);
}

/// Integrate a density over [a, b], substituting x = a + t^2 (resp. b - t^2)
/// next to singular endpoints.
inline double integrate_density(const Density& d, double a, double b,
                                double tol = 1e-8) {
    a = std::max(a, d.lo);
    b = std::min(b, d.hi);
    if (!(b > a)) return 0.0;
    double total = 0.0;
    double a_in = a, b_in = b;
    // Substituted integrands start a hair above 0 in t-space; the skipped
    // segment carries O(1e-10) mass for a 1/sqrt endpoint.
    const double t0 = 1e-10;
    if (d.singular_lo && a == d.lo) {
        double cut = std::min(b, a + 0.125 * (b - a));
        double w = std::sqrt(cut - a);
        total += integrate([&](double t) { return 2.0 * t * d.pdf(a + t * t); }, t0,
                           w, tol);
        a_in = cut;
    }
    if (d.singular_hi && b == d.hi) {
        double cut = std::max(a_in, b - 0.125 * (b - a_in));
        double w = std::sqrt(b - cut);
        total += integrate([&](double t) { return 2.0 * t * d.pdf(b - t * t); }, t0,
                           w, tol);
        b_in = cut;
    }
    if (b_in > a_in) total += integrate([&](double x) { return d.pdf(x); }, a_in, b_in, tol);
    return total;
}

/// One strictly monotone piece of a transform y = g(x): the x-interval it
/// covers, the inverse map, and the derivative of the inverse.
struct MonotonePiece {
    double x_lo;
    double x_hi;
    std::function<double(double)> g_inverse;
    std::function<double(double)> dg_inverse; // d g^-1 / dy
};

/// Density of Y = g(X) by CDF differentiation summed over monotone pieces:
/// f_Y(y) = sum f_X(g^-1(y)) |d g^-1/dy|. (y_lo, y_hi) is the support of Y.
inline Density derived_pdf(const Distribution& d, std::vector<MonotonePiece> pieces,
                           double y_lo, double y_hi, bool singular_lo = false,
                           bool singular_hi = false) {
    if (pieces.empty()) throw domain_error("derived_pdf: needs at least one piece");
    std::sort(pieces.begin(), pieces.end(),
              [](const MonotonePiece& a, const MonotonePiece& b) { return a.x_lo < b.x_lo; });
    for (std::size_t i = 1; i < pieces.size(); ++i)
        if (pieces[i].x_lo < pieces[i - 1].x_hi)
            throw domain_error("derived_pdf: overlapping pieces");
    auto f = [d, pieces](double y) {
        double s = 0.0;
        for (const auto& piece : pieces) {
            double x = piece.g_inverse(y);
            if (!std::isfinite(x)) continue;
            if (x < piece.x_lo || x > piece.x_hi) continue;
            s += d.mass_or_density(x) * std::fabs(piece.dg_inverse(y));
        }
        return s;
    };
    return Density{f, y_lo, y_hi, singular_lo, singular_hi};
}

/// Density of Z = X + Y for independent X, Y: integral of f_X(x) f_Y(z-x).
inline Density sum_pdf(const Density& fx, const Density& fy, double tol = 1e-8) {
    double lo = fx.lo + fy.lo;
    double hi = fx.hi + fy.hi;
    auto f = [fx, fy, tol](double z) {
        double a = std::max(fx.lo, z - fy.hi);
        double b = std::min(fx.hi, z - fy.lo);
        if (!(b > a)) return 0.0;
        return integrate([&](double x) { return fx(x) * fy(z - x); }, a, b, tol);
    };
    return Density{f, lo, hi};
}

/// Density of Z = X * Y for independent X, Y with positive-or-negative
/// supports: integral of f_X(x) f_Y(z/x) / |x|.
inline Density product_pdf(const Density& fx, const Density& fy, double tol = 1e-8) {
    double c[] = {fx.lo * fy.lo, fx.lo * fy.hi, fx.hi * fy.lo, fx.hi * fy.hi};
    double lo = *std::min_element(c, c + 4);
    double hi = *std::max_element(c, c + 4);
    auto f = [fx, fy, tol](double z) {
        double s = 0.0;
        // Positive-x branch.
        double a = std::max(fx.lo, 0.0), b = fx.hi;
        if (b > a) {
            // Keep x away from 0 where 1/x blows up; mass there is negligible
            // once z != 0 because f_Y(z/x) vanishes for |z/x| beyond fy.hi.
            if (std::fabs(z) > 0.0 && std::isfinite(fy.hi) && fy.hi > 0.0)
                a = std::max(a, std::fabs(z) / std::max(std::fabs(fy.hi), std::fabs(fy.lo)));
            a = std::max(a, 1e-12);
            if (b > a)
                s += integrate([&](double x) { return fx(x) * fy(z / x) / x; }, a, b, tol);
        }
        // Negative-x branch.
        a = fx.lo;
        b = std::min(fx.hi, 0.0);
        if (b > a) {
            if (std::fabs(z) > 0.0 && (std::fabs(fy.hi) > 0.0 || std::fabs(fy.lo) > 0.0))
                b = std::min(b, -std::fabs(z) / std::max(std::fabs(fy.hi), std::fabs(fy.lo)));
            b = std::min(b, -1e-12);
            if (b > a)
                s += integrate([&](double x) { return fx(x) * fy(z / x) / (-x); }, a, b, tol);
        }
        return s;
    };
    return Density{f, lo, hi, true, false};
}

/// Density of Z = Y / X for independent X, Y: integral of f_X(x) f_Y(xz) |x|.
inline Density ratio_pdf(const Density& fx, const Density& fy, double tol = 1e-8) {
    auto f = [fx, fy, tol](double z) {
        return integrate([&](double x) { return fx(x) * fy(x * z) * std::fabs(x); },
                         fx.lo, fx.hi, tol);
    };
    return Density{f, -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
}

/// Distribution of the maximum of n i.i.d. draws: CDF F^n, density n F^(n-1) f.
class MaxOfSample {
public:
    MaxOfSample(Distribution base, int n) : base_(std::move(base)), n_(n) {
        if (n < 1) throw domain_error("max_cdf: n must be >= 1");
        if (base_.is_vector() || base_.is_discrete())
            throw domain_error("max_cdf: continuous scalar base required");
    }

    double cdf(double x) const { return std::pow(base_.cdf(x), n_); }
    double pdf(double x) const {
        return n_ * std::pow(base_.cdf(x), n_ - 1) * base_.mass_or_density(x);
    }
    /// Mean by quadrature over the (tail-truncated) support.
    double mean(double tol = 1e-10) const {
        double lo = base_.support_lo(), hi = base_.support_hi();
        if (std::isinf(lo)) lo = base_.quantile(1e-14);
        if (std::isinf(hi)) hi = base_.quantile(1.0 - 1e-14);
        return integrate([this](double x) { return x * pdf(x); }, lo, hi, tol);
    }
    const Distribution& base() const { return base_; }
    int n() const { return n_; }

private:
    Distribution base_;
    int n_;
};

inline MaxOfSample max_cdf(const Distribution& d, int n) { return {d, n}; }

/// Tabulate a density on a uniform grid (CLI --plot-data path).
inline std::vector<std::pair<double, double>> tabulate(const Density& d,
                                                       std::size_t points) {
    std::vector<std::pair<double, double>> rows;
    if (points < 2) points = 2;
    for (std::size_t i = 0; i < points; ++i) {
        double x = d.lo + (d.hi - d.lo) * double(i) / double(points - 1);
        rows.emplace_back(x, d(x));
    }
    return rows;
}

} // namespace statkit

#endif
