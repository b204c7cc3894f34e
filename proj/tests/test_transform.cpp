#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "statkit/transform.hpp"

using namespace statkit;

TEST_CASE("derived pmf of |X| on Unif{-4..4} is exact") {
    auto t = derived_pmf(Distribution::discrete_uniform(-4, 4),
                         [](double x) { return std::fabs(x); });
    REQUIRE(t.xs == std::vector<double>{0, 1, 2, 3, 4});
    CHECK(t.ps[0] == Catch::Approx(1.0 / 9.0).epsilon(1e-15));
    for (int k = 1; k <= 4; ++k)
        CHECK(t.ps[std::size_t(k)] == Catch::Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK(t.total_mass() == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("derived pmf of X^2 on Unif{-2..2}") {
    auto t = derived_pmf(Distribution::discrete_uniform(-2, 2),
                         [](double x) { return x * x; });
    REQUIRE(t.xs == std::vector<double>{0, 1, 4});
    CHECK(t.ps[0] == Catch::Approx(1.0 / 5.0));
    CHECK(t.ps[1] == Catch::Approx(2.0 / 5.0));
    CHECK(t.ps[2] == Catch::Approx(2.0 / 5.0));
}

TEST_CASE("identity map returns the input pmf") {
    auto base = pmf_of(Distribution::binomial(9, 0.35));
    auto t = derived_pmf(base, [](double x) { return x; });
    CHECK(t.xs == base.xs);
    for (std::size_t i = 0; i < t.ps.size(); ++i)
        CHECK(t.ps[i] == Catch::Approx(base.ps[i]).epsilon(1e-15));
}

TEST_CASE("poisson parity pushes to (1 +- exp(-2 lambda))/2") {
    double lam = 0.7;
    auto t = derived_pmf(Distribution::poisson(lam), [](double x) {
        return std::fmod(x, 2.0) == 0.0 ? 1.0 : -1.0;
    });
    // series oracle, truncated far beyond the table's own tail cut
    double even = 0.0;
    for (int k = 0; k <= 200; k += 2)
        even += std::exp(-lam + k * std::log(lam) - log_factorial(unsigned(k)));
    CHECK(t.at(1.0) == Catch::Approx(even).margin(1e-12));
    CHECK(t.at(1.0) == Catch::Approx(0.5 * (1.0 + std::exp(-2.0 * lam))).margin(1e-12));
    CHECK(t.at(-1.0) == Catch::Approx(0.5 * (1.0 - std::exp(-2.0 * lam))).margin(1e-12));
}

TEST_CASE("derived pmf errors when the map is undefined on the support") {
    auto bad = [](double x) { return x == 0.0 ? std::nan("") : x; };
    CHECK_THROWS_AS(derived_pmf(Distribution::bernoulli(0.5), bad), domain_error);
}

TEST_CASE("derived pdf of X^2 under the standard normal") {
    auto d = Distribution::normal(0.0, 1.0);
    std::vector<MonotonePiece> pieces{
        {-40.0, 0.0, [](double y) { return -std::sqrt(y); },
         [](double y) { return -0.5 / std::sqrt(y); }},
        {0.0, 40.0, [](double y) { return std::sqrt(y); },
         [](double y) { return 0.5 / std::sqrt(y); }},
    };
    Density f = derived_pdf(d, pieces, 0.0, 45.0, /*singular_lo=*/true);
    for (double y : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        double want = std::exp(-y / 2.0) / std::sqrt(2.0 * pi * y);
        CHECK(f(y) == Catch::Approx(want).epsilon(1e-12));
    }
    CHECK(integrate_density(f, 0.0, 45.0, 1e-10) == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("derived pdf of exp(X) is log-normal") {
    auto d = Distribution::normal(0.0, 1.0);
    std::vector<MonotonePiece> pieces{
        {-40.0, 40.0, [](double y) { return std::log(y); },
         [](double y) { return 1.0 / y; }},
    };
    Density f = derived_pdf(d, pieces, std::exp(-40.0), std::exp(40.0));
    for (double y : {0.2, 0.5, 1.0, 2.0, 7.0}) {
        double ln = std::log(y);
        double want = std::exp(-0.5 * ln * ln) / (std::sqrt(2.0 * pi) * y);
        CHECK(f(y) == Catch::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("derived pdf of sqrt(X) on Unif(0,1) is 2y") {
    auto d = Distribution::continuous_uniform(0.0, 1.0);
    std::vector<MonotonePiece> pieces{
        {0.0, 1.0, [](double y) { return y * y; }, [](double y) { return 2.0 * y; }},
    };
    Density f = derived_pdf(d, pieces, 0.0, 1.0);
    for (double y : {0.1, 0.33, 0.5, 0.9})
        CHECK(f(y) == Catch::Approx(2.0 * y).epsilon(1e-12));
    CHECK(integrate_density(f, 0.0, 1.0) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("overlapping pieces are rejected") {
    auto d = Distribution::continuous_uniform(0.0, 1.0);
    std::vector<MonotonePiece> pieces{
        {0.0, 0.7, [](double y) { return y; }, [](double) { return 1.0; }},
        {0.5, 1.0, [](double y) { return y; }, [](double) { return 1.0; }},
    };
    CHECK_THROWS_AS(derived_pdf(d, pieces, 0.0, 1.0), domain_error);
}

TEST_CASE("increasing transforms match numeric cdf differentiation") {
    // Y = X^2 for X ~ Exp(1): F_Y(y) = F_X(sqrt(y))
    auto d = Distribution::exponential(1.0);
    std::vector<MonotonePiece> pieces{
        {0.0, 50.0, [](double y) { return std::sqrt(y); },
         [](double y) { return 0.5 / std::sqrt(y); }},
    };
    Density f = derived_pdf(d, pieces, 0.0, 2500.0, true);
    double h = 1e-5;
    for (double y : {0.25, 1.0, 2.25, 4.0}) {
        double dF = (d.cdf(std::sqrt(y + h)) - d.cdf(std::sqrt(y - h))) / (2.0 * h);
        CHECK(f(y) == Catch::Approx(dF).margin(1e-6));
    }
}

TEST_CASE("sum of two standard uniforms is the triangle density") {
    Density u = density_of(Distribution::continuous_uniform(0.0, 1.0));
    Density z = sum_pdf(u, u);
    double worst = 0.0;
    for (double x = 0.05; x < 2.0; x += 0.05) {
        double want = x <= 1.0 ? x : 2.0 - x;
        worst = std::max(worst, std::fabs(z(x) - want));
    }
    CHECK(worst < 1e-6);
    CHECK(integrate_density(z, 0.0, 2.0, 1e-9) == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("sum of two exponentials is Erlang(2, lambda)") {
    double lam = 1.5;
    Density e = density_of(Distribution::exponential(lam));
    Density z = sum_pdf(e, e);
    auto erl = Distribution::erlang(2, lam);
    double worst = 0.0;
    for (double x = 0.01; x < 8.0; x += 0.13)
        worst = std::max(worst, std::fabs(z(x) - erl.mass_or_density(x)));
    CHECK(worst < 1e-6);
}

TEST_CASE("convolution is commutative and associative on test densities") {
    Density a = density_of(Distribution::continuous_uniform(0.0, 1.0));
    Density b = density_of(Distribution::exponential(2.0));
    Density ab = sum_pdf(a, b);
    Density ba = sum_pdf(b, a);
    for (double x : {0.3, 0.9, 1.7, 2.4})
        CHECK(ab(x) == Catch::Approx(ba(x)).margin(1e-9));

    Density left = sum_pdf(sum_pdf(a, a), a);
    Density right = sum_pdf(a, sum_pdf(a, a));
    for (double x : {0.5, 1.0, 1.5, 2.2, 2.8})
        CHECK(left(x) == Catch::Approx(right(x)).margin(1e-6));
}

TEST_CASE("discrete point-mass convolution identities") {
    auto f = pmf_of(Distribution::binomial(6, 0.3));
    PmfTable delta0{{0.0}, {1.0}};
    auto same = sum_pmf(f, delta0);
    CHECK(same.xs == f.xs);
    for (std::size_t i = 0; i < f.ps.size(); ++i)
        CHECK(same.ps[i] == Catch::Approx(f.ps[i]).epsilon(1e-15));

    PmfTable one{{1.0}, {1.0}};
    auto prod = product_pmf(f, one);
    CHECK(prod.xs == f.xs);
    for (std::size_t i = 0; i < f.ps.size(); ++i)
        CHECK(prod.ps[i] == Catch::Approx(f.ps[i]).epsilon(1e-15));
}

TEST_CASE("product of two standard uniforms has density -ln z") {
    Density u = density_of(Distribution::continuous_uniform(0.0, 1.0));
    Density z = product_pdf(u, u);
    double worst = 0.0;
    for (double x = 0.01; x <= 1.0; x += 0.015)
        worst = std::max(worst, std::fabs(z(x) + std::log(x)));
    CHECK(worst < 1e-5);
}

TEST_CASE("ratio of independent standard normals is Cauchy") {
    Density n = density_of(Distribution::normal(0.0, 1.0));
    Density z = ratio_pdf(n, n);
    double worst = 0.0;
    for (double x = -5.0; x <= 5.0; x += 0.5)
        worst = std::max(worst, std::fabs(z(x) - 1.0 / (pi * (1.0 + x * x))));
    CHECK(worst < 1e-4);
}

TEST_CASE("max of n i.i.d. draws") {
    auto u = Distribution::continuous_uniform(0.0, 1.0);
    for (int n : {1, 2, 5, 10}) {
        auto mx = max_cdf(u, n);
        CHECK(mx.mean(1e-12) == Catch::Approx(double(n) / double(n + 1)).margin(1e-9));
    }
    auto one = max_cdf(u, 1);
    for (double x : {0.2, 0.6}) CHECK(one.cdf(x) == Catch::Approx(u.cdf(x)));

    auto e2 = max_cdf(Distribution::exponential(1.0), 2);
    double w = 1.0 - std::exp(-1.0);
    CHECK(e2.cdf(1.0) == Catch::Approx(w * w).epsilon(1e-12));
}

TEST_CASE("small discrete supports match brute-force enumeration exactly") {
    auto px = pmf_of(Distribution::binomial(7, 0.4));
    auto py = pmf_of(Distribution::discrete_uniform(-2, 3));
    struct Case {
        const char* name;
        std::function<double(double, double)> op;
    };
    for (const auto& c : std::vector<Case>{
             {"sum", [](double a, double b) { return a + b; }},
             {"product", [](double a, double b) { return a * b; }},
             {"max", [](double a, double b) { return std::max(a, b); }}}) {
        INFO(c.name);
        auto got = pair_pmf(px, py, c.op);
        std::map<double, double> oracle;
        for (std::size_t i = 0; i < px.xs.size(); ++i)
            for (std::size_t j = 0; j < py.xs.size(); ++j)
                oracle[c.op(px.xs[i], py.xs[j])] += px.ps[i] * py.ps[j];
        REQUIRE(got.xs.size() == oracle.size());
        std::size_t k = 0;
        for (auto& [x, p] : oracle) {
            CHECK(got.xs[k] == x);
            CHECK(got.ps[k] == Catch::Approx(p).margin(1e-12));
            ++k;
        }
        CHECK(got.total_mass() == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("tabulate emits a uniform grid") {
    Density u = density_of(Distribution::continuous_uniform(0.0, 2.0));
    auto rows = tabulate(u, 5);
    REQUIRE(rows.size() == 5);
    CHECK(rows.front().first == Catch::Approx(0.0));
    CHECK(rows.back().first == Catch::Approx(2.0));
    CHECK(rows[2].second == Catch::Approx(0.5));
}
