#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/errors.hpp"
#include "core/special.hpp"
#include "core/stable_law.hpp"
#include "core/stats.hpp"

using namespace levyopt;

namespace {

// Simpson on a uniform grid; n even.
template <typename F>
double simpson(F&& f, double a, double b, int n) {
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + (b - a) * i / n) * (i % 2 ? 4.0 : 2.0);
    return s * (b - a) / (3.0 * n);
}

} // namespace

// ---------------- parameterization ----------------

TEST_CASE("triplet legality screen") {
    CHECK_THROWS_AS(stable_from_positivity(2.5, 0.5, 0.0), IllegalTriplet);
    CHECK_THROWS_AS(stable_from_positivity(0.0, 0.5, 0.0), IllegalTriplet);
    CHECK_THROWS_AS(stable_from_positivity(-1.0, 0.5, 0.0), IllegalTriplet);
    // rho outside [1 - 1/a, 1/a] for a > 1
    CHECK_THROWS_AS(stable_from_positivity(1.8, 0.9, 0.0), IllegalTriplet);
    CHECK_THROWS_AS(stable_from_positivity(1.8, 0.1, 0.0), IllegalTriplet);
    // monotone paths (a < 1 with all mass on one side) are rejected
    CHECK_THROWS_AS(stable_from_positivity(0.7, 0.0, 0.0), IllegalTriplet);
    CHECK_THROWS_AS(stable_from_positivity(0.7, 1.0, 0.0), IllegalTriplet);
    // a == 1 is admitted only as the symmetric Cauchy law
    CHECK_THROWS_AS(stable_from_positivity(1.0, 0.6, 0.0), IllegalTriplet);
    CHECK_THROWS_AS(stable_from_skewness(1.0, -0.5, 1.0), IllegalTriplet);
    CHECK_NOTHROW(stable_from_positivity(1.0, 0.5, 0.0));
    CHECK_THROWS_AS(stable_from_skewness(1.5, 1.2, 1.0), IllegalTriplet);
    CHECK_THROWS_AS(stable_from_skewness(1.5, 0.0, -1.0), IllegalTriplet);
}

TEST_CASE("positivity parameter vs skewness") {
    // a=1.8, beta=-1 sits exactly at rho = 5/9
    CHECK(rho_from_beta(1.8, -1.0) == doctest::Approx(5.0 / 9.0).epsilon(1e-13));
    CHECK(rho_from_beta(1.8, 0.0) == doctest::Approx(0.5).epsilon(1e-13));
    // a < 1 with beta = +1 pushes all mass positive
    CHECK(rho_from_beta(0.7, 1.0) == doctest::Approx(1.0).epsilon(1e-13));

    // round trip through the triplet: boundary rho snaps beta to exactly +-1
    const StableParams p = stable_from_positivity(1.8, 5.0 / 9.0, 0.0);
    CHECK(p.beta == -1.0);
    CHECK(p.spectrally_negative());
    CHECK(p.one_sided());

    const StableParams q = stable_from_skewness(1.8, -1.0, 1.0);
    CHECK(q.rho == doctest::Approx(5.0 / 9.0).epsilon(1e-12));

    // lambda = log(scale) + unit log-moment, so matching lambda recovers scale 1
    const double lam = stable_unit_log_moment(1.8, -1.0);
    const StableParams r = stable_from_positivity(1.8, 5.0 / 9.0, lam);
    CHECK(r.scale == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.lambda == doctest::Approx(lam).epsilon(1e-12));

    // scale shifts lambda by log(scale)
    const StableParams s = stable_from_skewness(1.8, -1.0, 2.0);
    CHECK(s.lambda - q.lambda == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

// ---------------- density oracles ----------------

TEST_CASE("symmetric density closed forms") {
    const StableParams p = stable_from_skewness(1.5, 0.0, 1.0);
    const StableDensity d(p);

    // f(0) = Gamma(1 + 1/a) / pi from the inversion formula
    const double f0 = std::tgamma(1.0 + 1.0 / 1.5) / kPi;
    CHECK(d.density(0.0) == doctest::Approx(f0).epsilon(1e-10));
    CHECK(d.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(d.density(1.3) == doctest::Approx(d.density(-1.3)).epsilon(1e-10));

    // E log|X| = gamma_E (1/a - 1) at unit scale
    const double lm_exact = 0.57721566490153286 * (1.0 / 1.5 - 1.0);
    CHECK(d.log_moment() == doctest::Approx(lm_exact).epsilon(1e-8));
    CHECK(stable_unit_log_moment(1.5, 0.0) == doctest::Approx(lm_exact).epsilon(1e-8));

    // heavy tails on both sides: f(x) ~ c |x|^{-a-1}, sf(x) ~ c/a x^{-a}
    const double c = d.right_tail_coeff();
    CHECK(c == doctest::Approx(d.left_tail_coeff()).epsilon(1e-12));
    CHECK(d.density(55.0) * std::pow(55.0, 2.5) / c == doctest::Approx(1.0).epsilon(2e-2));
    CHECK((1.0 - d.cdf(55.0)) * 1.5 * std::pow(55.0, 1.5) / c ==
          doctest::Approx(1.0).epsilon(2e-3));

    // density tail coefficient ties to the classical tail constant
    CHECK(c == doctest::Approx(1.5 * stable_tail_constant(1.5) * 0.5).epsilon(1e-6));
}

TEST_CASE("spectrally negative density") {
    const StableParams p = stable_from_skewness(1.8, -1.0, 1.0);
    const StableDensity d(p);

    // P(X > 0) is the positivity parameter
    CHECK(1.0 - d.cdf(0.0) == doctest::Approx(p.rho).epsilon(1e-8));

    // table quadrature agrees with the closed-form log moment
    CHECK(d.log_moment() == doctest::Approx(stable_unit_log_moment(1.8, -1.0)).epsilon(1e-8));
    CHECK(p.lambda == doctest::Approx(-0.2286615233331154).epsilon(1e-12));

    // no positive jumps: light (super-exponential) right tail, heavy left tail
    CHECK(d.right_tail_coeff() == 0.0);
    CHECK(d.log_density(10.0) < -30.0);
    CHECK(d.log_density(20.0) < d.log_density(10.0) - 100.0);
    const double cl = d.left_tail_coeff();
    CHECK(cl > 0.0);
    CHECK(d.density(-55.0) * std::pow(55.0, 2.8) / cl == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(d.cdf(-55.0) * 1.8 * std::pow(55.0, 1.8) / cl == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(cl == doctest::Approx(1.8 * stable_tail_constant(1.8)).epsilon(1e-6));

    // mass check: quadrature over the bulk matches the cdf increment
    const double bulk = simpson([&](double x) { return d.density(x); }, -30.0, 5.0, 20000);
    CHECK(bulk == doctest::Approx(d.cdf(5.0) - d.cdf(-30.0)).epsilon(1e-7));

    // mirrored law evaluates by reflection
    const StableDensity dm(stable_from_skewness(1.8, 1.0, 1.0));
    CHECK(dm.density(1.3) == doctest::Approx(d.density(-1.3)).epsilon(1e-12));
    CHECK(dm.cdf(1.3) == doctest::Approx(1.0 - d.cdf(-1.3)).epsilon(1e-10));
}

TEST_CASE("cauchy closed form") {
    const StableParams p = stable_from_positivity(1.0, 0.5, 0.3);
    const StableDensity d(p);
    const double s = p.scale;
    CHECK(d.density(0.0) == doctest::Approx(1.0 / (kPi * s)).epsilon(1e-12));
    CHECK(d.cdf(s) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(d.quantile(0.75) == doctest::Approx(s).epsilon(1e-12));
    // lambda = E log|X| = log(scale) for Cauchy
    CHECK(p.scale == doctest::Approx(std::exp(0.3)).epsilon(1e-12));
}

TEST_CASE("quantile inverts cdf") {
    const StableDensity d(stable_from_skewness(1.8, -1.0, 1.0));
    for (double u : {0.001, 0.05, 0.25, 0.5, 0.9, 0.99, 0.9999}) {
        const double x = d.quantile(u);
        CHECK(d.cdf(x) == doctest::Approx(u).epsilon(1e-8));
    }
    CHECK_THROWS_AS(d.quantile(0.0), BadArgument);
    CHECK_THROWS_AS(d.quantile(1.0), BadArgument);
}

TEST_CASE("scale maps density and cdf") {
    const StableDensity unit(stable_from_skewness(1.5, -0.3, 1.0));
    const StableDensity two(stable_from_skewness(1.5, -0.3, 2.0));
    for (double x : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
        CHECK(two.density(x) == doctest::Approx(unit.density(x / 2.0) / 2.0).epsilon(1e-10));
        CHECK(two.cdf(x) == doctest::Approx(unit.cdf(x / 2.0)).epsilon(1e-10));
    }
    CHECK(two.log_moment() == doctest::Approx(unit.log_moment() + std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("table support boundaries") {
    CHECK_THROWS_AS(StableDensity(stable_from_skewness(0.3, -0.5, 1.0)), UnsupportedModel);
    CHECK_THROWS_AS(StableDensity(stable_from_skewness(1.005, 0.0, 1.0)), UnsupportedModel);
    CHECK_NOTHROW(StableDensity(stable_from_skewness(0.45, -0.5, 1.0)));
    CHECK_NOTHROW(StableDensity(stable_from_skewness(1.011, 0.0, 1.0)));
}

TEST_CASE("table export is finite and ordered") {
    const StableDensity d(stable_from_skewness(1.8, -1.0, 1.5));
    const auto pts = d.table_points();
    REQUIRE(pts.size() > 100);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(std::isfinite(pts[i].first));
        CHECK(pts[i].second >= 0.0);
        if (i) CHECK(pts[i].first > pts[i - 1].first);
        // exported nodes reproduce the evaluator
        if (i % 37 == 0)
            CHECK(pts[i].second == doctest::Approx(d.density(pts[i].first)).epsilon(1e-9));
    }
}

// ---------------- sampling ----------------

TEST_CASE("sampler matches density: symmetric") {
    const StableParams p = stable_from_skewness(1.5, 0.0, 1.0);
    const StableDensity d(p);
    Rng rng(2024);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = sample_standard_stable(1.5, 0.0, rng);
    const double ks = ks_statistic(xs, [&](double x) { return d.cdf(x); });
    CHECK(ks < 1.63 / std::sqrt(20000.0)); // 1% asymptotic band
}

TEST_CASE("sampler matches density: spectrally negative") {
    const StableParams p = stable_from_skewness(1.8, -1.0, 1.0);
    const StableDensity d(p);
    Rng rng(77);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = sample_standard_stable(1.8, -1.0, rng);
    const double ks = ks_statistic(xs, [&](double x) { return d.cdf(x); });
    CHECK(ks < 1.63 / std::sqrt(20000.0));
}

TEST_CASE("increment scaling dt^{1/a} * scale") {
    const StableParams p = stable_from_skewness(1.8, -1.0, 2.0);
    const double dt = 0.25;
    Rng r1(5), r2(6);
    std::vector<double> inc(20000), std_draws(20000);
    for (auto& x : inc) x = sample_stable_increment(p, dt, r1) / (std::pow(dt, 1.0 / 1.8) * 2.0);
    for (auto& x : std_draws) x = sample_standard_stable(1.8, -1.0, r2);
    CHECK(ks_statistic(inc, std_draws) < ks_two_sample_critical(20000, 20000, 0.01));
}
