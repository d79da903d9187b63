#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/cond_law.hpp"
#include "core/errors.hpp"
#include "core/model.hpp"
#include "core/quadrature.hpp"
#include "core/rng.hpp"
#include "core/special.hpp"
#include "core/stats.hpp"

using namespace levyopt;

// ---------------- Brownian closed form ----------------

TEST_CASE("brownian reflection formula") {
    const CondSupLaw law(make_bm(1.0));
    // P(sup <= x | X_1 = y) = 1 - exp(-2 x (x - y)) on x >= max(y, 0)
    CHECK(law.F(1.0, 0.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-13));
    CHECK(law.survival(2.0, 1.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-13));
    CHECK(law.F(0.7, -0.4) ==
          doctest::Approx(1.0 - std::exp(-2.0 * 0.7 * 1.1)).epsilon(1e-13));
    // sup >= max(0, X_1) forces F = 0 at and below the kink
    CHECK(law.F(1.0, 2.0) == 0.0);
    CHECK(law.F(0.0, -1.0) == 0.0);
    CHECK(law.F(0.0, 0.0) == 0.0);

    // volatility enters through x/sigma, y/sigma
    const CondSupLaw law2(make_bm(2.0));
    CHECK(law2.F(2.0, 1.0) == doctest::Approx(law.F(1.0, 0.5)).epsilon(1e-13));

    // log_survival agrees with survival where both are representable
    CHECK(law.log_survival(1.5, -0.5) ==
          doctest::Approx(std::log(law.survival(1.5, -0.5))).epsilon(1e-12));
}

TEST_CASE("brownian law vs bridge maximum sampler") {
    // conditional max of a Brownian bridge: M = (y + sqrt(y^2 - 2 log U)) / 2
    const CondSupLaw law(make_bm(1.0));
    const double y = 0.3;
    Rng rng(99);
    const int N = 200000;
    std::vector<int> below(3, 0);
    const double xs[3] = {0.5, 0.9, 1.5};
    for (int i = 0; i < N; ++i) {
        const double u = rng.uniform01();
        const double m = 0.5 * (y + std::sqrt(y * y - 2.0 * std::log(u)));
        for (int j = 0; j < 3; ++j)
            if (m <= xs[j]) ++below[j];
    }
    for (int j = 0; j < 3; ++j) {
        const double emp = static_cast<double>(below[j]) / N;
        const double se = std::sqrt(emp * (1.0 - emp) / N);
        CHECK(std::fabs(law.F(xs[j], y) - emp) < 4.0 * se + 1e-12);
    }
}

// ---------------- one-sided stable laws ----------------

TEST_CASE("stable law basic shape") {
    const CondSupLaw law(make_stable_skew(1.8, -1.0, 1.0));
    CHECK(law.F(0.0, -1.0) == 0.0);
    CHECK(law.F(1.0, 2.0) == 0.0);
    // monotone nondecreasing in x, limits 0 and 1
    double prev = 0.0;
    for (double x : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        const double f = law.F(x, -1.0);
        CHECK(f >= prev - 1e-12);
        CHECK(f <= 1.0 + 1e-12);
        prev = f;
    }
    CHECK(law.F(4.0, -1.0) > 0.9999);
    CHECK(law.survival(4.0, -1.0) < 1e-4);
}

TEST_CASE("stable marginal identity") {
    // integrating the conditional survival against the endpoint density gives
    // P(sup > x) = alpha * P(X_1 > x) for one-sided laws
    const ModelSpec m = make_stable_skew(1.8, -1.0, 1.0);
    const CondSupLaw law(m);
    const StableDensity d(m.stable);
    for (double x : {0.5, 1.5}) {
        const double below = integrate_panels(
            [&](double y) { return law.survival(x, y) * d.density(y); }, -40.0, x, 300);
        const double total = below + (1.0 - d.cdf(x));
        const double rhs = 1.8 * (1.0 - d.cdf(x));
        CHECK(total / rhs == doctest::Approx(1.0).epsilon(5e-4));
    }
}

TEST_CASE("time reversal maps positive jumps to negative") {
    const CondSupLaw lp(make_stable_skew(1.8, 1.0, 1.0));
    const CondSupLaw ln(make_stable_skew(1.8, -1.0, 1.0));
    for (double x : {0.3, 0.8, 1.5, 3.0})
        for (double y : {-2.0, -0.5, 0.1, 0.25, 1.2}) {
            if (x <= std::max(y, 0.0)) continue;
            CHECK(lp.survival(x, y) ==
                  doctest::Approx(ln.survival(x - y, -y)).epsilon(1e-12));
        }
}

TEST_CASE("tail bound dominates survival") {
    for (const ModelSpec& m : {make_bm(1.0), make_stable_skew(1.8, -1.0, 1.0)}) {
        const CondSupLaw law(m);
        CHECK(law.envelope_c() > 0.0);
        for (double x : {0.5, 1.0, 2.0, 4.0, 8.0})
            for (double y : {-2.0, -0.5, 0.0, 0.4}) {
                if (x <= std::max(y, 0.0)) continue;
                const double tb = law.tail_bound(x, y);
                CHECK(tb <= 1.0 + 1e-15);
                CHECK(law.survival(x, y) <= tb * (1.0 + 1e-9));
            }
        // exponential decay in x beyond the kink
        CHECK(law.tail_bound(9.0, 0.0) <=
              law.tail_bound(5.0, 0.0) * std::exp(-4.0) * (1.0 + 1e-9));
    }
}

TEST_CASE("two-sided jumps are rejected") {
    CHECK_THROWS_AS(CondSupLaw(make_stable_skew(1.5, 0.0, 1.0)), UnsupportedModel);
    CHECK_THROWS_AS(CondSupLaw(make_stable_skew(1.8, -0.4, 1.0)), UnsupportedModel);
    CHECK_THROWS_AS(CondSupLaw(make_stable_triplet(1.0, 0.5, 0.0)), UnsupportedModel);
}

TEST_CASE("scale equivariance of the stable law") {
    const CondSupLaw unit(make_stable_skew(1.8, -1.0, 1.0));
    const CondSupLaw two(make_stable_skew(1.8, -1.0, 2.0));
    for (double x : {0.6, 1.4})
        for (double y : {-1.0, 0.2}) {
            CHECK(two.F(2.0 * x, 2.0 * y) == doctest::Approx(unit.F(x, y)).epsilon(1e-9));
        }
}
