#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/errors.hpp"
#include "core/model.hpp"
#include "core/path_sim.hpp"
#include "core/special.hpp"
#include "core/stable_law.hpp"
#include "core/stats.hpp"

using namespace levyopt;

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(simulate_path(make_bm(1.0), 0, 1, 1), BadArgument);
    CHECK_THROWS_AS(simulate_path(make_bm(1.0), 4, 0, 1), BadArgument);
}

TEST_CASE("layout and determinism") {
    const ModelSpec st = make_stable_skew(1.8, -1.0, 1.0);
    for (const ModelSpec& m : {make_bm(1.0), st}) {
        const PathSample p = simulate_path(m, 17, 5, 4242);
        CHECK(p.n == 17);
        CHECK(p.refine == 5);
        REQUIRE(p.fine.size() == 17u * 5u + 1u);
        CHECK(p.fine[0] == 0.0);
        CHECK(p.coarse(17) == p.endpoint());
        CHECK(p.coarse_values().size() == 18u);
        CHECK(p.coarse_values()[3] == p.coarse(3));

        const PathSample q = simulate_path(m, 17, 5, 4242);
        CHECK(p.fine == q.fine);
        const PathSample r = simulate_path(m, 17, 5, 4243);
        CHECK(p.fine != r.fine);

        // fine max dominates the coarse grid and the argmax points at the max
        double cmax = p.fine[0];
        for (int i = 0; i <= 17; ++i) cmax = std::max(cmax, p.coarse(i));
        CHECK(p.fine_max() >= cmax);
        CHECK(p.coarse(p.coarse_argmax()) == cmax);
        CHECK(p.fine_min() <= -0.0);
    }
}

TEST_CASE("brownian coarse grid is refine-invariant") {
    const ModelSpec bm = make_bm(1.3);
    const PathSample p1 = simulate_path(bm, 32, 1, 777);
    const PathSample p2 = simulate_path(bm, 32, 100, 777);
    for (int i = 0; i <= 32; ++i) CHECK(p1.coarse(i) == p2.coarse(i));
}

TEST_CASE("brownian marginal variances") {
    const int reps = 4000;
    double s2_end = 0.0, s2_mid = 0.0;
    for (int r = 0; r < reps; ++r) {
        const PathSample p = simulate_path(make_bm(1.3), 8, 3, 1000 + r);
        s2_end += p.endpoint() * p.endpoint();
        const PathSample b = simulate_path(make_bm(1.0), 1, 2, 500 + r);
        s2_mid += b.fine[1] * b.fine[1]; // bridge midpoint, var = 1/2
    }
    CHECK(s2_end / reps == doctest::Approx(1.69).epsilon(0.09));
    CHECK(s2_mid / reps == doctest::Approx(0.5).epsilon(0.09));
}

TEST_CASE("stable endpoint has the marginal law") {
    const ModelSpec m = make_stable_skew(1.8, -1.0, 1.0);
    const StableDensity d(m.stable);
    std::vector<double> ends(3000);
    for (int r = 0; r < 3000; ++r) ends[r] = simulate_path(m, 4, 2, 7000 + r).endpoint();
    CHECK(ks_statistic(ends, [&](double x) { return d.cdf(x); }) < 1.63 / std::sqrt(3000.0));
}

TEST_CASE("brownian overshoot constant is exact") {
    // E[N^{1/2}(sup - grid max)] = sigma * (-zeta(1/2)/sqrt(2 pi))
    CHECK(mean_discretization_gap(make_bm(1.0)) ==
          doctest::Approx(kBesselMinMeanBm).epsilon(1e-15));
    CHECK(mean_discretization_gap(make_bm(1.3)) ==
          doctest::Approx(1.3 * kBesselMinMeanBm).epsilon(1e-15));

    const PathSample p = simulate_path(make_bm(1.3), 20, 10, 3);
    CHECK(p.sup_proxy() == doctest::Approx(p.fine_max() + 1.3 * kBesselMinMeanBm /
                                                              std::sqrt(200.0))
                               .epsilon(1e-13));
}

TEST_CASE("stable overshoot bootstrap") {
    // near alpha = 2 the constant approaches the Brownian value at sigma = sqrt(2)
    ModelSpec near_bm = make_stable_triplet(1.95, 0.5, 0.0);
    near_bm.stable.scale = 1.0;
    GapBootstrap gb;
    gb.draws = 3000;
    gb.n = 32;
    gb.m = 32;
    const double g = mean_discretization_gap(near_bm, gb);
    CHECK(g == doctest::Approx(kSqrt2 * kBesselMinMeanBm).epsilon(0.12));
    // seeded bootstrap: bit-for-bit repeatable
    CHECK(mean_discretization_gap(near_bm, gb) == g);

    // scale enters linearly
    ModelSpec scaled = make_stable_skew(1.95, 0.0, 2.0);
    CHECK(mean_discretization_gap(scaled, gb) == doctest::Approx(2.0 * g).epsilon(1e-12));
}
