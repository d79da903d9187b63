#pragma once
#include <cstdint>
#include <vector>

#include "core/model.hpp"

namespace levyopt {

// One simulated path on a nested pair of uniform grids over [0,1]: a coarse
// grid with n intervals, each split into `refine` fine steps.  Brownian paths
// draw every coarse increment first and fill the interior with a sequential
// bridge, so the coarse grid is bitwise identical across refine levels for a
// fixed seed; stable interval increments are sums of the fine draws and are
// deterministic per (seed, n, refine).
struct PathSample {
    ModelSpec model;
    int n = 0;
    int refine = 1;
    std::vector<double> fine;  // X on {i/(n*refine)}, i = 0..n*refine

    double coarse(int i) const { return fine[static_cast<std::size_t>(i) * refine]; }
    double endpoint() const { return fine.back(); }
    double fine_max() const;
    double fine_min() const;
    int coarse_argmax() const;

    // Supremum stand-in: fine-grid max plus the mean overshoot correction at
    // the fine resolution.  Triggers the gap bootstrap on first use for a
    // stable model, so it is computed on demand rather than at build time.
    double sup_proxy() const;

    std::vector<double> coarse_values() const; // n+1 entries
};

PathSample simulate_path(const ModelSpec& m, int n, int refine, std::uint64_t seed);

// Controls for the bootstrap behind the stable overshoot constant.
struct GapBootstrap {
    int draws = 100000;
    int n = 64;
    int m = 64;
};

// E[ N^{1/alpha} (sup X - max of X over an N-point grid) ] in model units:
// sigma * (-zeta(1/2)/sqrt(2 pi)) for Brownian motion, a seeded bootstrap for
// stable models (cached per (alpha, beta)).
double mean_discretization_gap(const ModelSpec& m);
double mean_discretization_gap(const ModelSpec& m, const GapBootstrap& cfg); // uncached

} // namespace levyopt
