#pragma once
#include <cstdint>
#include <vector>

#include "core/cond_law.hpp"
#include "core/model.hpp"

namespace levyopt {

// A window of rescaled depths below the supremum around the best grid point.
// u[idx(j)] is the gap between the (exact or proxied) supremum and the grid
// value j steps away from the observed argmax, in units where one grid step
// spans unit time; v = min over the window, attained at the observed max.
struct LimitDraw {
    int j_lo = 0;           // inclusive window bounds around the observed max
    int j_hi = 0;
    std::vector<double> u;  // depths at offsets j_lo .. j_hi
    double v = 0.0;         // min_j u_j

    double u_at(int j) const { return u[static_cast<std::size_t>(j - j_lo)]; }
    int argmin() const;

    // restriction to offsets within +-k of the argmin, re-centred on it
    LimitDraw window(int k) const;
};

// Brownian limit around the argmax: two independent 3-d Bessel branches with a
// shared uniform grid offset, sampled at offsets -K..K.  Each (side, j) step
// draws from its own substream, so enlarging K extends a draw without
// perturbing the inner values (common random numbers across K).
LimitDraw sample_bessel_limit(double sigma, int K, std::uint64_t seed);

// Finite-n analogue: simulate a path on an n-point grid refined m-fold, centre
// the window (clipped at the path ends) on the coarse argmax, and rescale the
// depths below the overshoot-corrected fine max by n^{1/alpha}.
LimitDraw sample_prelimit(const ModelSpec& m, int n, int refine, int k, std::uint64_t seed);

// Conditional distribution of the supremum overshoot given the window:
//   H(x) = prod_j F(x + u_j - v, u_j - u_{j+1})
// over window intervals j.  H(0) = 0 and H is nondecreasing; factors whose
// exponential tail bound is negligible are skipped.
double limit_H(const CondSupLaw& law, const LimitDraw& d, double x);
// Same, restricted to intervals within +-window_k of the argmin.
double limit_H(const CondSupLaw& law, const LimitDraw& d, double x, int window_k);

// Grid layout for recovering overshoot statistics from H.
struct RecoveryConfig {
    double grid_step = 0.01;
    double grid_max = 0.0;     // 0: extend until 1 - H < 1e-12 (capped at 60)
    bool grid_median = false;  // true: median by linear inverse on the grid;
                               // false: bisection refined to +-1e-10
    int window_k = 1;          // half-width for the windowed mean variant
};

// Recovery layouts used by the experiment tables: a fine adaptive grid with a
// bisection median for Brownian models, a fixed coarse grid with a
// linear-inverse median for stable ones (each conditional-law factor there
// costs a quadrature).
RecoveryConfig default_recovery(const ModelSpec& m);

// Mean-integral and median of the overshoot law from one grid scan:
//   mean_integral = int_0^infty (1 - H),  H(median_x) = 1/2.
struct HRecovery {
    double mean_integral = 0.0;
    double median_x = 0.0;
    double scan_end = 0.0; // where the mean integral stopped
    double h_end = 0.0;    // H at scan_end
};

HRecovery recover_h(const CondSupLaw& law, const LimitDraw& d, const RecoveryConfig& cfg);

// Errors of the supremum recoveries in rescaled units: the raw grid max (v),
// the conditional mean and median corrections, the constant-shift correction,
// and the windowed conditional mean.
struct LimitVariates {
    double v = 0.0;
    double v_mean = 0.0;
    double v_med = 0.0;
    double v_shift = 0.0;
    double v_mean_k = 0.0;
};

LimitVariates recover_variates(const CondSupLaw& law, const LimitDraw& d,
                               const RecoveryConfig& cfg);

} // namespace levyopt
