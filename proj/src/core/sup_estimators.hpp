#pragma once
#include <vector>

#include "core/cond_law.hpp"
#include "core/limit_sampler.hpp"

namespace levyopt {

// Supremum recovery from n+1 equally spaced observations of the process over
// [0, 1].  The grid max is always a lower bound for the supremum; the
// conditional overshoot distribution H_n lets us do better:
//   H_n(x) = prod_j F(n^{1/a}(x + D_j), n^{1/a}(D_j - D_{j+1})),
// where D_j is the depth of observation j below the grid max.  Recoveries:
//   mean   = M_n + int_0^infty (1 - H_n)
//   median = M_n + H_n^{-1}(1/2)
//   shift  = M_n + n^{-1/a} * (mean discretization gap)
struct SupReport {
    double grid_max = 0.0;
    int argmax = 0;
    double mean = 0.0;
    double median = 0.0;
    double shift = 0.0;
    // certified bound on the part of the mean integral beyond the scan grid
    // (diagnostic only, never added to the estimate)
    double integral_tail = 0.0;
    int window_k = 0; // 0: full product over all n intervals
};

double max_estimator(const std::vector<double>& obs);

// H_n at overshoot x in path units (x >= 0); window_k > 0 restricts the
// product to the 2k intervals around the argmax.
double sup_cdf(const CondSupLaw& law, const std::vector<double>& obs, double x,
               int window_k = 0);

// All recoveries in one pass.  cfg defaults to default_recovery(model).
// Throws DegeneratePath (fewer than two observations), MeanUndefined
// (untruncated conditional mean for stable alpha <= 1).
SupReport sup_report(const CondSupLaw& law, const std::vector<double>& obs, int window_k = 0,
                     const RecoveryConfig* cfg = nullptr);

// Same pipeline with estimated parameters standing in for the true ones (the
// estimated alpha also drives the n^{1/a} rescaling).
SupReport plug_in_sup(const ModelSpec& estimated, const std::vector<double>& obs,
                      int window_k = 0, const RecoveryConfig* cfg = nullptr);

// Supremum and infimum together; the infimum is recovered by running the
// supremum machinery on the negated path under the negated model.
struct SupInfReport {
    SupReport sup;
    SupReport inf;        // estimates of the infimum (grid_max = grid min, etc.)
    double diameter = 0.0; // sup mean recovery - inf mean recovery
};

SupInfReport joint_sup_inf(const ModelSpec& m, const std::vector<double>& obs,
                           int window_k = 0, const RecoveryConfig* cfg = nullptr);

} // namespace levyopt
