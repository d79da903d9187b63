#pragma once
#include <vector>

#include "core/model.hpp"

namespace levyopt {

// Parameters recovered from one observed path, ready for plug-in use.  The
// stable triplet is legality-truncated: alpha above 1 is capped at
// 1/(rho or 1-rho, whichever is larger) and rho is clipped to the admissible
// band for the final alpha.
struct EstimatedParams {
    bool is_bm = true;
    double sigma = 0.0;     // Brownian fit
    StableParams stable{};  // stable fit (legal)
    double alpha_raw = 0.0; // stable fit before the legality cap
    double q = 0.0;         // power used in the alpha estimator
    int n = 0;
    bool truncation_applied = false;

    ModelSpec to_model() const;
};

// sqrt of the realized quadratic variation; the scale MLE for Brownian paths.
double estimate_sigma(const std::vector<double>& obs);

EstimatedParams estimate_bm(const std::vector<double>& obs);

// Stable triplet from power variations with exponent q in (-1/2, 0):
//   alpha_n  = q log 2 / (log sum |two-step increments|^q - log sum |increments|^q)
//   rho_n    = fraction of positive increments
//   lambda_n = log(n)/alpha_n + mean of log |increments|
// Throws DegeneratePath (constant path), DegenerateEstimate (zero increment
// with q < 0, or a log-ratio of the wrong sign at tiny n).
EstimatedParams estimate_stable_triplet(const std::vector<double>& obs, double q = -0.25);

// alpha legality cap given the sign frequency (exposed for direct testing)
double cap_alpha(double alpha_raw, double rho);

} // namespace levyopt
