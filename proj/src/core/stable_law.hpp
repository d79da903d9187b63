#pragma once
#include <memory>
#include <vector>

#include "core/interp.hpp"
#include "core/rng.hpp"

namespace levyopt {

// Strictly alpha-stable law, parameterized by the triplet
//   alpha  - stability index, (0,2)
//   rho    - positivity parameter P(X_1 > 0)
//   lambda - log-scale E[log|X_1|]
// plus the derived classical pair (beta, scale) with characteristic function
//   E exp(izX_1) = exp(-scale^alpha |z|^alpha (1 - i beta tan(pi alpha/2) sgn z))
// for alpha != 1; alpha == 1 is admitted only as the symmetric Cauchy law.
struct StableParams {
    double alpha = 0;
    double rho = 0;
    double lambda = 0;
    double beta = 0;
    double scale = 1;

    bool spectrally_negative() const { return beta == -1.0; }
    bool spectrally_positive() const { return beta == 1.0; }
    bool one_sided() const { return spectrally_negative() || spectrally_positive(); }
};

// Build from (alpha, rho, lambda); throws IllegalTriplet when the triplet does
// not correspond to a strictly stable, non-monotone process.
StableParams stable_from_positivity(double alpha, double rho, double lambda);

// Build from (alpha, beta, scale); same legality screen, rho/lambda derived.
StableParams stable_from_skewness(double alpha, double beta, double scale);

// Positivity parameter from skewness, alpha != 1.
double rho_from_beta(double alpha, double beta);

// E[log|X_1|] at unit scale for (alpha, beta); computed by quadrature against
// the cached density table and memoized.
double stable_unit_log_moment(double alpha, double beta);

// One draw of the standard (unit-scale) strictly stable law via the
// Chambers-Mallows-Stuck transform.
double sample_standard_stable(double alpha, double beta, Rng& rng);

// One increment over a time step dt: dt^{1/alpha} * scale * standard draw.
double sample_stable_increment(const StableParams& p, double dt, Rng& rng);

// Density/CDF evaluator for X_1.  Values come from Fourier inversion of the
// characteristic function, cached on a log-spaced grid of log f with monotone
// cubic interpolation; beyond the grid the power tail (heavy side) or the
// super-exponential tail (light side of a one-sided law) takes over.
//
// Table support: alpha in [0.45, 2) with |alpha-1| >= 0.01, or the exact
// Cauchy case (alpha == 1, beta == 0).  Outside that range construction
// throws UnsupportedModel (sampling is unaffected).
class StableDensity {
  public:
    explicit StableDensity(const StableParams& p);

    double log_density(double x) const; // -inf where the density underflows
    double density(double x) const { return std::exp(log_density(x)); }
    double cdf(double x) const;
    double quantile(double p) const;

    // E[log|X_1|] for this law (includes the scale shift).
    double log_moment() const;

    // Coefficient c of the right tail f(x) ~ c x^{-alpha-1} (0 when the right
    // tail is the light one); left_tail_coeff is the mirror image.
    double right_tail_coeff() const;
    double left_tail_coeff() const;

    const StableParams& params() const { return params_; }

    // Table nodes mapped back to this law's scale, for CSV export: (x, f(x)).
    std::vector<std::pair<double, double>> table_points() const;

  private:
    struct UnitTable;
    static std::shared_ptr<const UnitTable> unit_table(double alpha, double beta);

    StableParams params_;
    std::shared_ptr<const UnitTable> table_; // canonical beta <= 0
    bool mirrored_ = false;                  // true when params_.beta > 0
    bool cauchy_ = false;
};

// Asymptotic tail constant: P(X > x) ~ C(alpha) (1+beta)/2 scale^alpha x^-alpha.
double stable_tail_constant(double alpha);

} // namespace levyopt
