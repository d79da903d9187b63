#pragma once
#include <cmath>

// Small special-function toolbox: standard normal pdf/cdf, a Mills-ratio
// evaluation that stays accurate far in the tail, and a few constants used
// across the library.

namespace levyopt {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;

// Riemann zeta at 1/2; enters the expected gap between the supremum of a
// Brownian path and its best discrete observation.
inline constexpr double kZetaHalf = -1.46035450880958681289;

// E[min of the two-sided Bessel limit] for standard Brownian motion.
inline constexpr double kBesselMinMeanBm = 0.58259718679568263; // -zeta(1/2)/sqrt(2*pi)

inline constexpr double kEulerGamma = 0.57721566490153286061;

inline double norm_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }
inline double norm_sf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

// Scaled complementary error function exp(u^2) * erfc(u), u >= 0.
double erfcx_pos(double u);

// Inverse standard normal CDF (rational seed + one Halley step; ~1e-15).
double norm_quantile(double p);

// Mills ratio norm_sf(w)/norm_pdf(w), stable for large positive w.  For
// negative w the direct quotient is well conditioned and is used as-is.
double mills_ratio(double w);

} // namespace levyopt
