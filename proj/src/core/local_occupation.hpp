#pragma once
#include <vector>

namespace levyopt {

// Unit-interval bridge kernels in standardized coordinates (start at 0,
// increment z over unit time, level x):
//   kernel_g(x, z) = E[ local time at x | increment z ]
//   kernel_G(x, z) = E[ time spent above x | increment z ]
//   kernel_alt(x)  = E[ local time at x ]  (level only, no conditioning on z)
// Mills-ratio-stable branches; exact symmetries g(x,z) = g(-x,-z) and
// G(x,z) = 1 - G(-x,-z).
double kernel_g(double x, double z);
double kernel_G(double x, double z);
double kernel_alt(double x);

struct OccLocalEstimate {
    double t = 1.0;
    double x = 0.0;
    double value = 0.0;
    int n = 0;
    double sigma = 1.0;
};

// Conditional-mean estimators from n+1 equally spaced observations of a
// Brownian path with volatility sigma on [0,1]:
//   local time:  (1/(sigma sqrt n)) sum_i g(sqrt n/sigma (x - X_{(i-1)/n}), sqrt n/sigma D_i)
//   occupation:  (1/n)              sum_i G(same arguments)
// summed over the first n*t intervals.  n*t must be integral; strict mode
// throws GridMismatch, lenient mode floors.
OccLocalEstimate estimate_local_time(const std::vector<double>& obs, double sigma, double t,
                                     double x, bool strict = true);
OccLocalEstimate estimate_occupation(const std::vector<double>& obs, double sigma, double t,
                                     double x, bool strict = true);
// Same sum with the level-only kernel (larger asymptotic variance).
OccLocalEstimate estimate_local_time_alt(const std::vector<double>& obs, double sigma, double t,
                                         double x, bool strict = true);

// Counting baselines (no model input):
//   local time:  (1/(2 sqrt n)) #{ i in [0, nt) : |X_{i/n} - x| < 1/sqrt n }
//   occupation:  (1/n)          #{ i in [0, nt) : X_{i/n} >= x }
OccLocalEstimate baseline_local_time(const std::vector<double>& obs, double t, double x,
                                     bool strict = true);
OccLocalEstimate baseline_occupation(const std::vector<double>& obs, double t, double x,
                                     bool strict = true);

// Asymptotic variance constants of the three estimators (per unit local time,
// sigma = 1): conditional-mean local time, conditional-mean occupation,
// level-only-kernel local time.
struct AsymptoticConstants {
    double v_l2 = 0.0;
    double v_o2 = 0.0;
    double v_alt2 = 0.0;
};
AsymptoticConstants asymptotic_constants();

} // namespace levyopt
