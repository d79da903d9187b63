#pragma once

#include <functional>
#include <vector>

namespace levyopt {

// ---------------- summary statistics ----------------

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // population convention (1/N)
double rmse(const std::vector<double>& errors);  // sqrt(mean of squares)
double mae(const std::vector<double>& errors);

// Length of the narrowest window containing a `level` fraction of the sample:
// min over i of x_(i+ceil(level*N)-1) - x_(i) on the sorted values.
// Throws TooFewSamples when N < max(20, 1/(1-level)).
double shortest_ci(std::vector<double> samples, double level = 0.95);

// ---------------- kernel density ----------------

struct KdeCurve {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

// Silverman's rule-of-thumb bandwidth 1.06 * sd * N^(-1/5).
double silverman_bandwidth(const std::vector<double>& samples);

// Gaussian-kernel density estimate on the given grid. Needs >= 2 samples.
KdeCurve kde(const std::vector<double>& samples, const std::vector<double>& grid);

// Convenience: uniform grid of `points` values spanning the sample range
// padded by `pad` bandwidths on each side.
std::vector<double> kde_grid(const std::vector<double>& samples, int points = 256,
                             double pad = 3.0);

// ---------------- goodness of fit ----------------

// One-sample Kolmogorov-Smirnov statistic against a reference CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Asymptotic two-sample KS critical value c(alpha) * sqrt((n+m)/(n m)) with
// c(alpha) = sqrt(-log(alpha/2)/2); c(0.01) = 1.628.
double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha = 0.01);

}  // namespace levyopt
