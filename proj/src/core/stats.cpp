#include "core/stats.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/special.hpp"

namespace levyopt {

// ---------------- summary statistics ----------------

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw TooFewSamples("mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / (double)xs.size();
}

double variance(const std::vector<double>& xs) {
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / (double)xs.size();
}

double rmse(const std::vector<double>& errors) {
    if (errors.empty()) throw TooFewSamples("rmse: empty sample");
    double s = 0.0;
    for (double e : errors) s += e * e;
    return std::sqrt(s / (double)errors.size());
}

double mae(const std::vector<double>& errors) {
    if (errors.empty()) throw TooFewSamples("mae: empty sample");
    double s = 0.0;
    for (double e : errors) s += std::fabs(e);
    return s / (double)errors.size();
}

double shortest_ci(std::vector<double> samples, double level) {
    if (level <= 0.0 || level >= 1.0) throw TooFewSamples("shortest_ci: level outside (0,1)");
    const std::size_t n = samples.size();
    const double need = std::max(20.0, 1.0 / (1.0 - level));
    if ((double)n < need) throw TooFewSamples("shortest_ci: sample too small for level");
    std::sort(samples.begin(), samples.end());
    const auto w = (std::size_t)std::ceil(level * (double)n);  // window size
    double best = samples[n - 1] - samples[0];
    for (std::size_t i = 0; i + w <= n; ++i)
        best = std::min(best, samples[i + w - 1] - samples[i]);
    return best;
}

// ---------------- kernel density ----------------

double silverman_bandwidth(const std::vector<double>& samples) {
    if (samples.size() < 2) throw TooFewSamples("silverman_bandwidth: need at least 2 samples");
    const double sd = std::sqrt(variance(samples));
    return 1.06 * sd * std::pow((double)samples.size(), -0.2);
}

KdeCurve kde(const std::vector<double>& samples, const std::vector<double>& grid) {
    const double h = silverman_bandwidth(samples);
    KdeCurve out;
    out.grid = grid;
    out.bandwidth = h;
    out.density.resize(grid.size(), 0.0);
    const double norm = 1.0 / ((double)samples.size() * h);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double s = 0.0;
        for (double x : samples) s += norm_pdf((grid[g] - x) / h);
        out.density[g] = norm * s;
    }
    return out;
}

std::vector<double> kde_grid(const std::vector<double>& samples, int points, double pad) {
    const double h = silverman_bandwidth(samples);
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *mn - pad * h, hi = *mx + pad * h;
    std::vector<double> g((std::size_t)points);
    for (int i = 0; i < points; ++i)
        g[(std::size_t)i] = lo + (hi - lo) * (double)i / (double)(points - 1);
    return g;
}

// ---------------- goodness of fit ----------------

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw TooFewSamples("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = (double)sample.size();
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs(f - (double)i / n));
        d = std::max(d, std::fabs((double)(i + 1) / n - f));
    }
    return d;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw TooFewSamples("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = (double)a.size(), nb = (double)b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs((double)i / na - (double)j / nb));
    }
    return d;
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha) {
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    return c * std::sqrt((double)(n + m) / ((double)n * (double)m));
}

}  // namespace levyopt
