#include "core/local_occupation.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/special.hpp"

namespace levyopt {

// ---------------- kernels ----------------

double kernel_g(double x, double z) {
    if (x < 0.0) return kernel_g(-x, -z);
    if (z < x) return mills_ratio(2.0 * x - z) * std::exp(-2.0 * x * (x - z));
    return mills_ratio(z);
}

double kernel_G(double x, double z) {
    if (x < 0.0) return 1.0 - kernel_G(-x, -z);
    if (z < x) {
        const double w = 2.0 * x - z;
        return 0.5 * std::exp(-2.0 * x * (x - z)) * (1.0 - w * mills_ratio(w));
    }
    return 0.5 + 0.5 * (z - 2.0 * x) * mills_ratio(z);
}

double kernel_alt(double x) {
    const double a = std::fabs(x);
    return 2.0 * norm_pdf(a) * (1.0 - a * mills_ratio(a));
}

// ---------------- estimators ----------------

namespace {

// number of whole intervals covered by [0, t]
int interval_count(const std::vector<double>& obs, double t, bool strict) {
    if (obs.size() < 2) throw DegeneratePath("need at least two observations");
    const int n = static_cast<int>(obs.size()) - 1;
    if (!(t > 0.0) || t > 1.0 + 1e-12) throw GridMismatch("t must lie in (0, 1]");
    const double nt = t * n;
    const double rounded = std::round(nt);
    if (std::fabs(nt - rounded) > 1e-9 * n) {
        if (strict) throw GridMismatch("n*t is not integral");
        return static_cast<int>(std::floor(nt));
    }
    return static_cast<int>(rounded);
}

template <typename Term>
OccLocalEstimate sum_over_intervals(const std::vector<double>& obs, double sigma, double t,
                                    double x, bool strict, double prefactor, Term&& term) {
    const int m = interval_count(obs, t, strict);
    const int n = static_cast<int>(obs.size()) - 1;
    const double r = std::sqrt(static_cast<double>(n)) / sigma;
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) {
        const double start = obs[static_cast<std::size_t>(i) - 1];
        const double inc = obs[static_cast<std::size_t>(i)] - start;
        acc += term(r * (x - start), r * inc);
    }
    return {t, x, prefactor * acc, n, sigma};
}

} // namespace

OccLocalEstimate estimate_local_time(const std::vector<double>& obs, double sigma, double t,
                                     double x, bool strict) {
    const double n = static_cast<double>(obs.size()) - 1.0;
    return sum_over_intervals(obs, sigma, t, x, strict, 1.0 / (sigma * std::sqrt(n)),
                              [](double xs, double zs) { return kernel_g(xs, zs); });
}

OccLocalEstimate estimate_occupation(const std::vector<double>& obs, double sigma, double t,
                                     double x, bool strict) {
    const double n = static_cast<double>(obs.size()) - 1.0;
    return sum_over_intervals(obs, sigma, t, x, strict, 1.0 / n,
                              [](double xs, double zs) { return kernel_G(xs, zs); });
}

OccLocalEstimate estimate_local_time_alt(const std::vector<double>& obs, double sigma, double t,
                                         double x, bool strict) {
    const double n = static_cast<double>(obs.size()) - 1.0;
    return sum_over_intervals(obs, sigma, t, x, strict, 1.0 / (sigma * std::sqrt(n)),
                              [](double xs, double) { return kernel_alt(xs); });
}

OccLocalEstimate baseline_local_time(const std::vector<double>& obs, double t, double x,
                                     bool strict) {
    const int m = interval_count(obs, t, strict);
    const int n = static_cast<int>(obs.size()) - 1;
    const double band = 1.0 / std::sqrt(static_cast<double>(n));
    int hits = 0;
    for (int i = 0; i < m; ++i)
        if (std::fabs(obs[static_cast<std::size_t>(i)] - x) < band) ++hits;
    return {t, x, 0.5 * band * hits, n, 1.0};
}

OccLocalEstimate baseline_occupation(const std::vector<double>& obs, double t, double x,
                                     bool strict) {
    const int m = interval_count(obs, t, strict);
    const int n = static_cast<int>(obs.size()) - 1;
    int hits = 0;
    for (int i = 0; i < m; ++i)
        if (obs[static_cast<std::size_t>(i)] >= x) ++hits;
    return {t, x, static_cast<double>(hits) / n, n, 1.0};
}

AsymptoticConstants asymptotic_constants() {
    const double sq_pi = std::sqrt(kPi);
    const double l1p = std::log1p(kSqrt2);
    return {2.0 * (3.0 * l1p - kSqrt2) / (3.0 * sq_pi),
            (13.0 * kSqrt2 - 15.0 * l1p) / (45.0 * sq_pi),
            8.0 * (kSqrt2 - 1.0) / (3.0 * sq_pi)};
}

} // namespace levyopt
