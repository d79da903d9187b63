#include "core/param_estimators.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace levyopt {

ModelSpec EstimatedParams::to_model() const {
    return is_bm ? make_bm(sigma) : make_stable(stable);
}

double estimate_sigma(const std::vector<double>& obs) {
    if (obs.size() < 2) throw DegeneratePath("estimate_sigma: need at least two observations");
    double qv = 0.0;
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const double d = obs[i] - obs[i - 1];
        qv += d * d;
    }
    if (qv <= 0.0) throw DegeneratePath("estimate_sigma: constant path");
    return std::sqrt(qv);
}

EstimatedParams estimate_bm(const std::vector<double>& obs) {
    EstimatedParams e;
    e.is_bm = true;
    e.sigma = estimate_sigma(obs);
    e.n = static_cast<int>(obs.size()) - 1;
    return e;
}

double cap_alpha(double alpha_raw, double rho) {
    if (alpha_raw <= 1.0) return alpha_raw;
    return std::min(alpha_raw, 1.0 / std::max(rho, 1.0 - rho));
}

EstimatedParams estimate_stable_triplet(const std::vector<double>& obs, double q) {
    if (obs.size() < 3)
        throw DegeneratePath("estimate_stable_triplet: need at least three observations");
    if (!(q > -0.5) || !(q < 0.0))
        throw BadArgument("estimate_stable_triplet: q must lie in (-1/2, 0)");
    const int n = static_cast<int>(obs.size()) - 1;

    double s1 = 0.0, s2 = 0.0, log_sum = 0.0;
    int positive = 0;
    for (int i = 1; i <= n; ++i) {
        const double d = obs[static_cast<std::size_t>(i)] - obs[static_cast<std::size_t>(i) - 1];
        if (d == 0.0)
            throw DegenerateEstimate("estimate_stable_triplet: zero increment");
        s1 += std::pow(std::fabs(d), q);
        log_sum += std::log(std::fabs(d));
        if (d > 0.0) ++positive;
        if (i >= 2) {
            const double d2 =
                obs[static_cast<std::size_t>(i)] - obs[static_cast<std::size_t>(i) - 2];
            if (d2 == 0.0)
                throw DegenerateEstimate("estimate_stable_triplet: zero two-step increment");
            s2 += std::pow(std::fabs(d2), q);
        }
    }

    const double denom = std::log(s2) - std::log(s1);
    if (!(denom < 0.0))
        throw DegenerateEstimate("estimate_stable_triplet: power-variation ratio not informative");

    EstimatedParams e;
    e.is_bm = false;
    e.q = q;
    e.n = n;
    e.alpha_raw = q * std::log(2.0) / denom;

    double rho = static_cast<double>(positive) / n;
    double alpha = cap_alpha(e.alpha_raw, rho);
    e.truncation_applied = alpha != e.alpha_raw;

    // keep the pair strictly inside the legal region before model construction
    constexpr double kEdge = 1e-6;
    alpha = std::min(alpha, 2.0 - kEdge);
    if (std::fabs(alpha - 1.0) < kEdge) {
        alpha = alpha >= 1.0 ? 1.0 + kEdge : 1.0 - kEdge;
        e.truncation_applied = true;
    }
    if (alpha > 1.0) {
        rho = std::clamp(rho, 1.0 - 1.0 / alpha, 1.0 / alpha);
    } else {
        rho = std::clamp(rho, kEdge, 1.0 - kEdge);
    }

    const double lambda = std::log(static_cast<double>(n)) / alpha + log_sum / n;
    e.stable = stable_from_positivity(alpha, rho, lambda);
    return e;
}

} // namespace levyopt
