#include "core/cond_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/special.hpp"

namespace levyopt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

CondSupLaw::CondSupLaw(const ModelSpec& m) : model_(m) {
    if (!m.is_bm()) {
        if (!m.one_sided_jumps())
            throw UnsupportedModel(
                "conditional supremum law needs Brownian motion or one-sided stable jumps");
        mirrored_ = m.stable.spectrally_positive();
        const StableParams p =
            mirrored_ ? stable_from_skewness(m.stable.alpha, -1.0, m.stable.scale) : m.stable;
        dens_ = std::make_shared<StableDensity>(p);
        inv_alpha_ = 1.0 / m.stable.alpha;
    }

    // calibrate the exponential envelope: c = 2 max over a coarse lattice of
    // survival(x, y) * exp(x - max(y,0))
    const double s = m.is_bm() ? m.sigma : m.stable.scale;
    double c = 1.0;
    for (int iy = -24; iy <= 24; ++iy) {
        const double y = 0.25 * s * iy;
        const double y_pos = std::max(y, 0.0);
        for (int iu = 1; iu <= 40; ++iu) {
            const double u = 0.2 * s * iu;
            c = std::max(c, survival(y_pos + u, y) * std::exp(u));
        }
    }
    bound_c_ = 2.0 * c;
}

double CondSupLaw::log_survival(double x, double y) const {
    if (model_.is_bm()) {
        if (x <= std::max(y, 0.0)) return 0.0;
        const double s2 = model_.sigma * model_.sigma;
        return -2.0 * x * (x - y) / s2;
    }
    if (mirrored_) return log_survival_neg(x - y, -y);
    return log_survival_neg(x, y);
}

double CondSupLaw::log_survival_neg(double x, double y) const {
    if (x <= std::max(y, 0.0)) return 0.0;
    const double lf_y = dens_->log_density(y);
    if (!std::isfinite(lf_y)) return kNegInf; // endpoint out of numeric support
    const double log_x = std::log(x), log_ymx = std::log(x - y);
    auto lg = [&](double log_t, double log_1mt) {
        const double la1 = log_x - inv_alpha_ * log_t;        // log of x t^{-1/a}
        const double la2 = log_ymx - inv_alpha_ * log_1mt;    // log of (x-y)(1-t)^{-1/a}
        if (la1 > 690.0 && la2 > 690.0) return kNegInf;
        const double f1 = dens_->log_density(std::exp(la1));
        const double f2 = dens_->log_density(-std::exp(la2));
        return (-inv_alpha_ - 1.0) * log_t - inv_alpha_ * log_1mt + f1 + f2;
    };
    const double log_q = log_x + tanh_sinh_log01(lg, 1e-9);
    return std::min(0.0, log_q - lf_y);
}

double CondSupLaw::survival(double x, double y) const {
    return std::exp(log_survival(x, y));
}

double CondSupLaw::F(double x, double y) const {
    return -std::expm1(log_survival(x, y));
}

double CondSupLaw::tail_bound(double x, double y) const {
    return std::min(1.0, bound_c_ * std::exp(-(x - std::max(y, 0.0))));
}

} // namespace levyopt
