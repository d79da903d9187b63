#include "core/model.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace levyopt {

ModelSpec ModelSpec::negated() const {
    if (is_bm()) return *this; // symmetric
    ModelSpec m = *this;
    m.stable = stable_from_skewness(stable.alpha, -stable.beta, stable.scale);
    return m;
}

ModelSpec make_bm(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw IllegalTriplet("sigma must be positive and finite");
    ModelSpec m;
    m.type = ModelType::BrownianMotion;
    m.sigma = sigma;
    return m;
}

ModelSpec make_stable(const StableParams& p) {
    ModelSpec m;
    m.type = ModelType::Stable;
    m.stable = p;
    return m;
}

ModelSpec make_stable_triplet(double alpha, double rho, double lambda) {
    return make_stable(stable_from_positivity(alpha, rho, lambda));
}

ModelSpec make_stable_skew(double alpha, double beta, double scale) {
    return make_stable(stable_from_skewness(alpha, beta, scale));
}

double sample_increment(const ModelSpec& m, double dt, Rng& rng) {
    if (m.is_bm()) return m.sigma * std::sqrt(dt) * rng.normal();
    return sample_stable_increment(m.stable, dt, rng);
}

} // namespace levyopt
