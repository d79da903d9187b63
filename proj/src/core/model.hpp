#pragma once
#include "core/rng.hpp"
#include "core/stable_law.hpp"

namespace levyopt {

enum class ModelType { BrownianMotion, Stable };

// Process picker for everything downstream: Brownian motion with volatility
// sigma, or a strictly alpha-stable process given by its parameter triplet.
struct ModelSpec {
    ModelType type = ModelType::BrownianMotion;
    double sigma = 1.0;     // Brownian case
    StableParams stable{};  // stable case

    bool is_bm() const { return type == ModelType::BrownianMotion; }
    double alpha_effective() const { return is_bm() ? 2.0 : stable.alpha; }
    bool one_sided_jumps() const { return type == ModelType::Stable && stable.one_sided(); }

    // law of -X; turns infimum questions into supremum ones
    ModelSpec negated() const;
};

ModelSpec make_bm(double sigma);
ModelSpec make_stable_triplet(double alpha, double rho, double lambda);
ModelSpec make_stable_skew(double alpha, double beta, double scale);
ModelSpec make_stable(const StableParams& p);

// one increment of X over a time step dt
double sample_increment(const ModelSpec& m, double dt, Rng& rng);

} // namespace levyopt
