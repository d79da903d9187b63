#pragma once
#include <memory>

#include "core/model.hpp"

namespace levyopt {

// Law of the running supremum over a unit time window conditional on the
// endpoint:
//   F(x, y) = P( sup_{[0,1]} X <= x | X_1 = y ).
// Supported: Brownian motion (closed form) and strictly stable processes with
// one-sided jumps, where the survival probability has an exact
// single-integral representation in terms of the marginal density,
//   P(sup > x | X_1 = y) f(y)
//     = x Int_0^1 t^{-1/a-1} (1-t)^{-1/a} f(x t^{-1/a}) f((y-x)(1-t)^{-1/a}) dt
// for no positive jumps (the positive-jump case follows by time reversal:
// survival(x, y) = survival'(x-y, -y) under the negated law).  Two-sided
// stable jumps have no such representation here and are rejected.
class CondSupLaw {
  public:
    explicit CondSupLaw(const ModelSpec& m); // throws UnsupportedModel

    double F(double x, double y) const;
    double survival(double x, double y) const;
    double log_survival(double x, double y) const;

    // Envelope c * exp(-(x - max(y,0))) >= survival(x, y), with c calibrated
    // once on a coarse lattice; used to truncate tail integrals.
    double tail_bound(double x, double y) const;
    double envelope_c() const { return bound_c_; }

    const ModelSpec& model() const { return model_; }

  private:
    double log_survival_neg(double x, double y) const; // no-positive-jumps core

    ModelSpec model_;
    std::shared_ptr<StableDensity> dens_; // oriented to have no positive jumps
    bool mirrored_ = false;               // original law had positive jumps
    double inv_alpha_ = 0.5;
    double bound_c_ = 1.0;
};

} // namespace levyopt
