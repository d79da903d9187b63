#include "core/sup_estimators.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/path_sim.hpp"

namespace levyopt {

namespace {

// depths below the grid max in rescaled units; v = 0 at the argmax
LimitDraw draw_from_obs(const std::vector<double>& obs, double r, int* argmax_out) {
    const auto it = std::max_element(obs.begin(), obs.end());
    const int I = static_cast<int>(it - obs.begin());
    const int n = static_cast<int>(obs.size()) - 1;
    const double M = *it;
    LimitDraw d;
    d.j_lo = -I;
    d.j_hi = n - I;
    d.u.reserve(obs.size());
    for (int j = d.j_lo; j <= d.j_hi; ++j)
        d.u.push_back(r * (M - obs[static_cast<std::size_t>(I + j)]));
    d.v = 0.0;
    if (argmax_out) *argmax_out = I;
    return d;
}

// Bound on int_{x_end}^infty (1 - H).  Two facts combine: the union bound
//   1 - H(x) <= S(x) := sum_j c exp(-(x + u_j - v - (u_j - u_{j+1})^+)),
// and monotonicity, 1 - H(x) <= t := 1 - H(x_end).  Splitting the integral at
// the crossover S(x) = t gives t (log(S(x_end)/t) + 1) when S(x_end) > t.
double mean_integral_tail(const CondSupLaw& law, const LimitDraw& d, double x_end,
                          double h_end) {
    const double c = law.envelope_c();
    double s = 0.0;
    for (int j = d.j_lo; j < d.j_hi; ++j) {
        const double a =
            d.u_at(j) - d.v - std::max(d.u_at(j) - d.u_at(j + 1), 0.0);
        s += c * std::exp(-(x_end + a));
    }
    const double t = 1.0 - h_end;
    if (t <= 0.0) return 0.0; // H saturated in double precision
    if (s <= t) return s;
    return t * (std::log(s / t) + 1.0);
}

} // namespace

double max_estimator(const std::vector<double>& obs) {
    if (obs.empty()) throw DegeneratePath("max_estimator: empty path");
    return *std::max_element(obs.begin(), obs.end());
}

double sup_cdf(const CondSupLaw& law, const std::vector<double>& obs, double x, int window_k) {
    if (obs.size() < 2) throw DegeneratePath("sup_cdf: need at least two observations");
    const int n = static_cast<int>(obs.size()) - 1;
    const double r = std::pow(static_cast<double>(n), 1.0 / law.model().alpha_effective());
    const LimitDraw d = draw_from_obs(obs, r, nullptr);
    if (window_k > 0) return limit_H(law, d, r * x, window_k);
    return limit_H(law, d, r * x);
}

SupReport sup_report(const CondSupLaw& law, const std::vector<double>& obs, int window_k,
                     const RecoveryConfig* cfg_in) {
    if (obs.size() < 2) throw DegeneratePath("sup_report: need at least two observations");
    const ModelSpec& m = law.model();
    if (!m.is_bm() && m.stable.alpha <= 1.0 && window_k <= 0)
        throw MeanUndefined("sup_report: untruncated conditional mean needs alpha > 1; "
                            "pass a truncation window");

    const int n = static_cast<int>(obs.size()) - 1;
    const double r = std::pow(static_cast<double>(n), 1.0 / m.alpha_effective());

    SupReport rep;
    LimitDraw d = draw_from_obs(obs, r, &rep.argmax);
    rep.grid_max = obs[static_cast<std::size_t>(rep.argmax)];
    rep.window_k = std::max(window_k, 0);
    if (window_k > 0) d = d.window(window_k);

    const RecoveryConfig cfg = cfg_in ? *cfg_in : default_recovery(m);
    const HRecovery rec = recover_h(law, d, cfg);
    rep.mean = rep.grid_max + rec.mean_integral / r;
    rep.median = rep.grid_max + rec.median_x / r;
    rep.shift = rep.grid_max + mean_discretization_gap(m) / r;
    rep.integral_tail = mean_integral_tail(law, d, rec.scan_end, rec.h_end) / r;
    return rep;
}

SupReport plug_in_sup(const ModelSpec& estimated, const std::vector<double>& obs, int window_k,
                      const RecoveryConfig* cfg) {
    const CondSupLaw law(estimated);
    return sup_report(law, obs, window_k, cfg);
}

SupInfReport joint_sup_inf(const ModelSpec& m, const std::vector<double>& obs, int window_k,
                           const RecoveryConfig* cfg) {
    const CondSupLaw sup_law(m);
    const CondSupLaw inf_law(m.negated());
    std::vector<double> neg(obs.size());
    std::transform(obs.begin(), obs.end(), neg.begin(), [](double x) { return -x; });

    SupInfReport out;
    out.sup = sup_report(sup_law, obs, window_k, cfg);
    const SupReport nr = sup_report(inf_law, neg, window_k, cfg);
    out.inf.grid_max = -nr.grid_max; // grid min
    out.inf.argmax = nr.argmax;      // index of the grid min
    out.inf.mean = -nr.mean;
    out.inf.median = -nr.median;
    out.inf.shift = -nr.shift;
    out.inf.integral_tail = nr.integral_tail;
    out.inf.window_k = nr.window_k;
    out.diameter = out.sup.mean - out.inf.mean;
    return out;
}

} // namespace levyopt
