#include "core/limit_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/path_sim.hpp"
#include "core/rng.hpp"

namespace levyopt {

namespace {
constexpr std::uint64_t kTagOffset = 0x626c7531u; // shared grid offset U
constexpr std::uint64_t kTagPlus = 0x626c7532u;   // right Bessel branch
constexpr std::uint64_t kTagMinus = 0x626c7533u;  // left Bessel branch
} // namespace

int LimitDraw::argmin() const {
    const auto it = std::min_element(u.begin(), u.end());
    return j_lo + static_cast<int>(it - u.begin());
}

LimitDraw LimitDraw::window(int k) const {
    const int j0 = argmin();
    const int lo = std::max(j_lo, j0 - k);
    const int hi = std::min(j_hi, j0 + k);
    LimitDraw d;
    d.j_lo = lo - j0;
    d.j_hi = hi - j0;
    d.u.assign(u.begin() + (lo - j_lo), u.begin() + (hi - j_lo) + 1);
    d.v = v;
    return d;
}

// ---------------- draws ----------------

LimitDraw sample_bessel_limit(double sigma, int K, std::uint64_t seed) {
    if (K < 1 || sigma <= 0.0) throw BadArgument("sample_bessel_limit: K >= 1, sigma > 0");
    LimitDraw d;
    d.j_lo = -K;
    d.j_hi = K;
    d.u.assign(2 * static_cast<std::size_t>(K) + 1, 0.0);

    Rng ru(mix_seed(seed, kTagOffset));
    const double U = ru.uniform01();

    // each branch is |W| for a 3-d Brownian motion sampled at its own offset
    // times; step j of a branch draws only from substream (seed, side, j)
    const auto run_side = [&](std::uint64_t tag, bool plus) {
        double w0 = 0.0, w1 = 0.0, w2 = 0.0, t_prev = 0.0;
        const int first = plus ? 0 : 1;
        for (int j = first; j <= K; ++j) {
            const double t = plus ? j + U : j - U;
            Rng rng(mix_seed(seed, tag, static_cast<std::uint64_t>(j)));
            const double sd = std::sqrt(t - t_prev);
            w0 += sd * rng.normal();
            w1 += sd * rng.normal();
            w2 += sd * rng.normal();
            const std::size_t idx = static_cast<std::size_t>(plus ? K + j : K - j);
            d.u[idx] = sigma * std::sqrt(w0 * w0 + w1 * w1 + w2 * w2);
            t_prev = t;
        }
    };
    run_side(kTagPlus, true);
    run_side(kTagMinus, false);

    d.v = *std::min_element(d.u.begin(), d.u.end());
    return d;
}

LimitDraw sample_prelimit(const ModelSpec& m, int n, int refine, int k, std::uint64_t seed) {
    if (k < 1) throw BadArgument("sample_prelimit: k >= 1");
    const PathSample p = simulate_path(m, n, refine, seed);
    const int I = p.coarse_argmax();
    const double sup = p.sup_proxy();
    const double r = std::pow(static_cast<double>(n), 1.0 / m.alpha_effective());

    LimitDraw d;
    d.j_lo = std::max(-k, -I);
    d.j_hi = std::min(k, p.n - I);
    d.u.reserve(static_cast<std::size_t>(d.j_hi - d.j_lo) + 1);
    for (int j = d.j_lo; j <= d.j_hi; ++j) d.u.push_back(r * (sup - p.coarse(I + j)));
    d.v = d.u_at(0); // the window is centred on the grid max
    return d;
}

// ---------------- conditional overshoot law ----------------

namespace {

// log prod_{j=lo}^{hi-1} F(x + u_j - v, u_j - u_{j+1}); -inf when H = 0
double log_h_product(const CondSupLaw& law, const LimitDraw& d, double x, int lo, int hi) {
    constexpr double kSkip = 1e-15; // factor within kSkip of 1: skip
    double log_h = 0.0;
    for (int j = lo; j < hi; ++j) {
        const double xx = x + d.u_at(j) - d.v;
        const double yy = d.u_at(j) - d.u_at(j + 1);
        if (law.tail_bound(xx, yy) < kSkip) continue;
        const double s = law.survival(xx, yy);
        if (s >= 1.0) return -std::numeric_limits<double>::infinity();
        log_h += std::log1p(-s);
        if (log_h < -690.0) return -std::numeric_limits<double>::infinity();
    }
    return log_h;
}

} // namespace

double limit_H(const CondSupLaw& law, const LimitDraw& d, double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(log_h_product(law, d, x, d.j_lo, d.j_hi));
}

double limit_H(const CondSupLaw& law, const LimitDraw& d, double x, int window_k) {
    if (x <= 0.0) return 0.0;
    const int j0 = d.argmin();
    const int lo = std::max(d.j_lo, j0 - window_k);
    const int hi = std::min(d.j_hi, j0 + window_k);
    return std::exp(log_h_product(law, d, x, lo, hi));
}

// ---------------- statistic recovery ----------------

RecoveryConfig default_recovery(const ModelSpec& m) {
    RecoveryConfig cfg;
    if (!m.is_bm()) {
        cfg.grid_step = 0.1;
        cfg.grid_max = 3.0;
        cfg.grid_median = true;
    }
    return cfg;
}

HRecovery recover_h(const CondSupLaw& law, const LimitDraw& d, const RecoveryConfig& cfg) {
    constexpr double kHardCap = 60.0;
    const double x_end = cfg.grid_max > 0.0 ? cfg.grid_max : kHardCap;

    std::vector<double> xs{0.0}, hs{0.0};
    HRecovery out;
    for (int i = 1;; ++i) {
        const double x = i * cfg.grid_step;
        if (x > x_end * (1.0 + 1e-12)) break;
        const double h = limit_H(law, d, x);
        out.mean_integral += 0.5 * ((1.0 - hs.back()) + (1.0 - h)) * (x - xs.back());
        xs.push_back(x);
        hs.push_back(h);
        if (cfg.grid_max <= 0.0 && 1.0 - h < 1e-12) break;
    }
    out.scan_end = xs.back();
    out.h_end = hs.back();

    // median: bracket from the scan, extending past its end if the crossing
    // lies beyond (possible on a fixed grid); the extension does not feed back
    // into the mean integral
    std::size_t i = 0;
    while (i < hs.size() && hs[i] < 0.5) ++i;
    double x_lo, h_lo, x_hi, h_hi;
    if (i < hs.size()) {
        x_lo = xs[i - 1];
        h_lo = hs[i - 1];
        x_hi = xs[i];
        h_hi = hs[i];
    } else {
        x_lo = xs.back();
        h_lo = hs.back();
        x_hi = x_lo;
        h_hi = h_lo;
        while (h_hi < 0.5) {
            x_lo = x_hi;
            h_lo = h_hi;
            x_hi += cfg.grid_step;
            h_hi = limit_H(law, d, x_hi);
            if (x_hi > 2.0 * kHardCap) { // degenerate draw; report the cap
                out.median_x = x_hi;
                return out;
            }
        }
    }

    if (cfg.grid_median) {
        out.median_x = x_lo + (0.5 - h_lo) / (h_hi - h_lo) * (x_hi - x_lo);
    } else {
        while (x_hi - x_lo > 1e-11) {
            const double mid = 0.5 * (x_lo + x_hi);
            if (limit_H(law, d, mid) < 0.5)
                x_lo = mid;
            else
                x_hi = mid;
        }
        out.median_x = 0.5 * (x_lo + x_hi);
    }
    return out;
}

LimitVariates recover_variates(const CondSupLaw& law, const LimitDraw& d,
                               const RecoveryConfig& cfg) {
    LimitVariates out;
    out.v = d.v;
    out.v_shift = d.v - mean_discretization_gap(law.model());

    const HRecovery full = recover_h(law, d, cfg);
    out.v_mean = d.v - full.mean_integral;
    out.v_med = d.v - full.median_x;

    if (cfg.window_k > 0 && cfg.window_k < std::max(d.j_hi - d.argmin(), d.argmin() - d.j_lo)) {
        const HRecovery win = recover_h(law, d.window(cfg.window_k), cfg);
        out.v_mean_k = d.v - win.mean_integral;
    } else {
        out.v_mean_k = out.v_mean;
    }
    return out;
}

} // namespace levyopt
