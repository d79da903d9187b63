#include "core/quadrature.hpp"
#include "core/special.hpp"

#include <algorithm>
#include <limits>

namespace levyopt {

namespace {

struct Gl20 {
    std::array<double, 20> x{}, w{};
    Gl20() {
        // Roots of P_20 by Newton from Chebyshev initial guesses.
        const int n = 20;
        for (int i = 0; i < n / 2; ++i) {
            double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double p0, p1, dp;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0;
                p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
                const double dx = p1 / dp;
                xi -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            p0 = 1.0;
            p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
            x[i] = -xi;
            x[n - 1 - i] = xi;
            w[i] = wi;
            w[n - 1 - i] = wi;
        }
    }
};

const Gl20& gl20() {
    static const Gl20 g;
    return g;
}

// Node position on (0,1) and its complement for tanh-sinh abscissa
// u -> 1/(1+exp(-pi*sinh(u))), evaluated without cancellation.
struct TsNode {
    double t, one_minus_t, log_t, log_1mt, log_w;
};

TsNode ts_node(double u) {
    TsNode n{};
    const double s = kPi * std::sinh(u);
    auto log_sigmoid = [](double z) { // log(1/(1+e^{-z}))
        return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
    };
    n.log_t = log_sigmoid(s);
    n.log_1mt = log_sigmoid(-s);
    n.t = std::exp(n.log_t);
    n.one_minus_t = std::exp(n.log_1mt);
    // weight = pi * cosh(u) * t * (1-t)
    n.log_w = std::log(kPi) + std::log(std::cosh(u)) + n.log_t + n.log_1mt;
    return n;
}

constexpr double kTsUmax = 6.4;

} // namespace

const std::array<double, 20>& gl20_nodes() { return gl20().x; }
const std::array<double, 20>& gl20_weights() { return gl20().w; }

double log_sum_exp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v)
        if (std::isfinite(x)) s += std::exp(x - m);
    return m + std::log(s);
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_level) {
    const double scale = b - a;
    double h = 0.5;
    // level 0: nodes at multiples of h
    double acc = 0.0;
    {
        const int kmax = static_cast<int>(kTsUmax / h);
        for (int k = -kmax; k <= kmax; ++k) {
            const TsNode n = ts_node(k * h);
            const double w = std::exp(n.log_w);
            if (w == 0.0) continue;
            acc += w * f(a + scale * n.t);
        }
    }
    double prev = acc * h * scale;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        const int kmax = static_cast<int>(kTsUmax / h);
        for (int k = -kmax; k <= kmax; ++k) { // odd multiples only
            if (k % 2 == 0) continue;
            const TsNode n = ts_node(k * h);
            const double w = std::exp(n.log_w);
            if (w == 0.0) continue;
            acc += w * f(a + scale * n.t);
        }
        const double cur = acc * h * scale;
        if (std::abs(cur - prev) <= abs_tol && level >= 3) return cur;
        prev = cur;
    }
    return prev;
}

double tanh_sinh_log01(const std::function<double(double, double)>& log_f,
                       double rel_tol, int max_level) {
    std::vector<double> terms;
    terms.reserve(1024);
    double h = 0.5;
    auto add_node = [&](double u) {
        const TsNode n = ts_node(u);
        const double lf = log_f(n.log_t, n.log_1mt);
        if (std::isfinite(lf)) terms.push_back(lf + n.log_w);
    };
    {
        const int kmax = static_cast<int>(kTsUmax / h);
        for (int k = -kmax; k <= kmax; ++k) add_node(k * h);
    }
    double prev = log_sum_exp(terms) + std::log(h);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        const int kmax = static_cast<int>(kTsUmax / h);
        for (int k = -kmax; k <= kmax; ++k) {
            if (k % 2 == 0) continue;
            add_node(k * h);
        }
        const double cur = log_sum_exp(terms) + std::log(h);
        if (std::isfinite(cur) && std::isfinite(prev)) {
            // relative agreement in linear space
            if (std::abs(std::expm1(cur - prev)) <= rel_tol && level >= 3) return cur;
        }
        prev = cur;
    }
    return prev;
}

} // namespace levyopt
