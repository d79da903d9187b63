#pragma once
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace levyopt {

// 20-point Gauss-Legendre rule on [-1,1]; nodes/weights generated once by
// Newton iteration on P_20 so there are no hand-typed literals to get wrong.
const std::array<double, 20>& gl20_nodes();
const std::array<double, 20>& gl20_weights();

// Single 20-point panel on [a,b].
template <class F>
double gl_panel(F&& f, double a, double b) {
    const auto& xs = gl20_nodes();
    const auto& ws = gl20_weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 20; ++i) s += ws[i] * f(c + h * xs[i]);
    return s * h;
}

// Composite rule with a fixed number of equal panels.
template <class F>
double integrate_panels(F&& f, double a, double b, int n_panels) {
    double s = 0.0;
    const double w = (b - a) / n_panels;
    for (int p = 0; p < n_panels; ++p) s += gl_panel(f, a + p * w, a + (p + 1) * w);
    return s;
}

// tanh-sinh (double-exponential) quadrature on (a,b) for integrands with
// endpoint singularities.  Levels are doubled until successive estimates
// agree within abs_tol or max_level is reached.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_level = 8);

// tanh-sinh on (0,1) with the integrand supplied in log form as
// log_f(log(t), log(1-t)); the log arguments stay finite even where t or 1-t
// underflow, so integrable endpoint blow-ups can be handled exactly.  Returns
// the log of the integral (-inf if the integrand vanishes identically on the
// node set).  rel_tol controls the level-doubling stop.
double tanh_sinh_log01(const std::function<double(double, double)>& log_f,
                       double rel_tol, int max_level = 8);

// log(sum(exp(v))) over a vector, tolerant of -inf entries.
double log_sum_exp(const std::vector<double>& v);

} // namespace levyopt
