#include "core/special.hpp"

#include <limits>

namespace levyopt {

double erfcx_pos(double u) {
    if (u < 0.0) return std::exp(u * u) * std::erfc(u); // not the hot path
    if (u <= 24.0) {
        // erfc(24) ~ 2e-252: both factors representable at full precision.
        return std::exp(u * u) * std::erfc(u);
    }
    // Asymptotic series 1/(u sqrt(pi)) * sum (-1)^k (2k-1)!! / (2u^2)^k.
    // At u >= 24 the k=9 term is already below 1e-26 relative.
    const double inv2u2 = 1.0 / (2.0 * u * u);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 9; ++k) {
        term *= -(2.0 * k - 1.0) * inv2u2;
        sum += term;
    }
    return sum / (u * 1.7724538509055160273);
}

double mills_ratio(double w) {
    if (w < 8.0) return norm_sf(w) / norm_pdf(w);
    return 1.2533141373155002512 * erfcx_pos(w / kSqrt2); // sqrt(pi/2)*erfcx
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    // Seed accurate to ~1e-9 (Acklam-style central/tail rationals).
    double x;
    if (p > 0.02425 && p < 0.97575) {
        static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
        static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
        const double u = p - 0.5, r = u * u;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
        static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
        const bool lower = p < 0.5;
        const double r = std::sqrt(-2.0 * std::log(lower ? p : 1.0 - p));
        x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
            ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
        if (!lower) x = -x;
    }
    // One Halley step against the exact cdf.
    const double e = norm_cdf(x) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

} // namespace levyopt
