#pragma once

// Test-only numeric oracles, independent of the library implementation paths
// they are used to check.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "betaweight/special.hpp"

namespace bw::oracle {

// ---- adaptive Simpson quadrature ---------------------------------------

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double lo, double hi,
                    double flo, double fmid, double fhi, double whole,
                    double tol_abs, double tol_rel, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(flo, flm, fmid, mid - lo);
    const double right = simpson(fmid, frm, fhi, hi - mid);
    const double delta = left + right - whole;
    if (depth <= 0 ||
        std::fabs(delta) <= 15.0 * std::max(tol_abs, tol_rel * std::fabs(left + right))) {
        return left + right + delta / 15.0;
    }
    return adapt(f, lo, mid, flo, flm, fmid, left, tol_abs * 0.5, tol_rel, depth - 1) +
           adapt(f, mid, hi, fmid, frm, fhi, right, tol_abs * 0.5, tol_rel, depth - 1);
}

}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double lo,
                               double hi, double tol_abs = 1e-14,
                               double tol_rel = 1e-13) {
    if (hi <= lo) return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fmid = f(mid);
    const double fhi = f(hi);
    const double whole = detail::simpson(flo, fmid, fhi, hi - lo);
    return detail::adapt(f, lo, hi, flo, fmid, fhi, whole, tol_abs, tol_rel, 48);
}

// ---- beta integrals with endpoint-singularity handling ------------------

// unnormalized integrand t^(a-1) (1-t)^(b-1)
inline double beta_integrand(double t, double a, double b) {
    return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t));
}

// upper bound on the integrand over [lo,hi]: the interior mode (when it
// exists) or an endpoint. Used to scale quadrature tolerances so sharply
// peaked, tiny-magnitude integrals are still resolved to relative accuracy.
inline double beta_integrand_max(double a, double b, double lo, double hi) {
    double best = std::max(beta_integrand(lo, a, b), beta_integrand(hi, a, b));
    if (a + b != 2.0) {
        const double mode = (a - 1.0) / (a + b - 2.0);
        if (mode > lo && mode < hi) {
            best = std::max(best, beta_integrand(mode, a, b));
        }
    }
    return best;
}

// analytic series for \int_0^delta t^(a-1)(1-t)^(b-1) dt, delta small
inline double beta_edge_series(double delta, double a, double b) {
    double coef = 1.0;
    double sum = 0.0;
    for (int j = 0; j < 200; ++j) {
        const double term = coef * std::pow(delta, a + j) / (a + j);
        sum += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
        coef *= (static_cast<double>(j) + 1.0 - b) / (static_cast<double>(j) + 1.0);
    }
    return sum;
}

// adaptive Simpson over [lo,hi] with tolerance anchored to the peak height
inline double beta_interior_integral(double a, double b, double lo, double hi) {
    if (hi <= lo) return 0.0;
    auto f = [a, b](double t) { return beta_integrand(t, a, b); };
    const double scale = beta_integrand_max(a, b, lo, hi) * (hi - lo);
    return adaptive_simpson(f, lo, hi, 1e-15 * scale, 1e-14);
}

// \int_0^x t^(a-1)(1-t)^(b-1) dt by series near the endpoints plus adaptive
// Simpson in the interior
inline double beta_lower_integral(double x, double a, double b) {
    constexpr double kDelta = 1.0 / 64.0;
    if (x <= 0.0) return 0.0;
    if (x <= kDelta) return beta_edge_series(x, a, b);
    if (x >= 1.0 - kDelta) {
        const double total = beta_edge_series(kDelta, a, b) +
                             beta_interior_integral(a, b, kDelta, 1.0 - kDelta) +
                             beta_edge_series(kDelta, b, a);
        if (x >= 1.0) return total;
        return total - beta_edge_series(1.0 - x, b, a);
    }
    return beta_edge_series(kDelta, a, b) + beta_interior_integral(a, b, kDelta, x);
}

// regularized incomplete beta by quadrature only
inline double beta_cdf_quadrature(double x, double a, double b) {
    const double num = beta_lower_integral(x, a, b);
    const double den = beta_lower_integral(1.0, a, b);
    return num / den;
}

// ---- finite differences and quantile inversion --------------------------

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// numeric quantile: invert beta_cdf by bisection at fixed u
inline double beta_quantile(double u, const BetaParams& p) {
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (beta_cdf(mid, p) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace bw::oracle
