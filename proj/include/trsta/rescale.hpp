#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trsta {

// Sinusoidal time-rescaling family
//   f(t) = a t - (a-1)/(2 pi a) * t_f * sin(2 pi a t / t_f)
// defined on [0, t_f/a]. For a >= 1 the derivative is bounded below by 1,
// so f is strictly increasing and maps [0, t_f/a] onto [0, t_f].
struct RescaleParams {
    double a;    // time contraction factor
    double t_f;  // reference protocol duration (us)

    RescaleParams(double a_, double t_f_) : a(a_), t_f(t_f_) {
        if (!(a >= 1.0))
            throw std::invalid_argument("rescale: a must be >= 1");
        if (!(t_f > 0.0))
            throw std::invalid_argument("rescale: t_f must be > 0");
    }

    // duration of the rescaled process
    double duration() const { return t_f / a; }
};

namespace detail {
inline void check_tr_window(const RescaleParams& r, double t) {
    const double slack = 1e-9 * r.t_f;
    if (t < -slack || t > r.duration() + slack)
        throw std::domain_error("rescale: t outside TR window [0, t_f/a]");
}
}  // namespace detail

inline double f(const RescaleParams& r, double t) {
    detail::check_tr_window(r, t);
    const double w = 2.0 * std::numbers::pi * r.a / r.t_f;
    return r.a * t - (r.a - 1.0) / (2.0 * std::numbers::pi * r.a) * r.t_f * std::sin(w * t);
}

// df/dt = a - (a-1) cos(2 pi a t / t_f), in [1, 2a-1]
inline double f_dot(const RescaleParams& r, double t) {
    detail::check_tr_window(r, t);
    const double w = 2.0 * std::numbers::pi * r.a / r.t_f;
    return r.a - (r.a - 1.0) * std::cos(w * t);
}

// Inverse of f by bisection polished with Newton steps. f is monotone with
// analytic derivative, so this always converges well within the budget.
inline double f_inv(const RescaleParams& r, double y, double tol = 1e-12) {
    if (!(tol > 0.0))
        throw std::invalid_argument("rescale: tol must be > 0");
    if (y < -1e-9 * r.t_f || y > r.t_f * (1.0 + 1e-9))
        throw std::domain_error("rescale: y outside [0, t_f]");
    y = std::clamp(y, 0.0, r.t_f);

    double lo = 0.0, hi = r.duration();
    double t = y / r.a;  // decent starting guess
    const int budget = 200;
    for (int i = 0; i < budget; ++i) {
        const double ft = f(r, t) - y;
        if (std::abs(ft) <= tol * std::max(1.0, f_dot(r, t)))
            return t;
        (ft > 0.0 ? hi : lo) = t;
        const double newton = t - ft / f_dot(r, t);
        t = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
    }
    throw std::runtime_error("rescale: f_inv iteration budget exhausted");
}

// Checks of the four admissibility properties of the rescaling function plus
// monotonicity of f on a sample grid.
struct RescaleValidation {
    bool initial_time_ok;    // (i)   f_inv(0) = 0
    bool speedup_ok;         // (ii)  f_inv(t_f) < t_f
    bool initial_rate_ok;    // (iii) df/dt(0) = 1
    bool final_rate_ok;      // (iv)  df/dt(f_inv(t_f)) = 1
    bool monotone_ok;
    double initial_time_residual;
    double speedup_margin;   // t_f - f_inv(t_f), must be > 0
    double initial_rate_residual;
    double final_rate_residual;
    double min_grid_increment;

    bool all_ok() const {
        return initial_time_ok && speedup_ok && initial_rate_ok && final_rate_ok && monotone_ok;
    }
};

inline RescaleValidation validate_properties(const RescaleParams& r, int n_samples,
                                             double tol = 1e-9) {
    if (n_samples < 2)
        throw std::invalid_argument("rescale: n_samples must be >= 2");
    RescaleValidation v{};
    v.initial_time_residual = std::abs(f_inv(r, 0.0));
    v.initial_time_ok = v.initial_time_residual <= tol;

    const double t_end = f_inv(r, r.t_f);
    v.speedup_margin = r.t_f - t_end;
    v.speedup_ok = v.speedup_margin > tol;

    v.initial_rate_residual = std::abs(f_dot(r, 0.0) - 1.0);
    v.initial_rate_ok = v.initial_rate_residual <= tol;
    v.final_rate_residual = std::abs(f_dot(r, t_end) - 1.0);
    v.final_rate_ok = v.final_rate_residual <= tol;

    v.min_grid_increment = std::numeric_limits<double>::infinity();
    double prev = f(r, 0.0);
    for (int k = 1; k < n_samples; ++k) {
        const double t = r.duration() * k / (n_samples - 1);
        const double cur = f(r, t);
        v.min_grid_increment = std::min(v.min_grid_increment, cur - prev);
        prev = cur;
    }
    v.monotone_ok = v.min_grid_increment > 0.0;
    return v;
}

}  // namespace trsta
