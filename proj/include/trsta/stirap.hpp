#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace trsta {

using HermitianOperator3 = Eigen::Matrix3cd;
using StateVector3 = Eigen::Vector3cd;

// Thrown where the mixing angle phi (and with it the bright eigenstates)
// is undefined because both pulses vanish.
struct degenerate_point_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Three-level Lambda system driven by Gaussian pump and Stokes pulses.
// Units: hbar = 1, time in us, frequencies in rad/us.
struct StirapParams {
    double omega0;   // Rabi amplitude (rad/us)
    double t_f;      // protocol duration (us)
    double t0;       // half pulse separation (us)
    double sigma;    // pulse width (us)
    double delta_p;  // one-photon detuning Delta (rad/us)
    double delta_2;  // two-photon detuning delta (rad/us)

    StirapParams(double omega0_, double t_f_, double t0_, double sigma_,
                 double delta_p_ = 0.0, double delta_2_ = 0.0)
        : omega0(omega0_), t_f(t_f_), t0(t0_), sigma(sigma_),
          delta_p(delta_p_), delta_2(delta_2_) {
        if (!(omega0 > 0.0)) throw std::invalid_argument("stirap: omega0 must be > 0");
        if (!(t_f > 0.0)) throw std::invalid_argument("stirap: t_f must be > 0");
        if (!(sigma > 0.0)) throw std::invalid_argument("stirap: sigma must be > 0");
        if (!(t0 > 0.0 && t0 < 0.5 * t_f))
            throw std::invalid_argument("stirap: t0 must satisfy 0 < t0 < t_f/2");
    }

    // Omega0 = 2 pi x 3 rad/us, t_f = 10 us, t0 = t_f/10, sigma = t_f/6,
    // resonant (both detunings zero).
    static StirapParams reference_defaults() {
        return StirapParams(2.0 * std::numbers::pi * 3.0, 10.0, 1.0, 10.0 / 6.0);
    }

    // Same shape scaled to an arbitrary duration.
    static StirapParams scaled_defaults(double duration) {
        return StirapParams(2.0 * std::numbers::pi * 3.0, duration, duration / 10.0,
                            duration / 6.0);
    }

    StirapParams with_amplitude_scale(double factor) const {
        return StirapParams(omega0 * factor, t_f, t0, sigma, delta_p, delta_2);
    }
};

inline double pump_pulse(const StirapParams& p, double t) {
    const double x = (t - 0.5 * p.t_f - p.t0) / p.sigma;
    return p.omega0 * std::exp(-x * x);
}

inline double stokes_pulse(const StirapParams& p, double t) {
    const double x = (t - 0.5 * p.t_f + p.t0) / p.sigma;
    return p.omega0 * std::exp(-x * x);
}

inline double pump_pulse_dot(const StirapParams& p, double t) {
    const double x = (t - 0.5 * p.t_f - p.t0) / p.sigma;
    return -2.0 * x / p.sigma * pump_pulse(p, t);
}

inline double stokes_pulse_dot(const StirapParams& p, double t) {
    const double x = (t - 0.5 * p.t_f + p.t0) / p.sigma;
    return -2.0 * x / p.sigma * stokes_pulse(p, t);
}

// rms Rabi frequency Omega = sqrt(Op^2 + Os^2)
inline double rms_rabi(const StirapParams& p, double t) {
    return std::hypot(pump_pulse(p, t), stokes_pulse(p, t));
}

inline HermitianOperator3 hamiltonian(const StirapParams& p, double t) {
    const double op = pump_pulse(p, t);
    const double os = stokes_pulse(p, t);
    HermitianOperator3 h = HermitianOperator3::Zero();
    h(0, 1) = h(1, 0) = 0.5 * op;
    h(1, 2) = h(2, 1) = 0.5 * os;
    h(1, 1) = p.delta_p;
    h(2, 2) = p.delta_2;
    return h;
}

struct MixingAngles {
    double theta;  // tan(theta) = Omega_p / Omega_s, in [0, pi/2]
    double phi;    // tan(2 phi) = Omega / Delta, in (0, pi/2]
};

inline MixingAngles mixing_angles(const StirapParams& p, double t) {
    const double op = pump_pulse(p, t);
    const double os = stokes_pulse(p, t);
    const double omega = std::hypot(op, os);
    if (omega == 0.0)
        throw degenerate_point_error("stirap: both pulses vanish, mixing angles undefined");
    return MixingAngles{std::atan2(op, os), 0.5 * std::atan2(omega, p.delta_p)};
}

// d theta/dt = (dOp Os - Op dOs) / Omega^2, Gaussian derivatives in closed form
inline double theta_dot(const StirapParams& p, double t) {
    const double op = pump_pulse(p, t);
    const double os = stokes_pulse(p, t);
    const double omega2 = op * op + os * os;
    if (omega2 == 0.0)
        throw degenerate_point_error("stirap: both pulses vanish, theta_dot undefined");
    return (pump_pulse_dot(p, t) * os - op * stokes_pulse_dot(p, t)) / omega2;
}

// Closed-form eigensystem of the resonant-structure Hamiltonian (delta = 0):
// E0 = 0, E+ = Omega cot(phi)/2, E- = -Omega tan(phi)/2.
struct Eigensystem3 {
    double e0, e_plus, e_minus;
    StateVector3 dark, plus, minus;
};

inline Eigensystem3 eigensystem(const StirapParams& p, double t) {
    const MixingAngles ang = mixing_angles(p, t);
    const double omega = rms_rabi(p, t);
    const double st = std::sin(ang.theta), ct = std::cos(ang.theta);
    const double sp = std::sin(ang.phi), cp = std::cos(ang.phi);
    Eigensystem3 es;
    es.e0 = 0.0;
    es.e_plus = 0.5 * omega * cp / sp;
    es.e_minus = -0.5 * omega * sp / cp;
    es.dark << ct, 0.0, -st;
    es.plus << st * sp, cp, ct * sp;
    es.minus << st * cp, -sp, ct * cp;
    return es;
}

inline StateVector3 dark_state(const StirapParams& p, double t) {
    const MixingAngles ang = mixing_angles(p, t);
    StateVector3 v;
    v << std::cos(ang.theta), 0.0, -std::sin(ang.theta);
    return v;
}

// Populations along the dark-state route: (cos^2 theta, 0, sin^2 theta).
inline std::array<double, 3> dark_state_populations(const StirapParams& p, double t) {
    const double th = mixing_angles(p, t).theta;
    const double c = std::cos(th), s = std::sin(th);
    return {c * c, 0.0, s * s};
}

// Local condition Omega >> theta_dot and global condition Theta >> pi/2.
struct AdiabaticityReport {
    double min_local_ratio;  // min over grid of Omega/|theta_dot|, +inf if theta_dot = 0
    double pulse_area;       // Theta = integral of Omega over [0, t_f]
};

inline AdiabaticityReport adiabaticity_report(const StirapParams& p,
                                              std::span<const double> grid) {
    AdiabaticityReport rep{std::numeric_limits<double>::infinity(), 0.0};
    for (double t : grid) {
        if (t < 0.0 || t > p.t_f)
            throw std::domain_error("stirap: adiabaticity grid outside [0, t_f]");
        const double td = std::abs(theta_dot(p, t));
        const double ratio = td == 0.0 ? std::numeric_limits<double>::infinity()
                                       : rms_rabi(p, t) / td;
        rep.min_local_ratio = std::min(rep.min_local_ratio, ratio);
    }
    // composite Simpson on a uniform 2001-point grid
    const int n = 2000;
    const double h = p.t_f / n;
    double area = rms_rabi(p, 0.0) + rms_rabi(p, p.t_f);
    for (int k = 1; k < n; ++k)
        area += (k % 2 ? 4.0 : 2.0) * rms_rabi(p, p.t_f * k / n);
    rep.pulse_area = area * h / 3.0;
    return rep;
}

}  // namespace trsta
