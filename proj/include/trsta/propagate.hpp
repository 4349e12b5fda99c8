#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trsta/rescale.hpp"
#include "trsta/stirap.hpp"
#include "trsta/transform.hpp"

namespace trsta {

enum class EvolutionMethod { numeric, adiabatic, reparametrized };

inline const char* to_string(EvolutionMethod m) {
    switch (m) {
        case EvolutionMethod::numeric: return "numeric";
        case EvolutionMethod::adiabatic: return "adiabatic";
        case EvolutionMethod::reparametrized: return "reparametrized";
    }
    return "unknown";
}

struct Trajectory {
    std::vector<double> times;                      // strictly increasing (us)
    std::vector<StateVector3> states;               // one per time
    std::vector<std::array<double, 3>> populations; // |psi_k|^2 per time
    EvolutionMethod method;

    double final_time() const { return times.back(); }
    const StateVector3& final_state() const { return states.back(); }
};

inline std::vector<double> uniform_grid(double t_begin, double t_end, int n_points) {
    if (n_points < 2)
        throw std::invalid_argument("propagate: grid needs at least 2 points");
    std::vector<double> g(n_points);
    for (int k = 0; k < n_points; ++k)
        g[k] = t_begin + (t_end - t_begin) * k / (n_points - 1);
    return g;
}

inline std::array<double, 3> populations_of(const StateVector3& psi) {
    return {std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2))};
}

inline double fidelity(const StateVector3& psi, const StateVector3& target) {
    return std::norm(target.dot(psi));
}

namespace detail {

// exp(-i H dt) for Hermitian H via eigendecomposition; exactly unitary up
// to roundoff, no renormalization needed.
inline Eigen::Matrix3cd step_unitary(const HermitianOperator3& h, double dt) {
    Eigen::SelfAdjointEigenSolver<HermitianOperator3> es(h);
    const Eigen::Vector3d ev = es.eigenvalues();
    Eigen::Vector3cd phases;
    for (int k = 0; k < 3; ++k)
        phases(k) = std::exp(std::complex<double>(0.0, -ev(k) * dt));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline void check_normalized(const StateVector3& psi) {
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("propagate: state not normalized");
}

}  // namespace detail

// Time-ordered propagation as a product of per-step midpoint exponentials
// exp(-i H(t + dt/2) dt). Second-order accurate, unconditionally unitary.
inline Trajectory evolve(const TimeDependentHamiltonian& h, const StateVector3& psi0,
                         std::span<const double> grid, int steps_per_interval = 1) {
    if (grid.size() < 2)
        throw std::invalid_argument("propagate: grid needs at least 2 points");
    if (steps_per_interval < 1)
        throw std::invalid_argument("propagate: steps_per_interval must be >= 1");
    detail::check_normalized(psi0);

    Trajectory traj;
    traj.method = EvolutionMethod::numeric;
    traj.times.assign(grid.begin(), grid.end());
    traj.states.reserve(grid.size());
    traj.populations.reserve(grid.size());

    StateVector3 psi = psi0;
    traj.states.push_back(psi);
    traj.populations.push_back(populations_of(psi));
    for (size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("propagate: grid not strictly increasing");
        const double dt = (grid[i] - grid[i - 1]) / steps_per_interval;
        for (int s = 0; s < steps_per_interval; ++s) {
            const double mid = grid[i - 1] + (s + 0.5) * dt;
            psi = detail::step_unitary(h(mid), dt) * psi;
        }
        traj.states.push_back(psi);
        traj.populations.push_back(populations_of(psi));
    }
    return traj;
}

// Max final-amplitude change when the step count is doubled; the caller
// decides whether the run counts as converged.
inline double step_doubling_error(const TimeDependentHamiltonian& h, const StateVector3& psi0,
                                  std::span<const double> grid, int steps_per_interval) {
    const Trajectory coarse = evolve(h, psi0, grid, steps_per_interval);
    const Trajectory fine = evolve(h, psi0, grid, 2 * steps_per_interval);
    double worst = 0.0;
    for (size_t i = 0; i < coarse.states.size(); ++i)
        worst = std::max(worst, (coarse.states[i] - fine.states[i]).cwiseAbs().maxCoeff());
    return worst;
}

// Dark-state route psi(t) = cos(theta)|1> - sin(theta)|3>; the dynamical
// phase vanishes because E0 = 0.
inline Trajectory adiabatic_trajectory(const StirapParams& p, std::span<const double> grid) {
    Trajectory traj;
    traj.method = EvolutionMethod::adiabatic;
    traj.times.assign(grid.begin(), grid.end());
    for (double t : grid) {
        const StateVector3 psi = dark_state(p, t);
        traj.states.push_back(psi);
        traj.populations.push_back(populations_of(psi));
    }
    return traj;
}

// Closed-form TR dynamics of the dark-state route: theta evaluated at f(t).
inline Trajectory tr_adiabatic_trajectory(const StirapParams& p, const RescaleParams& r,
                                          std::span<const double> grid) {
    Trajectory traj;
    traj.method = EvolutionMethod::reparametrized;
    traj.times.assign(grid.begin(), grid.end());
    for (double t : grid) {
        const StateVector3 psi = dark_state(p, f(r, t));
        traj.states.push_back(psi);
        traj.populations.push_back(populations_of(psi));
    }
    return traj;
}

namespace detail {

// Four-point Lagrange (piecewise cubic) interpolation of a sampled state,
// real and imaginary parts independently, followed by renormalization.
inline StateVector3 interpolate_state(const Trajectory& traj, double t) {
    const auto& ts = traj.times;
    if (t < ts.front() - 1e-9 * (ts.back() - ts.front()) ||
        t > ts.back() + 1e-9 * (ts.back() - ts.front()))
        throw std::domain_error("propagate: interpolation outside trajectory span");
    t = std::clamp(t, ts.front(), ts.back());

    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    long i = std::clamp<long>(it - ts.begin() - 1, 0, static_cast<long>(ts.size()) - 2);
    long lo = std::clamp<long>(i - 1, 0, static_cast<long>(ts.size()) - 4);

    StateVector3 psi = StateVector3::Zero();
    for (long j = lo; j < lo + 4; ++j) {
        double w = 1.0;
        for (long k = lo; k < lo + 4; ++k)
            if (k != j) w *= (t - ts[k]) / (ts[j] - ts[k]);
        psi += w * traj.states[j];
    }
    return psi.normalized();
}

}  // namespace detail

// Reparametrized trajectory psi~(t) = psi(f(t)) on an explicit output grid
// over [0, t_f/a], interpolating the sampled reference at f(t).
inline Trajectory reparametrized_trajectory(const Trajectory& ref, const RescaleParams& r,
                                            std::span<const double> grid) {
    if (ref.times.size() < 4)
        throw std::invalid_argument("propagate: reference trajectory too short");
    if (ref.times.back() < r.t_f * (1.0 - 1e-9))
        throw std::invalid_argument("propagate: reference trajectory does not span [0, t_f]");
    Trajectory traj;
    traj.method = EvolutionMethod::reparametrized;
    traj.times.assign(grid.begin(), grid.end());
    for (double t : grid) {
        const StateVector3 psi = detail::interpolate_state(ref, f(r, t));
        traj.states.push_back(psi);
        traj.populations.push_back(populations_of(psi));
    }
    return traj;
}

inline Trajectory reparametrized_trajectory(const Trajectory& ref, const RescaleParams& r) {
    return reparametrized_trajectory(
        ref, r, uniform_grid(0.0, r.duration(), static_cast<int>(ref.times.size())));
}

// Step budget keeping the fastest bracket-factor oscillation resolved for TR
// runs: base steps scaled by ceil(max df/dt) / a.
inline int tr_step_count(const RescaleParams& r, int base_steps = 4000) {
    const double rate_max = 2.0 * r.a - 1.0;
    const double scaled = base_steps * std::max(1.0, std::ceil(rate_max)) / r.a;
    return std::max(base_steps / 16, static_cast<int>(std::ceil(scaled)));
}

}  // namespace trsta
