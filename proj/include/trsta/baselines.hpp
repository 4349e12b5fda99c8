#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "trsta/stirap.hpp"
#include "trsta/transform.hpp"

namespace trsta {

enum class BaselineKind { counterdiabatic, pi_pulse };

// Comparison protocols sharing the 1 us operation window of the robustness
// scans: a transitionless (counterdiabatic) drive on top of resonant STIRAP,
// and a flat resonant pi pulse coupling |1> and |3> directly.
struct BaselineSpec {
    BaselineKind kind;
    double duration;                           // us
    StirapParams stirap;                       // CD underlying pulses
    double rabi;                               // pi-pulse amplitude (rad/us)

    static BaselineSpec counterdiabatic(const StirapParams& p) {
        return BaselineSpec{BaselineKind::counterdiabatic, p.t_f, p, 0.0};
    }

    static BaselineSpec pi_pulse(double duration) {
        if (!(duration > 0.0))
            throw std::invalid_argument("baseline: duration must be > 0");
        return BaselineSpec{BaselineKind::pi_pulse, duration,
                            StirapParams::scaled_defaults(duration),
                            std::numbers::pi / duration};
    }
};

// STIRAP pulse set used for the CD comparison: reference amplitude at the
// given duration with t0 = t_f/8. The width is chosen so a 20% amplitude
// miscalibration of the corrected drive lands near fidelity 0.9.
inline StirapParams cd_reference_params(double duration) {
    return StirapParams(2.0 * std::numbers::pi * 3.0, duration, duration / 8.0,
                        duration / 7.0);
}

// Resonant STIRAP plus the transitionless correction
// theta_dot(t) * (i|1><3| - i|3><1|), which exactly cancels nonadiabatic
// transitions out of the dark state.
inline HermitianOperator3 cd_hamiltonian(const StirapParams& p, double t) {
    if (p.delta_p != 0.0 || p.delta_2 != 0.0)
        throw std::invalid_argument("baseline: CD drive is defined for the resonant case only");
    HermitianOperator3 h = hamiltonian(p, t);
    const double td = theta_dot(p, t);
    h(0, 2) = std::complex<double>(0.0, td);
    h(2, 0) = std::complex<double>(0.0, -td);
    return h;
}

inline HermitianOperator3 pi_pulse_hamiltonian(const BaselineSpec& spec, double /*t*/) {
    if (spec.kind != BaselineKind::pi_pulse)
        throw std::invalid_argument("baseline: spec is not a pi pulse");
    HermitianOperator3 h = HermitianOperator3::Zero();
    h(0, 2) = h(2, 0) = 0.5 * spec.rabi;
    return h;
}

inline TimeDependentHamiltonian cd_protocol(const StirapParams& p) {
    return {[p](double t) { return cd_hamiltonian(p, t); }, p.t_f};
}

inline TimeDependentHamiltonian pi_pulse_protocol(const BaselineSpec& spec) {
    return {[spec](double t) { return pi_pulse_hamiltonian(spec, t); }, spec.duration};
}

}  // namespace trsta
