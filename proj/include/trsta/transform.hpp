#pragma once

#include <functional>
#include <span>
#include <utility>

#include "trsta/rescale.hpp"
#include "trsta/stirap.hpp"

namespace trsta {

// A time-dependent Hamiltonian with an explicit domain [0, duration].
struct TimeDependentHamiltonian {
    std::function<HermitianOperator3(double)> op;
    double duration;  // us

    HermitianOperator3 operator()(double t) const {
        const double slack = 1e-9 * duration;
        if (t < -slack || t > duration + slack)
            throw std::domain_error("hamiltonian: t outside domain [0, duration]");
        return op(t);
    }
};

inline TimeDependentHamiltonian stirap_protocol(const StirapParams& p) {
    return {[p](double t) { return hamiltonian(p, t); }, p.t_f};
}

// Time-rescaled Hamiltonian H[f(t)] * df/dt on [0, t_f/a]. A positive scalar
// multiple of a Hermitian matrix, so Hermiticity is preserved.
inline TimeDependentHamiltonian tr_hamiltonian(const TimeDependentHamiltonian& ref,
                                               const RescaleParams& r) {
    if (ref.duration < r.t_f * (1.0 - 1e-12))
        throw std::invalid_argument("transform: reference domain shorter than t_f");
    auto inner = ref.op;
    return {[inner = std::move(inner), r](double t) {
                return (inner(f(r, t)) * f_dot(r, t)).eval();
            },
            r.duration()};
}

struct TrPulses {
    double omega_p;  // rad/us
    double omega_s;  // rad/us
    double delta;    // rad/us
};

// Explicit rescaled STIRAP control parameters: the reference Gaussians
// evaluated at f(t), all multiplied by the bracket factor
// a - (a-1) cos(2 pi a t / t_f). Kept as a cross-check against the
// generic transform.
inline TrPulses tr_pulses_closed_form(const StirapParams& p, const RescaleParams& r,
                                      double t) {
    const double ft = f(r, t);
    const double rate = f_dot(r, t);
    return {pump_pulse(p, ft) * rate, stokes_pulse(p, ft) * rate, p.delta_p * rate};
}

// Max-entry norm of [H(gamma t_f), TR-H(f_inv(gamma t_f))] over the supplied
// route fractions. Exactly zero up to floating point, since the two operators
// are scalar multiples of each other.
inline double commutator_check(const TimeDependentHamiltonian& ref, const RescaleParams& r,
                               std::span<const double> gammas) {
    const TimeDependentHamiltonian trh = tr_hamiltonian(ref, r);
    double worst = 0.0;
    for (double g : gammas) {
        if (g < 0.0 || g > 1.0)
            throw std::invalid_argument("transform: route fraction outside [0, 1]");
        const HermitianOperator3 a = ref(g * r.t_f);
        const HermitianOperator3 b = trh(f_inv(r, g * r.t_f));
        worst = std::max(worst, (a * b - b * a).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace trsta
