#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "trsta/baselines.hpp"
#include "trsta/propagate.hpp"
#include "trsta/rescale.hpp"
#include "trsta/stirap.hpp"
#include "trsta/transform.hpp"

namespace trsta {

enum class Protocol { reference, tr, cd, pi_pulse };
enum class ErrorKind { amplitude_beta, detuning_shift };

inline const char* to_string(Protocol p) {
    switch (p) {
        case Protocol::reference: return "reference";
        case Protocol::tr: return "tr";
        case Protocol::cd: return "cd";
        case Protocol::pi_pulse: return "pi_pulse";
    }
    return "unknown";
}

inline const char* to_string(ErrorKind k) {
    return k == ErrorKind::amplitude_beta ? "amplitude_beta" : "detuning_shift";
}

// One robustness scan: a protocol, an error axis, and the operation time T.
// TR protocols use a reference of duration a*T so the executed process lasts T.
struct ScanSpec {
    Protocol protocol = Protocol::tr;
    ErrorKind kind = ErrorKind::amplitude_beta;
    double lo = -0.3;
    double hi = 0.3;
    int n_points = 121;
    double op_time = 1.0;  // us
    double a = 10.0;       // TR contraction factor
    bool detuning_two_photon = false;  // also shift the two-photon detuning
    int base_steps = 4000;

    void validate() const {
        if (n_points < 2) throw std::invalid_argument("scan: n_points must be >= 2");
        if (!(op_time > 0.0)) throw std::invalid_argument("scan: op_time must be > 0");
        if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi))
            throw std::invalid_argument("scan: range must be finite with lo <= hi");
        if (!(a >= 1.0)) throw std::invalid_argument("scan: a must be >= 1");
        if (base_steps < 1) throw std::invalid_argument("scan: base_steps must be >= 1");
    }
};

struct ScanResult {
    std::vector<double> error_values;
    std::vector<double> fidelities;       // NaN where a point failed
    std::vector<std::string> point_errors;  // empty string where ok
    ScanSpec spec;

    bool all_ok() const {
        for (const auto& e : point_errors)
            if (!e.empty()) return false;
        return true;
    }
};

namespace detail {

// Amplitude error beta scales the executed drive. For reference and TR the
// transform is linear in the pulse amplitudes, so scaling Omega0 of the
// reference equals scaling the physical rescaled pulses. The CD correction is
// realized through the same laser fields, so the full CD Hamiltonian scales.
inline TimeDependentHamiltonian protocol_with_amplitude_error(const ScanSpec& s, double beta) {
    const double gain = 1.0 + beta;
    switch (s.protocol) {
        case Protocol::reference:
            return stirap_protocol(
                StirapParams::scaled_defaults(s.op_time).with_amplitude_scale(gain));
        case Protocol::tr: {
            const StirapParams ref =
                StirapParams::scaled_defaults(s.a * s.op_time).with_amplitude_scale(gain);
            return tr_hamiltonian(stirap_protocol(ref), RescaleParams(s.a, ref.t_f));
        }
        case Protocol::cd: {
            const StirapParams p = cd_reference_params(s.op_time);
            return {[p, gain](double t) { return (gain * cd_hamiltonian(p, t)).eval(); },
                    p.t_f};
        }
        case Protocol::pi_pulse: {
            const BaselineSpec spec = BaselineSpec::pi_pulse(s.op_time);
            return {[spec, gain](double t) {
                        return (gain * pi_pulse_hamiltonian(spec, t)).eval();
                    },
                    spec.duration};
        }
    }
    throw std::logic_error("scan: unknown protocol");
}

// Detuning error is a static offset added to the executed Hamiltonian at run
// time; the protocol itself is designed resonant. For the Lambda protocols the
// offset lands on the |2> level (one-photon detuning), optionally also on |3>
// (two-photon). The pi pulse has no |2> coupling, so its miscalibration lands
// on the driven |1>-|3> pair instead.
inline TimeDependentHamiltonian protocol_with_detuning_error(const ScanSpec& s, double shift) {
    ScanSpec resonant = s;
    TimeDependentHamiltonian designed = protocol_with_amplitude_error(resonant, 0.0);
    HermitianOperator3 offset = HermitianOperator3::Zero();
    if (s.protocol == Protocol::pi_pulse) {
        offset(2, 2) = shift;
    } else {
        offset(1, 1) = shift;
        if (s.detuning_two_photon) offset(2, 2) = shift;
    }
    auto inner = designed.op;
    return {[inner = std::move(inner), offset](double t) {
                return (inner(t) + offset).eval();
            },
            designed.duration};
}

inline int scan_steps(const ScanSpec& s) {
    return s.protocol == Protocol::tr
               ? tr_step_count(RescaleParams(s.a, s.a * s.op_time), s.base_steps)
               : s.base_steps;
}

inline double fidelity_at(const ScanSpec& s, double x) {
    const TimeDependentHamiltonian h = s.kind == ErrorKind::amplitude_beta
                                           ? protocol_with_amplitude_error(s, x)
                                           : protocol_with_detuning_error(s, x);
    const std::vector<double> window = {0.0, s.op_time};
    StateVector3 psi0, target;
    psi0 << 1.0, 0.0, 0.0;
    target << 0.0, 0.0, 1.0;
    const Trajectory traj = evolve(h, psi0, window, scan_steps(s));
    return fidelity(traj.final_state(), target);
}

inline ScanResult run_scan(const ScanSpec& s) {
    s.validate();
    ScanResult res;
    res.spec = s;
    for (int k = 0; k < s.n_points; ++k) {
        const double x = s.lo + (s.hi - s.lo) * k / (s.n_points - 1);
        res.error_values.push_back(x);
        try {
            res.fidelities.push_back(fidelity_at(s, x));
            res.point_errors.emplace_back();
        } catch (const std::exception& e) {
            res.fidelities.push_back(std::numeric_limits<double>::quiet_NaN());
            res.point_errors.emplace_back(e.what());
        }
    }
    return res;
}

}  // namespace detail

inline ScanResult run_amplitude_scan(ScanSpec spec) {
    spec.kind = ErrorKind::amplitude_beta;
    return detail::run_scan(spec);
}

inline ScanResult run_detuning_scan(ScanSpec spec) {
    spec.kind = ErrorKind::detuning_shift;
    return detail::run_scan(spec);
}

inline ScanResult run_scan(const ScanSpec& spec) { return detail::run_scan(spec); }

// Robustness curves of TR processes sharing one reference protocol
// (duration t_f_ref, executed in T = t_f_ref/a) for several values of a.
// Returns the max pointwise distance between any two curves.
inline double a_independence_check(std::span<const double> a_values,
                                   std::span<const double> error_grid,
                                   ErrorKind kind = ErrorKind::amplitude_beta,
                                   double t_f_ref = 10.0, int base_steps = 4000) {
    if (error_grid.size() < 1 || a_values.size() < 2)
        throw std::invalid_argument("scan: need >= 2 a values and a nonempty error grid");
    std::vector<std::vector<double>> curves;
    for (double a : a_values) {
        ScanSpec s;
        s.protocol = Protocol::tr;
        s.kind = kind;
        s.a = a;
        s.op_time = t_f_ref / a;
        s.base_steps = base_steps;
        std::vector<double> curve;
        for (double x : error_grid)
            curve.push_back(detail::fidelity_at(s, x));
        curves.push_back(std::move(curve));
    }
    double worst = 0.0;
    for (size_t i = 0; i < curves.size(); ++i)
        for (size_t j = i + 1; j < curves.size(); ++j)
            for (size_t k = 0; k < error_grid.size(); ++k)
                worst = std::max(worst, std::abs(curves[i][k] - curves[j][k]));
    return worst;
}

}  // namespace trsta
