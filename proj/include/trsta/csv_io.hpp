#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "trsta/config.hpp"
#include "trsta/experiments.hpp"
#include "trsta/propagate.hpp"
#include "trsta/transform.hpp"

namespace trsta {

struct io_error : std::runtime_error {
    io_error(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what) {}
};

namespace detail {
inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error(path, "cannot open for writing");
    return out;
}
inline void close_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw io_error(path, "write failed");
}
}  // namespace detail

// One row per grid point, 17 significant digits so the values re-parse
// bit-exactly.
inline void emit_trajectory(const Trajectory& traj, const std::string& path) {
    using detail::format_g17;
    auto out = detail::open_out(path);
    out << "t_us,re1,im1,re2,im2,re3,im3,P1,P2,P3\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        const auto& p = traj.populations[i];
        out << format_g17(traj.times[i]);
        for (int k = 0; k < 3; ++k)
            out << ',' << format_g17(s(k).real()) << ',' << format_g17(s(k).imag());
        out << ',' << format_g17(p[0]) << ',' << format_g17(p[1]) << ','
            << format_g17(p[2]) << "\n";
    }
    detail::close_out(out, path);
}

// Scan CSV plus a JSON sidecar (<path>.json) echoing the resolved spec, the
// full run configuration when available, and the error-injection conventions.
inline void emit_scan(const ScanResult& res, const std::string& path,
                      const RunConfig* config = nullptr) {
    using detail::format_g17;
    auto out = detail::open_out(path);
    out << "error_value,fidelity,protocol,a,T_us\n";
    for (size_t i = 0; i < res.error_values.size(); ++i) {
        out << format_g17(res.error_values[i]) << ',' << format_g17(res.fidelities[i])
            << ',' << to_string(res.spec.protocol) << ',' << format_g17(res.spec.a) << ','
            << format_g17(res.spec.op_time) << "\n";
    }
    detail::close_out(out, path);

    nlohmann::json meta;
    meta["spec"] = {
        {"protocol", to_string(res.spec.protocol)},
        {"kind", to_string(res.spec.kind)},
        {"lo", res.spec.lo},
        {"hi", res.spec.hi},
        {"n_points", res.spec.n_points},
        {"op_time_us", res.spec.op_time},
        {"a", res.spec.a},
        {"detuning_two_photon", res.spec.detuning_two_photon},
        {"base_steps", res.spec.base_steps},
    };
    meta["conventions"] = {
        {"amplitude_error", "beta scales the executed drive amplitudes; for TR this is "
                            "equivalent to scaling the reference Rabi amplitude"},
        {"detuning_error", "static offset added to the executed Hamiltonian at run time; "
                           "one-photon (|2> level) for Lambda protocols, |3> level for the "
                           "pi pulse; rad/us on the error axis"},
    };
    meta["all_points_ok"] = res.all_ok();
    if (config) meta["config_ini"] = serialize_config(*config);
    const std::string side = path + ".json";
    auto jout = detail::open_out(side);
    jout << meta.dump(2) << "\n";
    detail::close_out(jout, side);
}

// Reference pulses over [0, t_f] alongside the rescaled pulses over
// [0, t_f/a], row k sampling both windows at the same fraction k/(n-1).
inline void emit_pulses(const StirapParams& p, const RescaleParams& r, int n_points,
                        const std::string& path) {
    using detail::format_g17;
    if (n_points < 2) throw std::invalid_argument("emit_pulses: need at least 2 points");
    auto out = detail::open_out(path);
    out << "t_us,omega_p,omega_s,t_tr_us,omega_p_tr,omega_s_tr,delta_tr\n";
    for (int k = 0; k < n_points; ++k) {
        const double t = p.t_f * k / (n_points - 1);
        const double t_tr = r.duration() * k / (n_points - 1);
        const TrPulses tr = tr_pulses_closed_form(p, r, t_tr);
        out << format_g17(t) << ',' << format_g17(pump_pulse(p, t)) << ','
            << format_g17(stokes_pulse(p, t)) << ',' << format_g17(t_tr) << ','
            << format_g17(tr.omega_p) << ',' << format_g17(tr.omega_s) << ','
            << format_g17(tr.delta) << "\n";
    }
    detail::close_out(out, path);
}

}  // namespace trsta
