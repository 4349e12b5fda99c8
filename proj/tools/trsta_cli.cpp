// Command-line front end: simulate trajectories, run robustness scans,
// verify the library invariants, and dump pulse shapes as CSV.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "trsta/trsta.hpp"

namespace {

using namespace trsta;

RunConfig load_config(const std::optional<std::string>& path) {
    if (!path) return RunConfig{};
    std::ifstream in(*path);
    if (!in) throw io_error(*path, "cannot open config");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

int steps_per_interval(int total_steps, int n_points) {
    return std::max(1, (total_steps + n_points - 2) / (n_points - 1));
}

int run_simulate(const RunConfig& cfg, const std::string& protocol, double a, int points,
                 int steps, const std::string& out_path) {
    const StirapParams p = cfg.stirap_params();
    StateVector3 psi0;
    psi0 << 1.0, 0.0, 0.0;

    Trajectory traj;
    if (protocol == "reference") {
        const auto grid = uniform_grid(0.0, p.t_f, points);
        traj = evolve(stirap_protocol(p), psi0, grid, steps_per_interval(steps, points));
    } else if (protocol == "adiabatic") {
        traj = adiabatic_trajectory(p, uniform_grid(0.0, p.t_f, points));
    } else if (protocol == "tr") {
        const RescaleParams r(a, p.t_f);
        const auto grid = uniform_grid(0.0, r.duration(), points);
        traj = evolve(tr_hamiltonian(stirap_protocol(p), r), psi0, grid,
                      steps_per_interval(tr_step_count(r, steps), points));
    } else if (protocol == "tr_adiabatic") {
        const RescaleParams r(a, p.t_f);
        traj = tr_adiabatic_trajectory(p, r, uniform_grid(0.0, r.duration(), points));
    } else if (protocol == "cd") {
        const StirapParams cd = cd_reference_params(cfg.baseline.duration_us);
        const auto grid = uniform_grid(0.0, cd.t_f, points);
        traj = evolve(cd_protocol(cd), psi0, grid, steps_per_interval(steps, points));
    } else if (protocol == "pi_pulse") {
        const BaselineSpec spec = BaselineSpec::pi_pulse(cfg.baseline.duration_us);
        const auto grid = uniform_grid(0.0, spec.duration, points);
        traj = evolve(pi_pulse_protocol(spec), psi0, grid, steps_per_interval(steps, points));
    } else {
        throw ConfigError("unknown protocol '" + protocol + "'");
    }

    emit_trajectory(traj, out_path);
    const auto& pf = traj.populations.back();
    std::cout << "wrote " << out_path << " (" << traj.times.size() << " rows, final P = ["
              << pf[0] << ", " << pf[1] << ", " << pf[2] << "])\n";
    return 0;
}

int run_scan_cmd(const RunConfig& cfg, const std::string& out_path) {
    const ScanSpec spec = cfg.scan_spec();
    const ScanResult res = run_scan(spec);
    emit_scan(res, out_path, &cfg);
    std::cout << "wrote " << out_path << " and " << out_path << ".json ("
              << res.error_values.size() << " points)\n";
    if (!res.all_ok()) {
        for (size_t i = 0; i < res.point_errors.size(); ++i)
            if (!res.point_errors[i].empty())
                std::cerr << "point " << res.error_values[i] << " failed: "
                          << res.point_errors[i] << "\n";
    }
    return 0;
}

struct Verifier {
    bool ok = true;
    void check(const std::string& name, bool pass, double residual) {
        std::cout << (pass ? "ok   " : "FAIL ") << name << "  (residual " << residual
                  << ")\n";
        ok = ok && pass;
    }
};

int run_verify(const RunConfig& cfg) {
    const StirapParams p = cfg.stirap_params();
    const RescaleParams r = cfg.rescale_params();
    Verifier v;

    // rescaling-function admissibility
    const RescaleValidation rv = validate_properties(r, 1000);
    v.check("rescale property (i)   f_inv(0) = 0", rv.initial_time_ok, rv.initial_time_residual);
    v.check("rescale property (ii)  f_inv(t_f) < t_f", rv.speedup_ok, rv.speedup_margin);
    v.check("rescale property (iii) f_dot(0) = 1", rv.initial_rate_ok, rv.initial_rate_residual);
    v.check("rescale property (iv)  f_dot(end) = 1", rv.final_rate_ok, rv.final_rate_residual);
    v.check("rescale monotone", rv.monotone_ok, rv.min_grid_increment);

    // commutation of reference and TR Hamiltonians along the route
    const TimeDependentHamiltonian ref = stirap_protocol(p);
    std::vector<double> gammas;
    for (int k = 0; k <= 10; ++k) gammas.push_back(k / 10.0);
    const double comm = commutator_check(ref, r, gammas);
    double hmax = 0.0;
    for (double g : gammas) hmax = std::max(hmax, ref(g * p.t_f).cwiseAbs().maxCoeff());
    v.check("commutator [H, TR-H] = 0", comm <= 1e-12 * hmax * hmax, comm);

    // closed-form rescaled pulses against the generic transform
    const TimeDependentHamiltonian trh = tr_hamiltonian(ref, r);
    double pulse_dev = 0.0;
    for (int k = 0; k <= 400; ++k) {
        const double t = r.duration() * k / 400;
        const TrPulses tp = tr_pulses_closed_form(p, r, t);
        const HermitianOperator3 h = trh(t);
        pulse_dev = std::max({pulse_dev, std::abs(2.0 * h(0, 1).real() - tp.omega_p),
                              std::abs(2.0 * h(1, 2).real() - tp.omega_s),
                              std::abs(h(1, 1).real() - tp.delta)});
    }
    v.check("closed-form TR pulses = generic transform", pulse_dev <= 1e-12 * p.omega0,
            pulse_dev);

    // closed-form eigensystem against a generic Hermitian solver
    double eig_dev = 0.0;
    for (int k = 1; k < 40; ++k) {
        const double t = p.t_f * k / 40;
        const Eigensystem3 es = eigensystem(p, t);
        const HermitianOperator3 h = hamiltonian(p, t);
        eig_dev = std::max({eig_dev, (h * es.dark - es.e0 * es.dark).norm(),
                            (h * es.plus - es.e_plus * es.plus).norm(),
                            (h * es.minus - es.e_minus * es.minus).norm()});
    }
    v.check("closed-form eigensystem solves H|n> = E|n>", eig_dev <= 1e-10 * p.omega0, eig_dev);

    // reparametrization equivalence: numeric TR dynamics vs reparametrized
    // numeric reference dynamics
    StateVector3 psi0;
    psi0 << 1.0, 0.0, 0.0;
    const auto ref_grid = uniform_grid(0.0, p.t_f, 801);
    const Trajectory ref_num = evolve(ref, psi0, ref_grid, 5);
    const auto tr_grid = uniform_grid(0.0, r.duration(), 801);
    const Trajectory tr_num =
        evolve(trh, psi0, tr_grid, steps_per_interval(tr_step_count(r), 801));
    const Trajectory reparam = reparametrized_trajectory(ref_num, r, tr_grid);
    double pop_dev = 0.0, norm_dev = 0.0;
    for (size_t i = 0; i < tr_grid.size(); ++i) {
        for (int k = 0; k < 3; ++k)
            pop_dev = std::max(pop_dev, std::abs(tr_num.populations[i][k] -
                                                 reparam.populations[i][k]));
        norm_dev = std::max(norm_dev, std::abs(tr_num.states[i].norm() - 1.0));
    }
    v.check("reparametrization equivalence (populations)", pop_dev <= 1e-3, pop_dev);
    v.check("unitarity of numeric propagation", norm_dev <= 1e-10, norm_dev);

    std::cout << (v.ok ? "verify: all checks passed\n" : "verify: FAILURES\n");
    return v.ok ? 0 : 2;
}

int run_emit_pulses(const RunConfig& cfg, double a, int points, const std::string& out_path) {
    const StirapParams p = cfg.stirap_params();
    emit_pulses(p, RescaleParams(a, p.t_f), points, out_path);
    std::cout << "wrote " << out_path << " (" << points << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-rescaled shortcuts to adiabaticity on a three-level STIRAP testbed"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    app.add_option("-c,--config", config_path, "INI run configuration")->capture_default_str();

    auto* sim = app.add_subcommand("simulate", "propagate one protocol, write a trajectory CSV");
    std::string sim_protocol = "reference";
    double sim_a = 10.0;
    int sim_points = 401, sim_steps = 4000;
    std::string sim_out = "trajectory.csv";
    sim->add_option("--protocol", sim_protocol,
                    "reference|adiabatic|tr|tr_adiabatic|cd|pi_pulse")->capture_default_str();
    sim->add_option("--a", sim_a, "time contraction parameter")->capture_default_str();
    sim->add_option("--points", sim_points, "output grid points")->capture_default_str();
    sim->add_option("--steps", sim_steps, "total integration steps")->capture_default_str();
    sim->add_option("-o,--out", sim_out, "output CSV path")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "run a robustness scan, write CSV + JSON sidecar");
    std::optional<std::string> scan_protocol, scan_kind;
    std::optional<double> scan_a, scan_min, scan_max, scan_T;
    std::optional<int> scan_points, scan_steps;
    std::optional<std::string> scan_out;
    scan->add_option("--protocol", scan_protocol, "reference|tr|cd|pi_pulse");
    scan->add_option("--kind", scan_kind, "amplitude|detuning");
    scan->add_option("--a", scan_a, "time contraction parameter");
    scan->add_option("--min", scan_min, "scan range lower edge (beta or MHz)");
    scan->add_option("--max", scan_max, "scan range upper edge (beta or MHz)");
    scan->add_option("--T", scan_T, "operation time (us)");
    scan->add_option("--points", scan_points, "number of scan points");
    scan->add_option("--steps", scan_steps, "integration steps per point");
    scan->add_option("-o,--out", scan_out, "output CSV path");

    auto* verify = app.add_subcommand("verify", "run the invariant suite");

    auto* pulses = app.add_subcommand("emit-pulses", "write reference and TR pulse samples");
    double pul_a = 10.0;
    int pul_points = 2001;
    std::string pul_out = "pulses.csv";
    pulses->add_option("--a", pul_a, "time contraction parameter")->capture_default_str();
    pulses->add_option("--points", pul_points, "sample count")->capture_default_str();
    pulses->add_option("-o,--out", pul_out, "output CSV path")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path);
        if (sim->parsed()) return run_simulate(cfg, sim_protocol, sim_a, sim_points,
                                               sim_steps, sim_out);
        if (scan->parsed()) {
            if (scan_protocol) cfg.scan.protocol = *scan_protocol;
            if (scan_kind) cfg.scan.kind = *scan_kind;
            if (scan_a) cfg.rescale.a = *scan_a;
            if (scan_min) cfg.scan.min = *scan_min;
            if (scan_max) cfg.scan.max = *scan_max;
            if (scan_T) cfg.scan.op_time_us = *scan_T;
            if (scan_points) cfg.scan.n_points = *scan_points;
            if (scan_steps) cfg.scan.steps = *scan_steps;
            if (cfg.rescale.a < 1.0) throw ConfigError("a must be >= 1");
            if (cfg.scan.n_points < 2) throw ConfigError("n_points must be >= 2");
            return run_scan_cmd(cfg, scan_out.value_or(cfg.output.scan_path));
        }
        if (verify->parsed()) return run_verify(cfg);
        if (pulses->parsed()) return run_emit_pulses(cfg, pul_a, pul_points, pul_out);
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
