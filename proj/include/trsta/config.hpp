#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "trsta/experiments.hpp"
#include "trsta/rescale.hpp"
#include "trsta/stirap.hpp"

namespace trsta {

// INI-style run configuration. Frequencies are given in MHz in the file and
// converted to rad/us (factor 2 pi) when the parameter records are built.
// Scan min/max are dimensionless for amplitude scans and MHz for detuning
// scans.

struct ConfigError : std::runtime_error {
    int line;
    int column;
    ConfigError(const std::string& msg, int line_ = 0, int column_ = 0)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ", col " +
                                             std::to_string(column_) + ": " + msg
                                       : msg),
          line(line_), column(column_) {}
};

struct StirapConfig {
    double omega0_mhz = 3.0;
    double t_f_us = 10.0;
    double t0_us = 1.0;
    double sigma_us = 10.0 / 6.0;
    double delta_mhz = 0.0;
    double delta2_mhz = 0.0;
    bool operator==(const StirapConfig&) const = default;
};

struct RescaleConfig {
    double a = 10.0;
    double tol_us = 1e-12;
    bool operator==(const RescaleConfig&) const = default;
};

struct BaselineConfig {
    std::string kind = "counterdiabatic";  // counterdiabatic | pi_pulse
    double duration_us = 1.0;
    bool operator==(const BaselineConfig&) const = default;
};

struct ScanConfig {
    std::string protocol = "tr";   // reference | tr | cd | pi_pulse
    std::string kind = "amplitude";  // amplitude | detuning
    std::optional<double> min;     // default: -0.3 (amplitude), -6 MHz (detuning)
    std::optional<double> max;
    int n_points = 121;
    double op_time_us = 1.0;
    bool detuning_two_photon = false;
    int steps = 4000;
    bool operator==(const ScanConfig&) const = default;
};

struct OutputConfig {
    std::string trajectory_path = "trajectory.csv";
    std::string scan_path = "scan.csv";
    std::string pulses_path = "pulses.csv";
    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    StirapConfig stirap;
    RescaleConfig rescale;
    BaselineConfig baseline;
    ScanConfig scan;
    OutputConfig output;
    bool operator==(const RunConfig&) const = default;

    StirapParams stirap_params() const {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        return StirapParams(two_pi * stirap.omega0_mhz, stirap.t_f_us, stirap.t0_us,
                            stirap.sigma_us, two_pi * stirap.delta_mhz,
                            two_pi * stirap.delta2_mhz);
    }

    RescaleParams rescale_params() const { return RescaleParams(rescale.a, stirap.t_f_us); }

    ScanSpec scan_spec() const {
        ScanSpec s;
        if (scan.protocol == "reference") s.protocol = Protocol::reference;
        else if (scan.protocol == "tr") s.protocol = Protocol::tr;
        else if (scan.protocol == "cd") s.protocol = Protocol::cd;
        else if (scan.protocol == "pi_pulse") s.protocol = Protocol::pi_pulse;
        else throw ConfigError("unknown scan protocol '" + scan.protocol + "'");
        if (scan.kind == "amplitude") s.kind = ErrorKind::amplitude_beta;
        else if (scan.kind == "detuning") s.kind = ErrorKind::detuning_shift;
        else throw ConfigError("unknown scan kind '" + scan.kind + "'");
        const bool detuning = s.kind == ErrorKind::detuning_shift;
        const double unit = detuning ? 2.0 * std::numbers::pi : 1.0;
        const double def = detuning ? 6.0 : 0.3;
        s.lo = unit * scan.min.value_or(-def);
        s.hi = unit * scan.max.value_or(def);
        s.n_points = scan.n_points;
        s.op_time = scan.op_time_us;
        s.a = rescale.a;
        s.detuning_two_photon = scan.detuning_two_photon;
        s.base_steps = scan.steps;
        return s;
    }
};

namespace detail {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view v, int line) {
    try {
        size_t used = 0;
        const double x = std::stod(std::string(v), &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + std::string(v) + "'", line, 1);
    }
}

inline int parse_int(std::string_view v, int line) {
    const double x = parse_double(v, line);
    const int n = static_cast<int>(x);
    if (x != n) throw ConfigError("not an integer: '" + std::string(v) + "'", line, 1);
    return n;
}

inline bool parse_bool(std::string_view v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("not a boolean (true/false): '" + std::string(v) + "'", line, 1);
}

}  // namespace detail

inline RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::map<std::string, int> seen;  // "section.key" -> line of first occurrence
    int line_no = 0;

    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", line_no,
                                  static_cast<int>(raw.find('[')) + 1);
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (section != "stirap" && section != "rescale" && section != "baseline" &&
                section != "scan" && section != "output")
                throw ConfigError("unknown section [" + section + "]", line_no, 1);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'key = value'", line_no, 1);
        if (section.empty())
            throw ConfigError("key outside of any section", line_no, 1);
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string_view val = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no, 1);

        const std::string qualified = section + "." + key;
        if (auto [it, inserted] = seen.emplace(qualified, line_no); !inserted)
            throw ConfigError("duplicate key '" + qualified + "' (first at line " +
                                  std::to_string(it->second) + ")",
                              line_no, 1);

        const int ln = line_no;
        if (section == "stirap") {
            if (key == "omega0_mhz") cfg.stirap.omega0_mhz = detail::parse_double(val, ln);
            else if (key == "t_f_us") cfg.stirap.t_f_us = detail::parse_double(val, ln);
            else if (key == "t0_us") cfg.stirap.t0_us = detail::parse_double(val, ln);
            else if (key == "sigma_us") cfg.stirap.sigma_us = detail::parse_double(val, ln);
            else if (key == "delta_mhz") cfg.stirap.delta_mhz = detail::parse_double(val, ln);
            else if (key == "delta2_mhz") cfg.stirap.delta2_mhz = detail::parse_double(val, ln);
            else throw ConfigError("unknown key '" + qualified + "'", ln, 1);
        } else if (section == "rescale") {
            if (key == "a") cfg.rescale.a = detail::parse_double(val, ln);
            else if (key == "tol_us") cfg.rescale.tol_us = detail::parse_double(val, ln);
            else throw ConfigError("unknown key '" + qualified + "'", ln, 1);
        } else if (section == "baseline") {
            if (key == "kind") cfg.baseline.kind = std::string(val);
            else if (key == "duration_us") cfg.baseline.duration_us = detail::parse_double(val, ln);
            else throw ConfigError("unknown key '" + qualified + "'", ln, 1);
        } else if (section == "scan") {
            if (key == "protocol") cfg.scan.protocol = std::string(val);
            else if (key == "kind") cfg.scan.kind = std::string(val);
            else if (key == "min") cfg.scan.min = detail::parse_double(val, ln);
            else if (key == "max") cfg.scan.max = detail::parse_double(val, ln);
            else if (key == "n_points") cfg.scan.n_points = detail::parse_int(val, ln);
            else if (key == "op_time_us") cfg.scan.op_time_us = detail::parse_double(val, ln);
            else if (key == "detuning_two_photon")
                cfg.scan.detuning_two_photon = detail::parse_bool(val, ln);
            else if (key == "steps") cfg.scan.steps = detail::parse_int(val, ln);
            else throw ConfigError("unknown key '" + qualified + "'", ln, 1);
        } else {  // output
            if (key == "trajectory_path") cfg.output.trajectory_path = std::string(val);
            else if (key == "scan_path") cfg.output.scan_path = std::string(val);
            else if (key == "pulses_path") cfg.output.pulses_path = std::string(val);
            else throw ConfigError("unknown key '" + qualified + "'", ln, 1);
        }
    }

    // semantic checks
    if (cfg.rescale.a < 1.0) throw ConfigError("a must be >= 1");
    if (!(cfg.rescale.tol_us > 0.0)) throw ConfigError("tol_us must be > 0");
    if (!(cfg.stirap.omega0_mhz > 0.0)) throw ConfigError("omega0_mhz must be > 0");
    if (!(cfg.stirap.t_f_us > 0.0)) throw ConfigError("t_f_us must be > 0");
    if (!(cfg.stirap.sigma_us > 0.0)) throw ConfigError("sigma_us must be > 0");
    if (!(cfg.stirap.t0_us > 0.0 && cfg.stirap.t0_us < 0.5 * cfg.stirap.t_f_us))
        throw ConfigError("t0_us must satisfy 0 < t0 < t_f/2");
    if (cfg.baseline.kind != "counterdiabatic" && cfg.baseline.kind != "pi_pulse")
        throw ConfigError("baseline kind must be counterdiabatic or pi_pulse");
    if (!(cfg.baseline.duration_us > 0.0)) throw ConfigError("duration_us must be > 0");
    if (cfg.scan.protocol != "reference" && cfg.scan.protocol != "tr" &&
        cfg.scan.protocol != "cd" && cfg.scan.protocol != "pi_pulse")
        throw ConfigError("scan protocol must be reference, tr, cd or pi_pulse");
    if (cfg.scan.kind != "amplitude" && cfg.scan.kind != "detuning")
        throw ConfigError("scan kind must be amplitude or detuning");
    if (cfg.scan.n_points < 2) throw ConfigError("n_points must be >= 2");
    if (!(cfg.scan.op_time_us > 0.0)) throw ConfigError("op_time_us must be > 0");
    if (cfg.scan.steps < 1) throw ConfigError("steps must be >= 1");
    return cfg;
}

inline std::string serialize_config(const RunConfig& c) {
    using detail::format_g17;
    std::ostringstream out;
    out << "# frequencies in MHz (converted internally to rad/us by 2*pi)\n";
    out << "[stirap]\n";
    out << "omega0_mhz = " << format_g17(c.stirap.omega0_mhz) << "\n";
    out << "t_f_us = " << format_g17(c.stirap.t_f_us) << "\n";
    out << "t0_us = " << format_g17(c.stirap.t0_us) << "\n";
    out << "sigma_us = " << format_g17(c.stirap.sigma_us) << "\n";
    out << "delta_mhz = " << format_g17(c.stirap.delta_mhz) << "\n";
    out << "delta2_mhz = " << format_g17(c.stirap.delta2_mhz) << "\n";
    out << "\n[rescale]\n";
    out << "a = " << format_g17(c.rescale.a) << "\n";
    out << "tol_us = " << format_g17(c.rescale.tol_us) << "\n";
    out << "\n[baseline]\n";
    out << "kind = " << c.baseline.kind << "\n";
    out << "duration_us = " << format_g17(c.baseline.duration_us) << "\n";
    out << "\n[scan]\n";
    out << "protocol = " << c.scan.protocol << "\n";
    out << "kind = " << c.scan.kind << "\n";
    if (c.scan.min) out << "min = " << format_g17(*c.scan.min) << "\n";
    if (c.scan.max) out << "max = " << format_g17(*c.scan.max) << "\n";
    out << "n_points = " << c.scan.n_points << "\n";
    out << "op_time_us = " << format_g17(c.scan.op_time_us) << "\n";
    out << "detuning_two_photon = " << (c.scan.detuning_two_photon ? "true" : "false") << "\n";
    out << "steps = " << c.scan.steps << "\n";
    out << "\n[output]\n";
    out << "trajectory_path = " << c.output.trajectory_path << "\n";
    out << "scan_path = " << c.output.scan_path << "\n";
    out << "pulses_path = " << c.output.pulses_path << "\n";
    return out.str();
}

}  // namespace trsta
