#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "trsta/config.hpp"
#include "trsta/csv_io.hpp"

using namespace trsta;
using Catch::Matchers::WithinRel;

TEST_CASE("empty sections fall back to the reference parameter set") {
    const RunConfig cfg = parse_config("[stirap]\n");
    const StirapParams p = cfg.stirap_params();
    CHECK_THAT(p.omega0, WithinRel(2.0 * std::numbers::pi * 3.0, 1e-15));
    CHECK(p.t_f == 10.0);
    CHECK(p.t0 == 1.0);
    CHECK_THAT(p.sigma, WithinRel(10.0 / 6.0, 1e-15));
    CHECK(p.delta_p == 0.0);
    CHECK(p.delta_2 == 0.0);
}

TEST_CASE("frequencies convert from MHz by 2 pi") {
    const RunConfig cfg = parse_config("[stirap]\nomega0_mhz = 5\ndelta_mhz = -2\n");
    CHECK_THAT(cfg.stirap_params().omega0, WithinRel(2.0 * std::numbers::pi * 5.0, 1e-15));
    CHECK_THAT(cfg.stirap_params().delta_p, WithinRel(-4.0 * std::numbers::pi, 1e-15));
}

TEST_CASE("semantic errors") {
    CHECK_THROWS_WITH(parse_config("[rescale]\na = 0.5\n"),
                      Catch::Matchers::ContainsSubstring("a must be >= 1"));
    CHECK_THROWS_AS(parse_config("[stirap]\nomega0_mhz = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[stirap]\nt0_us = 9\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[scan]\nn_points = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[baseline]\nkind = frobnicate\n"), ConfigError);
}

TEST_CASE("parse errors carry a line number") {
    SECTION("duplicate key") {
        try {
            parse_config("[rescale]\na = 2\na = 3\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line == 3);
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("duplicate key"));
        }
    }
    SECTION("unknown key") {
        CHECK_THROWS_WITH(parse_config("[rescale]\nzeta = 3\n"),
                          Catch::Matchers::ContainsSubstring("rescale.zeta"));
    }
    SECTION("unknown section") {
        CHECK_THROWS_AS(parse_config("[frob]\nx = 1\n"), ConfigError);
    }
    SECTION("key before any section") {
        CHECK_THROWS_WITH(parse_config("a = 2\n"),
                          Catch::Matchers::ContainsSubstring("outside of any section"));
    }
    SECTION("malformed line") {
        CHECK_THROWS_AS(parse_config("[rescale]\njust some words\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[rescale]\na = fast\n"), ConfigError);
    }
}

TEST_CASE("comments and whitespace are tolerated") {
    const RunConfig cfg = parse_config(
        "# header comment\n\n[rescale]\n  a = 5   # speed-up\n\n[scan]\nkind = detuning\n");
    CHECK(cfg.rescale.a == 5.0);
    CHECK(cfg.scan.kind == "detuning");
}

TEST_CASE("config round-trips through serialization") {
    RunConfig cfg;
    cfg.stirap.omega0_mhz = 2.7182818284590452;
    cfg.stirap.sigma_us = 0.12345678901234567;
    cfg.rescale.a = 3.3333333333333335;
    cfg.baseline.kind = "pi_pulse";
    cfg.scan.protocol = "cd";
    cfg.scan.kind = "detuning";
    cfg.scan.min = -5.5;
    cfg.scan.max = 5.5;
    cfg.scan.n_points = 17;
    cfg.scan.detuning_two_photon = true;
    cfg.output.scan_path = "out/scan.csv";
    CHECK(parse_config(serialize_config(cfg)) == cfg);

    // defaults round-trip too (optional keys stay absent)
    CHECK(parse_config(serialize_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("scan spec resolution") {
    SECTION("detuning axis converts MHz to rad/us and defaults to +-6 MHz") {
        const RunConfig cfg = parse_config("[scan]\nkind = detuning\n");
        const ScanSpec s = cfg.scan_spec();
        CHECK_THAT(s.lo, WithinRel(-2.0 * std::numbers::pi * 6.0, 1e-15));
        CHECK_THAT(s.hi, WithinRel(2.0 * std::numbers::pi * 6.0, 1e-15));
        CHECK(s.kind == ErrorKind::detuning_shift);
    }
    SECTION("amplitude axis is dimensionless with +-0.3 default") {
        const ScanSpec s = RunConfig{}.scan_spec();
        CHECK(s.lo == -0.3);
        CHECK(s.hi == 0.3);
        CHECK(s.kind == ErrorKind::amplitude_beta);
        CHECK(s.protocol == Protocol::tr);
        CHECK(s.a == 10.0);
    }
}

TEST_CASE("trajectory CSV re-parses to identical values") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "trsta_test_io";
    fs::create_directories(dir);
    const std::string path = (dir / "traj.csv").string();

    const StirapParams p = StirapParams::reference_defaults();
    StateVector3 psi0;
    psi0 << 1, 0, 0;
    const auto traj = evolve(stirap_protocol(p), psi0, uniform_grid(0.0, 10.0, 21), 50);
    emit_trajectory(traj, path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t_us,re1,im1,re2,im2,re3,im3,P1,P2,P3");
    size_t row = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double t, re1, im1, re2, im2, re3, im3, p1, p2, p3;
        ss >> t >> re1 >> im1 >> re2 >> im2 >> re3 >> im3 >> p1 >> p2 >> p3;
        CHECK(t == traj.times[row]);
        CHECK(re1 == traj.states[row](0).real());
        CHECK(im3 == traj.states[row](2).imag());
        CHECK(p2 == traj.populations[row][1]);
        CHECK(std::abs(p1 + p2 + p3 - 1.0) <= 1e-9);
        ++row;
    }
    CHECK(row == traj.times.size());
    fs::remove_all(dir);
}

TEST_CASE("scan CSV and JSON sidecar") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "trsta_test_scan_io";
    fs::create_directories(dir);
    const std::string path = (dir / "scan.csv").string();

    ScanSpec spec;
    spec.protocol = Protocol::pi_pulse;
    spec.lo = -0.2; spec.hi = 0.2; spec.n_points = 5; spec.base_steps = 200;
    const ScanResult res = run_amplitude_scan(spec);
    RunConfig cfg;
    emit_scan(res, path, &cfg);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "error_value,fidelity,protocol,a,T_us");
    int rows = 0;
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) { ++rows; last = line; }
    CHECK(rows == 5);
    CHECK_THAT(last, Catch::Matchers::ContainsSubstring("pi_pulse"));

    std::ifstream jin(path + ".json");
    REQUIRE(jin.good());
    const auto meta = nlohmann::json::parse(jin);
    CHECK(meta["spec"]["protocol"] == "pi_pulse");
    CHECK(meta["spec"]["n_points"] == 5);
    CHECK(meta["all_points_ok"] == true);
    CHECK(meta.contains("config_ini"));
    CHECK(meta.contains("conventions"));
    fs::remove_all(dir);
}

TEST_CASE("io errors carry the path") {
    ScanSpec spec;
    spec.lo = 0.0; spec.hi = 0.1; spec.n_points = 2; spec.base_steps = 10;
    spec.protocol = Protocol::pi_pulse;
    const ScanResult res = run_amplitude_scan(spec);
    CHECK_THROWS_AS(emit_scan(res, "/nonexistent_dir_trsta/scan.csv"), io_error);
}
