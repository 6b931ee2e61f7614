#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "revival/config.hpp"

using namespace revival;
using Catch::Approx;

namespace {

struct TempConfig {
    std::filesystem::path path;
    explicit TempConfig(const std::string& text) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("revival_cfg_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
                ".cfg");
        std::ofstream out(path);
        out << text;
    }
    ~TempConfig() { std::filesystem::remove(path); }
};

const std::string kMinimal =
    "[molecule]\n"
    "preset = CH3I\n"
    "[ensemble]\n"
    "temperature_K = 293\n"
    "[pulse]\n"
    "duration_fwhm_fs = 120\n"
    "b_tilde_fs3 = 2e7\n";

}  // namespace

TEST_CASE("minimal preset config loads with defaults") {
    TempConfig f(kMinimal);
    const RunConfig cfg = load_config(f.path.string());
    CHECK(cfg.molecule.name == "CH3I");
    CHECK(cfg.molecule.J_max >= 40);           // auto J_max obeys the tail criterion
    CHECK(cfg.sigma == Approx(0.013875910185961629).epsilon(1e-13));
    CHECK(cfg.b_tilde_resolved == 2e7);
    CHECK(cfg.omega0 == 2.355);
    CHECK(cfg.a_tilde == 0.0);
    CHECK(cfg.out_prefix == "out");
    CHECK_FALSE(cfg.has_slm);
    CHECK_NOTHROW(thermal_populations(cfg.molecule, cfg.temperature));
}

TEST_CASE("design_n resolves the analytic cubic phase") {
    TempConfig f(
        "[molecule]\n"
        "preset = CO2\n"
        "[ensemble]\n"
        "temperature_K = 403\n"
        "[pulse]\n"
        "duration_fwhm_fs = 120\n"
        "design_n = 32\n");
    const RunConfig cfg = load_config(f.path.string());
    CHECK(cfg.b_tilde_resolved == Approx(43148998.713606512).epsilon(1e-12));
    CHECK(cfg.design_component == "000");
}

TEST_CASE("inline molecule components") {
    TempConfig f(
        "[molecule]\n"
        "name = twin\n"
        "component = a 0.25 2.1e-7 0 1 0 all\n"
        "component = b 0.39 1.3e-7 667 1 1 odd\n"
        "j_max = 60\n"
        "[ensemble]\n"
        "temperature_K = 150\n"
        "[pulse]\n"
        "sigma_rad_fs = 0.0139\n"
        "b_tilde_fs3 = 0\n");
    const RunConfig cfg = load_config(f.path.string());
    REQUIRE(cfg.molecule.components.size() == 2);
    CHECK(cfg.molecule.components[1].J_parity == JParity::Odd);
    CHECK(cfg.molecule.components[1].E_vib == 667.0);
    CHECK(cfg.molecule.J_max == 60);
}

TEST_CASE("exclusivity violations") {
    SECTION("both b_tilde and design_n") {
        TempConfig f(kMinimal + "design_n = 5\n");
        CHECK_THROWS_AS(load_config(f.path.string()), ValidationError);
    }
    SECTION("neither b_tilde nor design_n") {
        TempConfig f(
            "[molecule]\npreset = CH3I\n[ensemble]\ntemperature_K = 293\n"
            "[pulse]\nduration_fwhm_fs = 120\n");
        CHECK_THROWS_AS(load_config(f.path.string()), ValidationError);
    }
    SECTION("both duration and sigma") {
        TempConfig f(kMinimal + "sigma_rad_fs = 0.014\n");
        CHECK_THROWS_AS(load_config(f.path.string()), ValidationError);
    }
    SECTION("preset plus inline components") {
        TempConfig f(kMinimal + "\n[molecule]\ncomponent = a 0.25 0 0 1 0 all\n");
        CHECK_THROWS_AS(load_config(f.path.string()), ValidationError);
    }
}

TEST_CASE("nyquist validation at load") {
    TempConfig f(kMinimal +
                 "[simulate]\n"
                 "t_start_ps = 0\n"
                 "t_end_ps = 10\n"
                 "dt_ps = 0.05\n");
    try {
        load_config(f.path.string());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("Nyquist") != std::string::npos);
    }

    TempConfig ok(kMinimal +
                  "[simulate]\n"
                  "t_start_ps = 0\n"
                  "t_end_ps = 10\n"
                  "dt_ps = 0.005\n");
    CHECK_NOTHROW(load_config(ok.path.string()));
}

TEST_CASE("strict parsing with line numbers") {
    SECTION("unknown key") {
        TempConfig f(kMinimal + "frobnicate = 1\n");
        try {
            load_config(f.path.string());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 7);
            CHECK(std::string(e.what()).find("line 7") != std::string::npos);
        }
    }
    SECTION("unknown section") {
        TempConfig f("[warp]\nfactor = 9\n");
        CHECK_THROWS_AS(load_config(f.path.string()), ParseError);
    }
    SECTION("key before any section") {
        TempConfig f("preset = CH3I\n");
        CHECK_THROWS_AS(load_config(f.path.string()), ParseError);
    }
    SECTION("malformed number") {
        TempConfig f(
            "[molecule]\npreset = CH3I\n[ensemble]\ntemperature_K = warm\n"
            "[pulse]\nduration_fwhm_fs = 120\nb_tilde_fs3 = 0\n");
        CHECK_THROWS_AS(load_config(f.path.string()), ParseError);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_config("/nonexistent/nope.cfg"), IoError);
    }
    SECTION("comments and blank lines are fine") {
        TempConfig f("# top\n\n" + kMinimal + "\n# trailing comment\n");
        CHECK_NOTHROW(load_config(f.path.string()));
    }
}

TEST_CASE("analyze window configuration") {
    SECTION("by revival index") {
        TempConfig f(kMinimal +
                     "[analyze]\n"
                     "window_n = 1.5\n"
                     "half_width_ps = 3\n");
        const RunConfig cfg = load_config(f.path.string());
        const auto [lo, hi] = cfg.analysis_window();
        CHECK(lo == Approx(1.5 * 66.7128190396 - 3.0).margin(1e-6));
        CHECK(hi - lo == Approx(6.0).margin(1e-12));
    }
    SECTION("explicit window") {
        TempConfig f(kMinimal + "[analyze]\nt_lo_ps = 10\nt_hi_ps = 12\n");
        const RunConfig cfg = load_config(f.path.string());
        const auto [lo, hi] = cfg.analysis_window();
        CHECK(lo == 10.0);
        CHECK(hi == 12.0);
    }
    SECTION("both forms at once") {
        TempConfig f(kMinimal + "[analyze]\nwindow_n = 2\nt_lo_ps = 1\nt_hi_ps = 2\n");
        CHECK_THROWS_AS(load_config(f.path.string()), ValidationError);
    }
}

TEST_CASE("float formatting is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2e7) == "2e+07");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e9, 1e9);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 30);
        CHECK(parse_double(format_double(x), 0) == x);
    }
}

TEST_CASE("csv round trip and determinism") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = dir / "revival_csv_a.csv";
    const auto p2 = dir / "revival_csv_b.csv";
    std::vector<std::vector<double>> rows{{0.1, -2.5e-7}, {1.0 / 3.0, 42.0}};
    write_csv(p1.string(), {"x", "y"}, rows);
    write_csv(p2.string(), {"x", "y"}, rows);

    std::ifstream a(p1), b(p2);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);  // byte-identical

    const CsvTable t = read_csv(p1.string());
    REQUIRE(t.rows.size() == 2);
    CHECK(t.column("y") == 1);
    CHECK(t.rows[0][0] == 0.1);
    CHECK(t.rows[0][1] == -2.5e-7);
    CHECK(t.rows[1][0] == 1.0 / 3.0);
    CHECK_THROWS_AS(t.column("z"), IoError);

    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}
