#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "revival/csv.hpp"
#include "revival/design.hpp"
#include "revival/dynamics.hpp"
#include "revival/errors.hpp"
#include "revival/pulse.hpp"
#include "revival/rotor.hpp"

namespace revival {

/// Fully resolved run configuration. Loaded from the line-oriented
/// key = value format with [section] headers; unknown keys and sections
/// are errors.
struct RunConfig {
    std::string raw_text;  // verbatim config echo for the manifest

    MoleculeSpec molecule;
    bool j_max_auto = true;

    double temperature = 293.0;

    // pulse
    std::optional<double> duration_fwhm_fs;
    std::optional<double> sigma_rad_fs;
    double sigma = 0.0;  // resolved
    double omega0 = 2.355;
    double a_tilde = 0.0;
    std::optional<double> b_tilde;
    std::optional<double> design_n;
    double b_tilde_resolved = 0.0;
    int grid_samples = 1 << 14;
    double grid_halfwidth_sigmas = 8.0;

    // slm (optional)
    bool has_slm = false;
    SlmConfig slm;
    bool slm_window_given = false;

    // design / scan
    std::string design_component;  // defaults to first component
    std::vector<double> scan_b_factors{0.0, 0.5, 1.0, 2.0};

    // simulate
    bool has_simulate = false;
    double t_start_ps = 0.0, t_end_ps = 0.0, dt_ps = 0.0;
    bool solo = false;

    // analyze
    bool has_analyze = false;
    std::optional<double> window_n;
    double half_width_ps = 3.0;
    std::optional<double> t_lo_ps, t_hi_ps;
    std::string analyze_component;

    std::string out_prefix = "out";

    const RotorComponent& design_comp() const { return molecule.component(design_component); }

    double max_omega() const {
        double w = 0.0;
        for (const auto& c : molecule.components)
            for (int J = c.J_min; J + 2 <= molecule.J_max; ++J)
                if (c.allows(J) && c.allows(J + 2)) w = std::max(w, raman_frequency(c, J));
        return w;
    }

    std::pair<double, double> analysis_window() const {
        if (t_lo_ps && t_hi_ps) return {*t_lo_ps, *t_hi_ps};
        const auto& c = molecule.component(analyze_component);
        return revival_window(c, *window_n, half_width_ps);
    }

    GridSpec grid_spec() const { return GridSpec{grid_samples, grid_halfwidth_sigmas}; }

    ShapedPulse make_configured_pulse() const {
        ShapedPulse p = make_pulse(omega0, sigma, PhaseProfile{a_tilde, b_tilde_resolved},
                                   grid_spec());
        if (has_slm) return slm_discretize(p, slm);
        return p;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError("expected boolean, got '" + v + "'", line);
}

inline RotorComponent parse_component_line(const std::string& v, int line) {
    std::istringstream ss(v);
    RotorComponent c;
    std::string parity;
    if (!(ss >> c.label >> c.B >> c.D >> c.E_vib >> c.g_vib >> c.J_min >> parity))
        throw ParseError("component needs: label B D E_vib g_vib J_min parity", line);
    std::string rest;
    if (ss >> rest) throw ParseError("trailing fields after component definition", line);
    c.J_parity = parity_from_string(parity);
    return c;
}

}  // namespace detail

/// Parse and validate a configuration file. Throws ParseError (with line
/// number) on malformed input and ValidationError on violated invariants;
/// the returned config is fully resolved (sigma, b~, J_max).
inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();

    RunConfig cfg;
    cfg.raw_text = buffer.str();

    std::string preset;
    std::string molecule_name;
    std::vector<RotorComponent> inline_components;
    std::optional<int> j_max_explicit;

    std::istringstream text(cfg.raw_text);
    std::string line, section;
    int line_no = 0;
    bool temperature_given = false;

    while (std::getline(text, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError("unterminated section header", line_no);
            section = t.substr(1, t.size() - 2);
            if (section != "molecule" && section != "ensemble" && section != "pulse" &&
                section != "slm" && section != "design" && section != "simulate" &&
                section != "analyze" && section != "output")
                throw ParseError("unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError("empty key or value", line_no);

        auto num = [&] { return parse_double(value, line_no); };

        if (section == "molecule") {
            if (key == "preset") preset = value;
            else if (key == "name") molecule_name = value;
            else if (key == "component") inline_components.push_back(detail::parse_component_line(value, line_no));
            else if (key == "j_max") {
                if (value == "auto") cfg.j_max_auto = true;
                else { cfg.j_max_auto = false; j_max_explicit = static_cast<int>(num()); }
            } else throw ParseError("unknown key '" + key + "' in [molecule]", line_no);
        } else if (section == "ensemble") {
            if (key == "temperature_K") { cfg.temperature = num(); temperature_given = true; }
            else throw ParseError("unknown key '" + key + "' in [ensemble]", line_no);
        } else if (section == "pulse") {
            if (key == "duration_fwhm_fs") cfg.duration_fwhm_fs = num();
            else if (key == "sigma_rad_fs") cfg.sigma_rad_fs = num();
            else if (key == "omega0_rad_fs") cfg.omega0 = num();
            else if (key == "a_tilde_fs2") cfg.a_tilde = num();
            else if (key == "b_tilde_fs3") cfg.b_tilde = num();
            else if (key == "design_n") cfg.design_n = num();
            else if (key == "grid_samples") cfg.grid_samples = static_cast<int>(num());
            else if (key == "grid_halfwidth_sigmas") cfg.grid_halfwidth_sigmas = num();
            else throw ParseError("unknown key '" + key + "' in [pulse]", line_no);
        } else if (section == "slm") {
            cfg.has_slm = true;
            if (key == "pixel_count") cfg.slm.pixel_count = static_cast<int>(num());
            else if (key == "window_lo_rad_fs") { cfg.slm.window_lo = num(); cfg.slm_window_given = true; }
            else if (key == "window_hi_rad_fs") { cfg.slm.window_hi = num(); cfg.slm_window_given = true; }
            else if (key == "phase_wrap") cfg.slm.phase_wrap = detail::parse_bool(value, line_no);
            else throw ParseError("unknown key '" + key + "' in [slm]", line_no);
        } else if (section == "design") {
            if (key == "component") cfg.design_component = value;
            else if (key == "scan_b_factors") {
                cfg.scan_b_factors.clear();
                std::stringstream ss(value);
                std::string cell;
                while (std::getline(ss, cell, ','))
                    cfg.scan_b_factors.push_back(parse_double(detail::trim(cell), line_no));
                if (cfg.scan_b_factors.empty())
                    throw ParseError("scan_b_factors must list at least one factor", line_no);
            } else throw ParseError("unknown key '" + key + "' in [design]", line_no);
        } else if (section == "simulate") {
            cfg.has_simulate = true;
            if (key == "t_start_ps") cfg.t_start_ps = num();
            else if (key == "t_end_ps") cfg.t_end_ps = num();
            else if (key == "dt_ps") cfg.dt_ps = num();
            else if (key == "solo") cfg.solo = detail::parse_bool(value, line_no);
            else throw ParseError("unknown key '" + key + "' in [simulate]", line_no);
        } else if (section == "analyze") {
            cfg.has_analyze = true;
            if (key == "window_n") cfg.window_n = num();
            else if (key == "half_width_ps") cfg.half_width_ps = num();
            else if (key == "t_lo_ps") cfg.t_lo_ps = num();
            else if (key == "t_hi_ps") cfg.t_hi_ps = num();
            else if (key == "component") cfg.analyze_component = value;
            else throw ParseError("unknown key '" + key + "' in [analyze]", line_no);
        } else if (section == "output") {
            if (key == "prefix") cfg.out_prefix = value;
            else throw ParseError("unknown key '" + key + "' in [output]", line_no);
        } else {
            throw ParseError("key outside any section", line_no);
        }
    }

    // ---- resolution & validation ----
    if (!preset.empty() && !inline_components.empty())
        throw ValidationError("give either a molecule preset or inline components, not both");
    if (!preset.empty()) {
        cfg.molecule = preset_molecule(preset);
    } else if (!inline_components.empty()) {
        cfg.molecule.name = molecule_name.empty() ? "custom" : molecule_name;
        cfg.molecule.components = inline_components;
        cfg.molecule.J_max = 0;  // set below
    } else {
        throw ValidationError("[molecule] must give a preset or inline components");
    }

    if (cfg.temperature <= 0.0) throw ValidationError("temperature_K must be > 0");
    if (!temperature_given && cfg.has_simulate)
        throw ValidationError("[ensemble] temperature_K is required for simulation runs");

    if (cfg.j_max_auto) {
        cfg.molecule.J_max = choose_j_max(cfg.molecule, cfg.temperature);
    } else {
        cfg.molecule.J_max = *j_max_explicit;
    }
    cfg.molecule.validate();

    if (cfg.duration_fwhm_fs.has_value() == cfg.sigma_rad_fs.has_value())
        throw ValidationError("give exactly one of duration_fwhm_fs / sigma_rad_fs");
    cfg.sigma = cfg.duration_fwhm_fs ? sigma_from_intensity_fwhm(*cfg.duration_fwhm_fs)
                                     : *cfg.sigma_rad_fs;
    if (cfg.sigma <= 0.0) throw ValidationError("pulse sigma must be > 0");

    if (cfg.b_tilde.has_value() == cfg.design_n.has_value())
        throw ValidationError("give exactly one of b_tilde_fs3 / design_n");

    if (cfg.design_component.empty()) cfg.design_component = cfg.molecule.components.front().label;
    cfg.molecule.component(cfg.design_component);  // existence check
    if (cfg.analyze_component.empty()) cfg.analyze_component = cfg.molecule.components.front().label;

    const auto& dc = cfg.design_comp();
    cfg.b_tilde_resolved = cfg.b_tilde ? *cfg.b_tilde : analytic_cubic(*cfg.design_n, dc.B, dc.D);

    if (cfg.has_slm) {
        if (!cfg.slm_window_given) {
            cfg.slm.window_lo = cfg.omega0 - 4.0 * cfg.sigma;
            cfg.slm.window_hi = cfg.omega0 + 4.0 * cfg.sigma;
        }
        cfg.slm.validate();
    }

    if (cfg.has_simulate) {
        if (!(cfg.t_start_ps < cfg.t_end_ps)) throw ValidationError("t_start_ps must be < t_end_ps");
        if (cfg.dt_ps <= 0.0) throw ValidationError("dt_ps must be > 0");
        const double omega_max = cfg.max_omega();
        if (cfg.dt_ps * 1000.0 >= 1.0 / (4.0 * omega_max))
            throw ValidationError(
                "dt_ps violates the Nyquist contract dt < 1/(4 max Omega): need dt_ps < " +
                format_double(1.0 / (4.0 * omega_max) / 1000.0));
    }

    if (cfg.has_analyze) {
        const bool by_n = cfg.window_n.has_value();
        const bool by_t = cfg.t_lo_ps.has_value() || cfg.t_hi_ps.has_value();
        if (by_n == by_t)
            throw ValidationError("give exactly one of window_n / (t_lo_ps, t_hi_ps) in [analyze]");
        if (by_t && (!cfg.t_lo_ps || !cfg.t_hi_ps))
            throw ValidationError("both t_lo_ps and t_hi_ps are required in [analyze]");
        if (cfg.half_width_ps <= 0.0) throw ValidationError("half_width_ps must be > 0");
    }
    return cfg;
}

}  // namespace revival
