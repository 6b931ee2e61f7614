// revival -- rotational revival synthesis and centrifugal-distortion
// pre-compensation design.
//
// Subcommands:
//   design    analytic + least-squares cubic phase for a target revival
//   raman     dump the per-J Raman coherence table for the configured pulse
//   simulate  synthesize an alignment trace onto CSV
//   analyze   metrics (peak, cycles, envelope FWHM) of a trace CSV window
//   scan      sweep b~ around the analytic value, report revival metrics

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "revival/revival.hpp"

namespace {

using namespace revival;

void ensure_parent_dir(const std::string& prefix) {
    const auto parent = std::filesystem::path(prefix).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_manifest(const std::string& prefix, const std::string& subcommand,
                    const RunConfig& cfg, const ThermalEnsemble* ens,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
    std::ofstream out(prefix + ".manifest.txt");
    if (!out) throw IoError("cannot write manifest");
    out << "toolkit_version = " << kVersion << "\n";
    out << "subcommand = " << subcommand << "\n";
    out << "molecule = " << cfg.molecule.name << "\n";
    out << "J_max = " << cfg.molecule.J_max << "\n";
    out << "temperature_K = " << format_double(cfg.temperature) << "\n";
    out << "sigma_rad_fs = " << format_double(cfg.sigma) << "\n";
    out << "omega0_rad_fs = " << format_double(cfg.omega0) << "\n";
    out << "a_tilde_fs2 = " << format_double(cfg.a_tilde) << "\n";
    out << "b_tilde_fs3 = " << format_double(cfg.b_tilde_resolved) << "\n";
    out << "grid_samples = " << cfg.grid_samples << "\n";
    out << "grid_halfwidth_sigmas = " << format_double(cfg.grid_halfwidth_sigmas) << "\n";
    out << "max_omega_rad_fs = " << format_double(cfg.max_omega()) << "\n";
    out << "nyquist_dt_limit_ps = " << format_double(1.0 / (4.0 * cfg.max_omega()) / 1000.0)
        << "\n";
    for (const auto& c : cfg.molecule.components)
        out << "T_rev_ps." << c.label << " = " << format_double(revival_period(c)) << "\n";
    if (ens) {
        out << "boltzmann_tail_fraction = " << format_double(ens->tail_fraction) << "\n";
        for (std::size_t i = 0; i < cfg.molecule.components.size(); ++i)
            out << "component_weight." << cfg.molecule.components[i].label << " = "
                << format_double(ens->component_weights[i]) << "\n";
    }
    if (cfg.has_slm) {
        out << "slm_pixel_count = " << cfg.slm.pixel_count << "\n";
        out << "slm_window_lo_rad_fs = " << format_double(cfg.slm.window_lo) << "\n";
        out << "slm_window_hi_rad_fs = " << format_double(cfg.slm.window_hi) << "\n";
        out << "slm_phase_wrap = " << (cfg.slm.phase_wrap ? "true" : "false") << "\n";
    }
    for (const auto& [k, v] : extra) out << k << " = " << v << "\n";
    out << "config_echo_begin\n" << cfg.raw_text;
    if (!cfg.raw_text.empty() && cfg.raw_text.back() != '\n') out << "\n";
    out << "config_echo_end\n";
}

int run_design(const RunConfig& cfg, const std::string& prefix) {
    if (!cfg.design_n)
        throw ValidationError("design requires design_n in [pulse] (not an explicit b_tilde)");
    DesignTarget target{cfg.design_comp(), *cfg.design_n, cfg.temperature, cfg.sigma};
    const DesignReport rep = design_report(target, cfg.molecule);

    std::ostringstream block;
    block << "component = " << cfg.design_component << "\n"
          << "n = " << format_double(*cfg.design_n) << "\n"
          << "b_analytic_fs3 = " << format_double(rep.result.b_analytic) << "\n"
          << "a_opt_fs2 = " << format_double(rep.result.a_opt) << "\n"
          << "b_opt_fs3 = " << format_double(rep.result.b_opt) << "\n"
          << "residual_opt_rad2 = " << format_double(rep.result.residual_opt) << "\n"
          << "residual_analytic_rad2 = " << format_double(rep.result.residual_analytic) << "\n"
          << "rel_diff = " << format_double(rep.result.rel_diff) << "\n";
    std::cout << block.str();
    std::ofstream out(prefix + ".design.txt");
    if (!out) throw IoError("cannot write design result");
    out << block.str();

    std::vector<std::vector<double>> rows;
    for (const auto& r : rep.rows)
        rows.push_back({static_cast<double>(r.J), r.Omega, r.rho, r.phi_raman, r.phi_cdn,
                        r.mismatch});
    write_csv(prefix + ".design_residuals.csv",
              {"J", "Omega_rad_per_fs", "rho", "phi_raman_rad", "phi_cdn_rad", "mismatch_rad"},
              rows);

    write_manifest(prefix, "design", cfg, nullptr,
                   {{"design_b_analytic_fs3", format_double(rep.result.b_analytic)},
                    {"design_b_opt_fs3", format_double(rep.result.b_opt)},
                    {"design_rel_diff", format_double(rep.result.rel_diff)}});
    return 0;
}

int run_raman(const RunConfig& cfg, const std::string& prefix, bool dump_pulse) {
    const ShapedPulse pulse = cfg.make_configured_pulse();
    const RamanTable table = build_raman_table(pulse, cfg.molecule);

    std::ofstream out(prefix + ".raman.csv");
    if (!out) throw IoError("cannot write raman table");
    out << "component,J,Omega_rad_per_fs,magnitude,phase_rad\n";
    for (const auto& e : table.entries)
        out << e.label << "," << e.J << "," << format_double(e.Omega) << ","
            << format_double(e.magnitude) << "," << format_double(e.phase) << "\n";

    if (dump_pulse) {
        std::vector<std::vector<double>> rows;
        const double h = pulse.grid_step();
        for (int i = 0; i < pulse.samples; ++i)
            rows.push_back({pulse.grid_lo + i * h, pulse.field[i].real(), pulse.field[i].imag()});
        write_csv(prefix + ".pulse.csv", {"omega_rad_fs", "re_field", "im_field"}, rows);
    }

    write_manifest(prefix, "raman", cfg, nullptr,
                   {{"raman_entries", std::to_string(table.entries.size())},
                    {"pulse", pulse.descriptor()}});
    return 0;
}

int run_simulate(const RunConfig& cfg, const std::string& prefix, bool solo_flag) {
    if (!cfg.has_simulate) throw ValidationError("simulate requires a [simulate] section");
    const bool solo = solo_flag || cfg.solo;

    const ThermalEnsemble ens = thermal_populations(cfg.molecule, cfg.temperature);
    const ShapedPulse pulse = cfg.make_configured_pulse();
    const RamanTable table = build_raman_table(pulse, cfg.molecule);
    const CouplingTable couplings(cfg.molecule.J_max);
    const auto t = linspace_time(cfg.t_start_ps, cfg.t_end_ps, cfg.dt_ps);
    const AlignmentTrace tr =
        synthesize_trace(cfg.molecule, ens, table, couplings, t, pulse.descriptor(), solo);

    std::vector<std::string> header{"t_ps", "signal"};
    if (solo)
        for (const auto& lab : tr.components_included) header.push_back("solo_" + lab);
    std::vector<std::vector<double>> rows;
    rows.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::vector<double> row{tr.t[i], tr.signal[i]};
        if (solo)
            for (const auto& s : tr.solo) row.push_back(s[i]);
        rows.push_back(std::move(row));
    }
    write_csv(prefix + ".trace.csv", header, rows);

    write_manifest(prefix, "simulate", cfg, &ens,
                   {{"trace_samples", std::to_string(t.size())},
                    {"pulse", pulse.descriptor()},
                    {"solo", solo ? "true" : "false"}});
    return 0;
}

int run_analyze(const RunConfig& cfg, const std::string& prefix, const std::string& in_path) {
    if (!cfg.has_analyze) throw ValidationError("analyze requires an [analyze] section");
    const std::string path = in_path.empty() ? prefix + ".trace.csv" : in_path;
    const CsvTable csv = read_csv(path);
    AlignmentTrace tr;
    const int tc = csv.column("t_ps");
    const int sc = csv.column("signal");
    for (const auto& row : csv.rows) {
        tr.t.push_back(row[tc]);
        tr.signal.push_back(row[sc]);
    }
    const auto [lo, hi] = cfg.analysis_window();
    const RevivalMetrics mx = analyze_revival(tr, lo, hi);

    std::ostringstream block;
    block << "t_lo_ps = " << format_double(mx.t_lo) << "\n"
          << "t_hi_ps = " << format_double(mx.t_hi) << "\n"
          << "peak_time_ps = " << format_double(mx.peak_time) << "\n"
          << "peak_amplitude = " << format_double(mx.peak_amplitude) << "\n"
          << "zero_crossings = " << mx.zero_crossings << "\n"
          << "cycle_count = " << mx.cycle_count << "\n"
          << "envelope_fwhm_ps = " << format_double(mx.envelope_fwhm) << "\n";
    std::cout << block.str();
    std::ofstream out(prefix + ".metrics.txt");
    if (!out) throw IoError("cannot write metrics");
    out << block.str();

    write_manifest(prefix, "analyze", cfg, nullptr, {{"trace_csv", path}});
    return 0;
}

int run_scan(const RunConfig& cfg, const std::string& prefix) {
    if (!cfg.design_n)
        throw ValidationError("scan requires design_n in [pulse] (b~ factors scale the analytic value)");
    if (!cfg.has_analyze) throw ValidationError("scan requires an [analyze] section");
    const auto& comp = cfg.design_comp();
    const double b0 = analytic_cubic(*cfg.design_n, comp.B, comp.D);
    const auto [lo, hi] = cfg.analysis_window();
    const double dt = cfg.has_simulate ? cfg.dt_ps : 0.4 / (4.0 * cfg.max_omega()) / 1000.0 * 1e3;

    const ThermalEnsemble ens = thermal_populations(cfg.molecule, cfg.temperature);
    const CouplingTable couplings(cfg.molecule.J_max);
    const auto t = linspace_time(lo, hi, dt);

    std::vector<std::vector<double>> rows;
    for (const double f : cfg.scan_b_factors) {
        ShapedPulse pulse =
            make_pulse(cfg.omega0, cfg.sigma, PhaseProfile{cfg.a_tilde, f * b0}, cfg.grid_spec());
        if (cfg.has_slm) pulse = slm_discretize(pulse, cfg.slm);
        const RamanTable table = build_raman_table(pulse, cfg.molecule);
        const AlignmentTrace tr =
            synthesize_trace(cfg.molecule, ens, table, couplings, t, pulse.descriptor(), false);
        const RevivalMetrics mx = analyze_revival(tr, lo, hi);
        rows.push_back({f, f * b0, static_cast<double>(mx.cycle_count),
                        static_cast<double>(mx.zero_crossings), mx.envelope_fwhm,
                        mx.peak_amplitude, mx.peak_time});
    }
    write_csv(prefix + ".scan.csv",
              {"b_factor", "b_tilde_fs3", "cycle_count", "zero_crossings", "envelope_fwhm_ps",
               "peak_amplitude", "peak_time_ps"},
              rows);

    write_manifest(prefix, "scan", cfg, &ens,
                   {{"b_analytic_fs3", format_double(b0)},
                    {"scan_dt_ps", format_double(dt)}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotational revival synthesis and pulse-shaping design toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_prefix;
    std::string in_path;
    bool solo = false;
    bool dump_pulse = false;
    long seed = 0;  // reserved; no stochastic code paths today

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_prefix, "output path prefix (overrides [output] prefix)");
        sub->add_option("--seed", seed, "reserved");
    };

    auto* design = app.add_subcommand("design", "cubic-phase pre-compensation design");
    add_common(design);
    auto* raman = app.add_subcommand("raman", "dump the Raman coherence table");
    add_common(raman);
    raman->add_flag("--dump-pulse", dump_pulse, "also dump the sampled spectral field");
    auto* simulate = app.add_subcommand("simulate", "synthesize an alignment trace");
    add_common(simulate);
    simulate->add_flag("--solo", solo, "include per-component columns");
    auto* analyze = app.add_subcommand("analyze", "revival metrics of a trace CSV");
    add_common(analyze);
    analyze->add_option("--in", in_path, "trace CSV (default: <prefix>.trace.csv)");
    auto* scan = app.add_subcommand("scan", "sweep b~ factors around the analytic design");
    add_common(scan);

    CLI11_PARSE(app, argc, argv);

    try {
        const revival::RunConfig cfg = revival::load_config(config_path);
        const std::string prefix = out_prefix.empty() ? cfg.out_prefix : out_prefix;
        ensure_parent_dir(prefix);
        if (design->parsed()) return run_design(cfg, prefix);
        if (raman->parsed()) return run_raman(cfg, prefix, dump_pulse);
        if (simulate->parsed()) return run_simulate(cfg, prefix, solo);
        if (analyze->parsed()) return run_analyze(cfg, prefix, in_path);
        if (scan->parsed()) return run_scan(cfg, prefix);
        return 1;
    } catch (const revival::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const revival::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const revival::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const revival::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        // Grid/Nyquist/Convergence/Truncation/Window/Assignment
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
