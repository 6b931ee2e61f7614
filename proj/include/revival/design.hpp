#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "revival/errors.hpp"
#include "revival/neldermead.hpp"
#include "revival/raman.hpp"
#include "revival/rotor.hpp"
#include "revival/units.hpp"

namespace revival {

/// Analytic cubic-phase rule b~ = pi n D / (2 B^4) in angular units
/// (B_ang = k_ang B, D_ang = k_ang D), yielding fs^3.
inline double analytic_cubic(double n, double B_cm, double D_cm) {
    if (B_cm <= 0.0) throw ValidationError("analytic_cubic: B must be > 0");
    const double B = units().to_angular(B_cm);
    const double D = units().to_angular(D_cm);
    return kPi * n * D / (2.0 * B * B * B * B);
}

struct DesignTarget {
    RotorComponent component;
    double n = 0.0;            // revival index, may be fractional
    double temperature = 0.0;  // K
    double sigma = 0.0;        // rad/fs

    void validate() const {
        component.validate();
        if (sigma <= 0.0) throw ValidationError("design target: sigma must be > 0");
        if (temperature <= 0.0) throw ValidationError("design target: temperature must be > 0");
    }
};

struct DesignResult {
    double b_analytic = 0.0;         // fs^3
    double a_opt = 0.0;              // fs^2, reported non-negative
    double b_opt = 0.0;              // fs^3
    double residual_opt = 0.0;       // weighted rad^2
    double residual_analytic = 0.0;  // weighted rad^2 at (0, b_analytic)
    double rel_diff = 0.0;           // |b_opt - b_analytic| / |b_analytic|
};

/// phi_CDN(J, n) of the target component; the phase the Raman phase must
/// match at Omega_J.
inline double cdn_target_phase(const DesignTarget& t, int J) {
    if (!t.component.allows(J))
        throw DomainError("cdn_target_phase: J=" + std::to_string(J) +
                          " not allowed by component mask");
    return phi_cdn(t.component, J, t.n);
}

namespace detail {

struct DesignLadder {
    std::vector<double> rho;     // component-normalized Boltzmann weights
    std::vector<double> omega;   // rigid-rotor ladder, rad/fs
    std::vector<double> target;  // phi_CDN(J, n)
    std::vector<int> J;
};

// Boltzmann-weighted ladder for the target component. The fit frequencies
// are the rigid-rotor ones, Omega_J = k_ang B (4J+6) -- the same
// substitution the analytic rule is derived with. A J-independent phase
// offset is immaterial to revival structure, so the objective below
// compares phases up to a fitted constant.
inline DesignLadder design_ladder(const DesignTarget& t, const MoleculeSpec& m) {
    const RotorComponent& c = t.component;
    DesignLadder lad;
    double total = 0.0;
    MoleculeSpec solo;
    solo.name = c.label;
    solo.components = {c};
    solo.J_max = m.J_max;
    const ThermalEnsemble ens = thermal_populations(solo, t.temperature);
    for (int J = c.J_min; J + 2 <= m.J_max; ++J) {
        if (!c.allows(J) || !c.allows(J + 2)) continue;
        const double r = ens.rho(0, J);
        if (r <= 0.0) continue;
        lad.J.push_back(J);
        lad.rho.push_back(r);
        lad.omega.push_back(units().to_angular(c.B * (4.0 * J + 6.0)));
        lad.target.push_back(phi_cdn(c, J, t.n));
        total += r;
    }
    if (lad.J.empty()) throw ValidationError("design ladder is empty");
    for (auto& r : lad.rho) r /= total;
    return lad;
}

inline double design_objective(const DesignLadder& lad, double sigma, double a, double b) {
    double cbar = 0.0;
    for (std::size_t i = 0; i < lad.J.size(); ++i)
        cbar += lad.rho[i] * (raman_phase_closed(a, b, sigma, lad.omega[i]) - lad.target[i]);
    double s = 0.0;
    for (std::size_t i = 0; i < lad.J.size(); ++i) {
        const double r = raman_phase_closed(a, b, sigma, lad.omega[i]) - lad.target[i] - cbar;
        s += lad.rho[i] * r * r;
    }
    return s;
}

}  // namespace detail

/// Boltzmann-weighted least squares min over (a~, b~) of
///   sum_J rho_J [Phi_Raman(Omega_J) - phi_CDN(J, n)]^2
/// (up to a fitted J-independent constant). Coarse grid around the
/// analytic seed (+-50% in b~, a~ in +-10 b~ sigma), refined by
/// Nelder-Mead to 1e-6 relative parameter tolerance.
inline DesignResult optimize_phase(const DesignTarget& t, const MoleculeSpec& m) {
    t.validate();
    DesignResult res;
    res.b_analytic = analytic_cubic(t.n, t.component.B, t.component.D);
    if (res.b_analytic == 0.0) {
        // Nothing to compensate; phase objective is exactly zero at b~=0.
        return res;
    }

    const auto lad = detail::design_ladder(t, m);
    const double b0 = res.b_analytic;
    const double a_half = 10.0 * std::abs(b0) * t.sigma;
    const auto obj = [&](double a, double b) { return detail::design_objective(lad, t.sigma, a, b); };

    res.residual_analytic = obj(0.0, b0);

    double best_a = 0.0, best_b = b0, best_v = res.residual_analytic;
    const int nb = 21, na = 21;
    for (int ib = 0; ib < nb; ++ib) {
        const double b = b0 * (0.5 + ib / (nb - 1.0));
        for (int ia = 0; ia < na; ++ia) {
            const double a = -a_half + 2.0 * a_half * ia / (na - 1.0);
            const double v = obj(a, b);
            if (v < best_v) { best_v = v; best_a = a; best_b = b; }
        }
    }

    NelderMead<2> nm;
    nm.x_tol = 1e-8;
    nm.max_iter = 4000;
    const auto scaled = [&](const NelderMead<2>::Point& p) {
        return obj(p[0] * a_half, p[1] * std::abs(b0));
    };
    const auto r = nm.minimize(scaled, {a_half > 0.0 ? best_a / a_half : 0.0, best_b / std::abs(b0)},
                               {0.05, 0.05});
    if (!r.converged)
        throw ConvergenceError("phase optimizer did not reach tolerance",
                               r.x[0] * a_half, r.x[1] * std::abs(b0), r.value);

    res.a_opt = std::abs(r.x[0] * a_half);  // objective is even in a~
    res.b_opt = r.x[1] * std::abs(b0);
    res.residual_opt = r.value;
    res.rel_diff = std::abs(res.b_opt - res.b_analytic) / std::abs(res.b_analytic);
    return res;
}

struct DesignReportRow {
    int J = 0;
    double Omega = 0.0;      // rad/fs (rigid ladder)
    double rho = 0.0;
    double phi_raman = 0.0;  // at the optimum, constant offset removed
    double phi_cdn = 0.0;
    double mismatch = 0.0;
};

struct DesignReport {
    DesignResult result;
    std::vector<DesignReportRow> rows;
};

/// DesignResult plus the per-J phase mismatch table at the optimum.
inline DesignReport design_report(const DesignTarget& t, const MoleculeSpec& m) {
    DesignReport rep;
    rep.result = optimize_phase(t, m);
    if (rep.result.b_analytic == 0.0 && t.component.D == 0.0) {
        // Residual table is identically zero for a distortion-free rotor.
        for (int J = t.component.J_min; J + 2 <= m.J_max; ++J) {
            if (!t.component.allows(J) || !t.component.allows(J + 2)) continue;
            rep.rows.push_back({J, units().to_angular(t.component.B * (4.0 * J + 6.0)),
                                0.0, 0.0, 0.0, 0.0});
        }
        return rep;
    }
    const auto lad = detail::design_ladder(t, m);
    double cbar = 0.0;
    for (std::size_t i = 0; i < lad.J.size(); ++i)
        cbar += lad.rho[i] *
                (raman_phase_closed(rep.result.a_opt, rep.result.b_opt, t.sigma, lad.omega[i]) -
                 lad.target[i]);
    for (std::size_t i = 0; i < lad.J.size(); ++i) {
        DesignReportRow row;
        row.J = lad.J[i];
        row.Omega = lad.omega[i];
        row.rho = lad.rho[i];
        row.phi_raman =
            raman_phase_closed(rep.result.a_opt, rep.result.b_opt, t.sigma, lad.omega[i]) - cbar;
        row.phi_cdn = lad.target[i];
        row.mismatch = row.phi_raman - row.phi_cdn;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace revival
