#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "revival/errors.hpp"
#include "revival/units.hpp"

namespace revival {

enum class JParity { All, Even, Odd };

inline std::string to_string(JParity p) {
    switch (p) {
        case JParity::Even: return "even";
        case JParity::Odd: return "odd";
        default: return "all";
    }
}

inline JParity parity_from_string(const std::string& s) {
    if (s == "all") return JParity::All;
    if (s == "even") return JParity::Even;
    if (s == "odd") return JParity::Odd;
    throw ValidationError("unknown J parity '" + s + "' (expected all/even/odd)");
}

/// One rotational manifold: effective linear rotor with centrifugal
/// distortion and an optional vibrational term offset.
struct RotorComponent {
    std::string label;
    double B = 0.0;      // rotational constant, cm^-1
    double D = 0.0;      // centrifugal constant, cm^-1
    double E_vib = 0.0;  // vibrational term offset, cm^-1
    double g_vib = 1.0;  // vibrational degeneracy weight
    int J_min = 0;
    JParity J_parity = JParity::All;

    bool allows(int J) const {
        if (J < J_min) return false;
        if (J_parity == JParity::Even && (J % 2 != 0)) return false;
        if (J_parity == JParity::Odd && (J % 2 == 0)) return false;
        return true;
    }

    void validate() const {
        if (B <= 0.0) throw ValidationError("component '" + label + "': B must be > 0");
        if (D < 0.0) throw ValidationError("component '" + label + "': D must be >= 0");
        if (g_vib <= 0.0) throw ValidationError("component '" + label + "': g_vib must be > 0");
        if (J_min < 0) throw ValidationError("component '" + label + "': J_min must be >= 0");
    }

    /// True when D/B exceeds 1e-3; such a rotor is outside the
    /// centrifugal-perturbation regime this model assumes.
    bool distortion_suspect() const { return B > 0.0 && D / B > 1e-3; }
};

struct MoleculeSpec {
    std::string name;
    std::vector<RotorComponent> components;
    int J_max = 0;  // truncation index, inclusive

    void validate() const {
        if (components.empty())
            throw ValidationError("molecule '" + name + "' has no components");
        for (const auto& c : components) {
            c.validate();
            if (J_max < c.J_min + 4)
                throw ValidationError("molecule '" + name + "': J_max must be >= J_min + 4 for component '" + c.label + "'");
        }
    }

    const RotorComponent& component(const std::string& label) const {
        for (const auto& c : components)
            if (c.label == label) return c;
        throw ValidationError("molecule '" + name + "' has no component '" + label + "'");
    }
};

/// E_J = B*J(J+1) - D*J^2(J+1)^2 + E_vib, in cm^-1.
inline double rot_energy(const RotorComponent& c, int J) {
    const double x = static_cast<double>(J) * (J + 1.0);
    return c.B * x - c.D * x * x + c.E_vib;
}

/// Raman frequency of the (J, J+2) coherence, rad/fs.
/// Omega_J = k_ang * [E(J+2) - E(J)]; the vibrational offset cancels.
/// Rigid limit: Omega_J = k_ang*B*(4J+6) = 4*pi*c*B*(2J+3).
inline double raman_frequency(const RotorComponent& c, int J) {
    return units().to_angular(rot_energy(c, J + 2) - rot_energy(c, J));
}

/// Rigid-rotor revival period T_rev = (2Bc)^-1, in ps. Uses only B.
inline double revival_period(const RotorComponent& c) {
    return 1.0 / (2.0 * c.B * units().c_cm_per_ps());
}

/// Rigid rotor phase phi_rigid = 4*pi*B*c*(2J+3)*t, t in ps.
inline double phi_rigid(const RotorComponent& c, int J, double t_ps) {
    return 4.0 * kPi * c.B * units().c_cm_per_ps() * (2.0 * J + 3.0) * t_ps;
}

/// Residual centrifugal phase at revival index n (n may be fractional):
/// phi_CDN = 4*pi*n*(D/B)*(2J^3 + 9J^2 + 15J + 9).
inline double phi_cdn(const RotorComponent& c, int J, double n) {
    const double Jd = J;
    const double poly = 2.0 * Jd * Jd * Jd + 9.0 * Jd * Jd + 15.0 * Jd + 9.0;
    return 4.0 * kPi * n * (c.D / c.B) * poly;
}

/// Normalized per-(component, J) thermal populations.
struct ThermalEnsemble {
    double temperature = 0.0;
    // (component index, J) -> population; sums to 1 over all retained states.
    std::map<std::pair<int, int>, double> weights;
    std::vector<double> component_weights;  // per-component sums
    double tail_fraction = 0.0;             // discarded Boltzmann tail estimate
    int J_max = 0;

    double rho(int comp, int J) const {
        auto it = weights.find({comp, J});
        return it == weights.end() ? 0.0 : it->second;
    }
};

namespace detail {

// Unnormalized Boltzmann weight with energies shifted by e_shift for
// stability at low temperatures.
inline double boltzmann_term(const RotorComponent& c, int J, double T,
                             double e_shift) {
    const double e = rot_energy(c, J) - e_shift;
    return c.g_vib * (2.0 * J + 1.0) * std::exp(-e * units().hc_over_k / T);
}

}  // namespace detail

/// Boltzmann populations over all retained (component, J) states,
/// parity/J_min masked and normalized to 1. Throws TruncationError when
/// the discarded tail beyond J_max exceeds 1e-6 of the total weight.
inline ThermalEnsemble thermal_populations(const MoleculeSpec& m, double T) {
    if (T <= 0.0) throw ValidationError("temperature must be > 0 K");
    m.validate();

    // Common energy shift keeps exponents representable as T -> 0+.
    double e_shift = 0.0;
    bool first = true;
    for (const auto& c : m.components)
        for (int J = c.J_min; J <= m.J_max; ++J)
            if (c.allows(J)) {
                const double e = rot_energy(c, J);
                if (first || e < e_shift) { e_shift = e; first = false; }
            }

    ThermalEnsemble ens;
    ens.temperature = T;
    ens.J_max = m.J_max;
    ens.component_weights.assign(m.components.size(), 0.0);

    double total = 0.0;
    for (std::size_t ci = 0; ci < m.components.size(); ++ci) {
        const auto& c = m.components[ci];
        for (int J = c.J_min; J <= m.J_max; ++J) {
            if (!c.allows(J)) continue;
            const double w = detail::boltzmann_term(c, J, T, e_shift);
            ens.weights[{static_cast<int>(ci), J}] = w;
            ens.component_weights[ci] += w;
            total += w;
        }
    }
    if (total <= 0.0) throw ValidationError("no thermally populated states retained");

    // Estimate the discarded tail by extending the ladder until terms die.
    double tail = 0.0;
    for (const auto& c : m.components) {
        for (int J = m.J_max + 1; J <= m.J_max + 100000; ++J) {
            if (!c.allows(J)) continue;
            const double w = detail::boltzmann_term(c, J, T, e_shift);
            tail += w;
            if (w < 1e-18 * total) break;
        }
    }
    ens.tail_fraction = tail / (total + tail);
    if (ens.tail_fraction > 1e-6)
        throw TruncationError("Boltzmann tail beyond J_max=" + std::to_string(m.J_max) +
                              " holds " + std::to_string(ens.tail_fraction) +
                              " of the total weight (> 1e-6); increase J_max");

    for (auto& [key, w] : ens.weights) w /= total;
    for (auto& w : ens.component_weights) w /= total;
    return ens;
}

/// Smallest J_max (>= 40, and >= J_min+4 of every component) satisfying
/// the 1e-6 Boltzmann-tail criterion at temperature T.
inline int choose_j_max(const MoleculeSpec& m, double T) {
    int floor_j = 40;
    for (const auto& c : m.components) floor_j = std::max(floor_j, c.J_min + 4);
    MoleculeSpec probe = m;
    for (int jm = floor_j; jm <= 100000; ++jm) {
        probe.J_max = jm;
        try {
            thermal_populations(probe, T);
            return jm;
        } catch (const TruncationError&) {
            continue;
        }
    }
    throw TruncationError("no J_max <= 100000 satisfies the tail criterion");
}

/// Built-in molecule presets carrying the constants used throughout the
/// validation data sets. CH3I is treated as an effective linear rotor
/// (K structure ignored). The CO2 010 l-doublet components alternate
/// parity chains (spin-0 oxygen leaves one level per J).
inline MoleculeSpec preset_molecule(const std::string& name) {
    MoleculeSpec m;
    if (name == "CH3I") {
        m.name = "CH3I";
        m.components = {{"000", 0.25, 2.1e-7, 0.0, 1.0, 0, JParity::All}};
        m.J_max = 80;
        return m;
    }
    if (name == "CO2") {
        m.name = "CO2";
        m.components = {
            {"000", 0.3902, 1.33e-7, 0.0, 1.0, 0, JParity::Even},
            {"010+", 0.3912, 1.33e-7, 667.0, 1.0, 1, JParity::Odd},
            {"010-", 0.3905, 1.33e-7, 667.0, 1.0, 2, JParity::Even},
        };
        m.J_max = 90;
        return m;
    }
    throw ValidationError("unknown molecule preset '" + name + "' (available: CH3I, CO2)");
}

}  // namespace revival
