#pragma once

namespace revival {

/// Unit conventions used throughout:
///   spectroscopic constants (B, D, E_vib)  cm^-1
///   angular frequencies                    rad/fs
///   time grids                             ps
///   spectral phase coefficients            a~ in fs^2, b~ in fs^3
struct UnitSystem {
    // Speed of light in cm/fs (exact by definition of the metre).
    double c_cm_per_fs = 2.99792458e-5;
    // cm^-1 -> rad/fs conversion: k_ang = 2*pi*c.
    double k_ang = 2.0 * 3.14159265358979323846 * 2.99792458e-5;
    // Second radiation constant hc/k_B in cm*K (CODATA 2018).
    double hc_over_k = 1.438776877;

    /// Angular frequency (rad/fs) of a wavenumber (cm^-1).
    double to_angular(double wavenumber_cm) const { return k_ang * wavenumber_cm; }
    /// Speed of light in cm/ps, for picosecond-domain phases.
    double c_cm_per_ps() const { return c_cm_per_fs * 1000.0; }
};

inline constexpr double kPi = 3.14159265358979323846;

inline const UnitSystem& units() {
    static const UnitSystem u{};
    return u;
}

}  // namespace revival
