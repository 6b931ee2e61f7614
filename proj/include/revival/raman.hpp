#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "revival/errors.hpp"
#include "revival/pulse.hpp"
#include "revival/rotor.hpp"
#include "revival/units.hpp"

namespace revival {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
namespace detail {
inline constexpr double kGaussX[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr double kGaussW[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <typename F>
cplx gauss16(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s = 0.0;
    for (int i = 0; i < 8; ++i) {
        s += kGaussW[i] * (f(c - h * kGaussX[i]) + f(c + h * kGaussX[i]));
    }
    return s * h;
}
}  // namespace detail

/// Numerical two-photon spectral overlap R(Omega) = integral of
/// E(w) E*(w - Omega) dw over the pulse grid. Piecewise Gauss-Legendre
/// with local panel density tied to the phase-difference gradient,
/// segmented at phase discontinuities, so it stays accurate for strongly
/// chirped and pixelated pulses alike. Independent of raman_gaussian_abc.
inline cplx raman_numeric(const ShapedPulse& p, double Omega) {
    if (Omega < 0.0) throw DomainError("raman_numeric: Omega must be >= 0");
    const double span = p.grid_hi - p.grid_lo;
    if (Omega >= span - 6.0 * p.sigma)
        throw GridError("raman_numeric: Omega exceeds grid coverage (span - 6 sigma)");

    // Both envelope factors live within ~7.5 sigma of their common center
    // w0 + Omega/2; beyond that the product is < 1e-24 of its peak.
    const double center = p.omega0 + 0.5 * Omega;
    const double a = std::max(p.grid_lo + Omega, center - 7.5 * p.sigma);
    const double b = std::min(p.grid_hi, center + 7.5 * p.sigma);
    if (a >= b) return 0.0;
    const auto f = [&](double w) { return p.eval(w) * std::conj(p.eval(w - Omega)); };

    // Segment at phase breakpoints of both factors.
    std::vector<double> cuts{a, b};
    for (double bp : p.phase_breakpoints()) {
        if (bp > a && bp < b) cuts.push_back(bp);
        const double shifted = bp + Omega;
        if (shifted > a && shifted < b) cuts.push_back(shifted);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Local bound on the integrand's phase gradient
    // |Phi'(w)| + |Phi'(w - Omega)| plus an envelope term; a 16-point
    // panel resolves ~2 oscillation periods to well below 1e-10.
    const bool smooth = p.kind == ShapedPulse::PhaseKind::Polynomial;
    const auto grad = [&](double w) {
        double g = 1.0 / p.sigma;
        if (smooth) {
            g += std::abs(p.profile.gradient(w - p.omega0)) +
                 std::abs(p.profile.gradient(w - Omega - p.omega0));
        }
        return g;
    };

    cplx total = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        double x = cuts[s];
        const double hi = cuts[s + 1];
        while (x < hi) {
            double h = std::min(p.sigma / 2.0, 4.0 * kPi / grad(x));
            h = std::min(h, 4.0 * kPi / grad(std::min(x + h, hi)));
            h = std::min(h, hi - x);
            total += detail::gauss16(f, x, x + h);
            x += h;
        }
    }
    return total;
}

/// Closed-form Raman phase of a Gaussian pulse with quadratic+cubic
/// spectral phase:
///   Phi = b~ W^3 (9 b~^2 W^2 s^4 - 12 a~^2 s^4 + 1) / [4 (9 b~^2 W^2 s^4 + 1)]
///         + (1/2) arctan(3 b~ W s^2).
/// Smooth (unwrapped) as a function of its arguments; even in a~.
inline double raman_phase_closed(double a_tilde, double b_tilde, double sigma, double Omega) {
    const double s2 = sigma * sigma;
    const double s4 = s2 * s2;
    const double W = Omega;
    const double num = 9.0 * b_tilde * b_tilde * W * W * s4 - 12.0 * a_tilde * a_tilde * s4 + 1.0;
    const double den = 4.0 * (9.0 * b_tilde * b_tilde * W * W * s4 + 1.0);
    return b_tilde * W * W * W * num / den + 0.5 * std::atan(3.0 * b_tilde * W * s2);
}

/// Analytic overlap from the complex Gaussian integral,
///   R = sqrt(pi/A) exp(B^2/(4A) + C), with
///   A = 1/s^2 - i 3 b~ W            (the paper prints this coefficient
///                                    as "a~", colliding with the chirp
///                                    coefficient; renamed here)
///   B = W/s^2 + i (2 a~ W - 3 b~ W^2)
///   C = i (b~ W^3 - a~ W^2) - W^2/(2 s^2).
/// arg agrees with raman_phase_closed; |R| agrees with |raman_numeric|
/// up to one Omega-independent constant.
inline cplx raman_gaussian_abc(double a_tilde, double b_tilde, double sigma, double Omega) {
    const double s2 = sigma * sigma;
    const cplx A(1.0 / s2, -3.0 * b_tilde * Omega);
    const cplx B(Omega / s2, 2.0 * a_tilde * Omega - 3.0 * b_tilde * Omega * Omega);
    const cplx C(-Omega * Omega / (2.0 * s2),
                 b_tilde * Omega * Omega * Omega - a_tilde * Omega * Omega);
    return std::sqrt(kPi / A) * std::exp(B * B / (4.0 * A) + C);
}

struct RamanEntry {
    int component = 0;
    std::string label;
    int J = 0;
    double Omega = 0.0;      // rad/fs
    cplx R;                  // normalized so that R(0) = 1 per pulse
    double magnitude = 0.0;  // |R|
    double phase = 0.0;      // arg R, principal value
};

struct RamanTable {
    std::vector<RamanEntry> entries;

    const RamanEntry& find(int component, int J) const {
        for (const auto& e : entries)
            if (e.component == component && e.J == J) return e;
        throw DomainError("raman table has no entry for component " +
                          std::to_string(component) + ", J=" + std::to_string(J));
    }
};

/// One entry per (component, J) with J and J+2 allowed and J <= J_max-2,
/// amplitudes normalized to R(0) = 1. Propagates GridError when an
/// Omega_J falls outside the pulse grid coverage.
inline RamanTable build_raman_table(const ShapedPulse& p, const MoleculeSpec& m) {
    m.validate();
    RamanTable table;
    const cplx r0 = raman_numeric(p, 0.0);
    for (std::size_t ci = 0; ci < m.components.size(); ++ci) {
        const auto& c = m.components[ci];
        for (int J = c.J_min; J <= m.J_max - 2; ++J) {
            if (!c.allows(J) || !c.allows(J + 2)) continue;
            RamanEntry e;
            e.component = static_cast<int>(ci);
            e.label = c.label;
            e.J = J;
            e.Omega = raman_frequency(c, J);
            e.R = raman_numeric(p, e.Omega) / r0;
            e.magnitude = std::abs(e.R);
            e.phase = std::arg(e.R);
            table.entries.push_back(e);
        }
    }
    return table;
}

}  // namespace revival
