#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "revival/errors.hpp"
#include "revival/units.hpp"

namespace revival {

using cplx = std::complex<double>;

/// Spectral phase Phi(w) = a~ (w-w0)^2 + b~ (w-w0)^3, coefficients in
/// fs^2 and fs^3.
struct PhaseProfile {
    double a_tilde = 0.0;
    double b_tilde = 0.0;

    double operator()(double x) const { return (a_tilde + b_tilde * x) * x * x; }
    double gradient(double x) const { return 2.0 * a_tilde * x + 3.0 * b_tilde * x * x; }
};

struct SlmConfig {
    int pixel_count = 640;
    double window_lo = 0.0;  // rad/fs, absolute
    double window_hi = 0.0;
    bool phase_wrap = true;

    void validate() const {
        if (pixel_count < 2) throw ValidationError("slm: pixel_count must be >= 2");
        if (!(window_lo < window_hi)) throw ValidationError("slm: window_lo must be < window_hi");
    }
    double pixel_width() const { return (window_hi - window_lo) / pixel_count; }
};

/// Reduce a phase into [0, 2*pi). Exact-subtraction loop so that phases
/// differing by exact floating multiples of 2*pi reduce to identical bits.
inline double wrap_phase(double x) {
    constexpr double two_pi = 2.0 * kPi;
    while (x >= two_pi) x -= two_pi;
    while (x < 0.0) x += two_pi;
    return x;
}

struct GridSpec {
    int samples = 1 << 14;
    double halfwidth_sigmas = 8.0;
};

/// Sampled complex spectral field with Gaussian envelope
/// |E(w)| = exp[-(w-w0)^2/(2 sigma^2)] and a polynomial (or pixelated)
/// spectral phase. The object keeps its constructor parameters so it can
/// be evaluated exactly between samples.
class ShapedPulse {
public:
    enum class PhaseKind { Polynomial, SlmDiscretized };

    double omega0 = 0.0;  // rad/fs
    double sigma = 0.0;   // rad/fs
    double grid_lo = 0.0;
    double grid_hi = 0.0;
    int samples = 0;
    std::vector<cplx> field;

    PhaseKind kind = PhaseKind::Polynomial;
    PhaseProfile profile;
    SlmConfig slm;  // meaningful only for SlmDiscretized

    double grid_step() const { return (grid_hi - grid_lo) / (samples - 1); }

    double envelope(double omega) const {
        const double x = omega - omega0;
        return std::exp(-x * x / (2.0 * sigma * sigma));
    }

    /// Applied spectral phase at omega (absolute rad/fs argument).
    double phase(double omega) const {
        if (kind == PhaseKind::Polynomial) return profile(omega - omega0);
        if (omega < slm.window_lo || omega >= slm.window_hi) return 0.0;
        const double w = slm.pixel_width();
        int idx = static_cast<int>(std::floor((omega - slm.window_lo) / w));
        if (idx >= slm.pixel_count) idx = slm.pixel_count - 1;
        const double center = slm.window_lo + (idx + 0.5) * w;
        const double v = profile(center - omega0);
        return slm.phase_wrap ? wrap_phase(v) : v;
    }

    /// Exact field value at omega; matches the stored samples on the grid.
    cplx eval(double omega) const {
        return std::polar(envelope(omega), phase(omega));
    }

    /// Upper bound on |d(phase)/d(omega)| over the grid, used to set
    /// quadrature densities. Piecewise-constant phases report 0 (their
    /// jumps are exposed via phase_breakpoints()).
    double max_phase_gradient() const {
        if (kind == PhaseKind::SlmDiscretized) return 0.0;
        const double xa = grid_lo - omega0, xb = grid_hi - omega0;
        double g = std::max(std::abs(profile.gradient(xa)), std::abs(profile.gradient(xb)));
        if (profile.b_tilde != 0.0) {
            const double xv = -profile.a_tilde / (3.0 * profile.b_tilde);
            if (xv > xa && xv < xb) g = std::max(g, std::abs(profile.gradient(xv)));
        }
        return g;
    }

    /// Phase discontinuity locations (absolute rad/fs), ascending.
    std::vector<double> phase_breakpoints() const {
        std::vector<double> bp;
        if (kind != PhaseKind::SlmDiscretized) return bp;
        bp.push_back(slm.window_lo);
        const double w = slm.pixel_width();
        for (int i = 1; i < slm.pixel_count; ++i) bp.push_back(slm.window_lo + i * w);
        bp.push_back(slm.window_hi);
        return bp;
    }

    /// Spectral energy integral |E|^2 d(omega), trapezoid over the grid.
    double energy() const {
        double s = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double v = std::norm(field[i]);
            s += (i == 0 || i == samples - 1) ? 0.5 * v : v;
        }
        return s * grid_step();
    }

    std::string descriptor() const {
        std::string d = "omega0=" + std::to_string(omega0) + " sigma=" + std::to_string(sigma) +
                        " a_tilde=" + std::to_string(profile.a_tilde) +
                        " b_tilde=" + std::to_string(profile.b_tilde);
        if (kind == PhaseKind::SlmDiscretized)
            d += " slm_pixels=" + std::to_string(slm.pixel_count);
        return d;
    }
};

/// Spectral envelope width of a transform-limited Gaussian pulse with the
/// given intensity-profile FWHM: sigma_t = tau / (2 sqrt(ln 2)),
/// sigma = 1/sigma_t. (Temporal intensity ~ exp(-t^2 sigma^2).)
inline double sigma_from_intensity_fwhm(double duration_fwhm_fs) {
    if (duration_fwhm_fs <= 0.0) throw ValidationError("pulse duration must be > 0");
    return 2.0 * std::sqrt(std::log(2.0)) / duration_fwhm_fs;
}

/// Sample the shaped field on a uniform grid around omega0.
/// Grid contract: span at least omega0 +- 6 sigma with >= 2^12 samples.
inline ShapedPulse make_pulse(double omega0, double sigma, const PhaseProfile& phase,
                              const GridSpec& grid = {}) {
    if (sigma <= 0.0) throw ValidationError("sigma must be > 0");
    if (grid.halfwidth_sigmas < 6.0)
        throw GridError("grid must span at least omega0 +- 6 sigma");
    if (grid.samples < (1 << 12))
        throw GridError("grid must have at least 2^12 samples");

    ShapedPulse p;
    p.omega0 = omega0;
    p.sigma = sigma;
    p.grid_lo = omega0 - grid.halfwidth_sigmas * sigma;
    p.grid_hi = omega0 + grid.halfwidth_sigmas * sigma;
    p.samples = grid.samples;
    p.profile = phase;
    p.field.resize(grid.samples);
    const double h = p.grid_step();
    for (int i = 0; i < grid.samples; ++i) p.field[i] = p.eval(p.grid_lo + i * h);
    return p;
}

/// Replace the spectral phase by its pixelated (sample-and-hold at pixel
/// centers) approximation; envelope untouched, phase zero outside the SLM
/// window, values wrapped into [0, 2pi) when s.phase_wrap is set.
inline ShapedPulse slm_discretize(const ShapedPulse& p, const SlmConfig& s) {
    s.validate();
    if (p.kind != ShapedPulse::PhaseKind::Polynomial)
        throw ValidationError("slm_discretize expects a polynomial-phase pulse");
    if (p.grid_step() >= s.pixel_width())
        throw GridError("pulse grid must be finer than the SLM pixel width");

    ShapedPulse q = p;
    q.kind = ShapedPulse::PhaseKind::SlmDiscretized;
    q.slm = s;
    const double h = q.grid_step();
    for (int i = 0; i < q.samples; ++i) q.field[i] = q.eval(q.grid_lo + i * h);
    return q;
}

/// Time-domain field E(t) = (dw/2pi) * sum_k E(w_k) exp(-i w_k t), direct
/// evaluation at the requested times (fs). Deterministic; O(samples) per
/// time point.
inline std::vector<cplx> time_profile(const ShapedPulse& p, const std::vector<double>& t_fs) {
    std::vector<cplx> out(t_fs.size());
    const double h = p.grid_step();
    for (std::size_t k = 0; k < t_fs.size(); ++k) {
        const double t = t_fs[k];
        const cplx step = std::polar(1.0, -h * t);
        cplx phasor = std::polar(1.0, -p.grid_lo * t);
        cplx acc = 0.0;
        for (int i = 0; i < p.samples; ++i) {
            acc += p.field[i] * phasor;
            phasor *= step;
        }
        out[k] = acc * (h / (2.0 * kPi));
    }
    return out;
}

}  // namespace revival
