#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "revival/angular.hpp"
#include "revival/errors.hpp"
#include "revival/hilbert.hpp"
#include "revival/raman.hpp"
#include "revival/rotor.hpp"
#include "revival/units.hpp"

namespace revival {

/// Coherent part of the alignment signal, Delta<cos^2 theta>(t).
/// No DC/permanent-alignment term is included.
struct AlignmentTrace {
    std::vector<double> t;       // ps
    std::vector<double> signal;  // total coherent signal
    std::vector<std::string> components_included;
    std::vector<std::vector<double>> solo;  // per-component traces, same order
    std::string pulse_descriptor;

    double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
};

struct RevivalMetrics {
    double t_lo = 0.0, t_hi = 0.0;
    double peak_time = 0.0;
    double peak_amplitude = 0.0;
    int zero_crossings = 0;
    double envelope_fwhm = 0.0;  // ps; clamped to the window edges when the
                                 // envelope stays above half-maximum
    int cycle_count = 0;
};

/// (n*T_rev - half_width, n*T_rev + half_width) in ps.
inline std::pair<double, double> revival_window(const RotorComponent& c, double n,
                                                double half_width) {
    if (half_width <= 0.0) throw ValidationError("revival_window: half_width must be > 0");
    const double center = n * revival_period(c);
    return {center - half_width, center + half_width};
}

/// Weak-field coherent signal
///   signal(t) = sum_comp sum_J  2 rho(comp,J)/(2J+1) * sum_m <J,m|cos^2|J+2,m>^2
///               * |R(Omega_J)| cos(Omega_J t + arg R(Omega_J))
/// with exact exponent Omega_J * t via the unit system. The sign
/// convention pairs a positive cubic spectral phase with the phase lead
/// needed to cancel positive phi_CDN at positive n; it is fixed
/// operationally by the revival-compression tests.
inline AlignmentTrace synthesize_trace(const MoleculeSpec& m, const ThermalEnsemble& ens,
                                       const RamanTable& table, const CouplingTable& couplings,
                                       const std::vector<double>& t_grid_ps,
                                       const std::string& pulse_descriptor = "",
                                       bool keep_solo = true) {
    m.validate();
    if (t_grid_ps.size() < 2) throw ValidationError("t grid needs at least 2 samples");
    if (couplings.J_max() < m.J_max)
        throw ValidationError("coupling table truncated below molecule J_max");

    double omega_max = 0.0;
    for (const auto& e : table.entries) omega_max = std::max(omega_max, e.Omega);
    const double dt_fs = (t_grid_ps[1] - t_grid_ps[0]) * 1000.0;
    if (omega_max > 0.0 && dt_fs >= 1.0 / (4.0 * omega_max))
        throw NyquistError("t grid spacing " + std::to_string(dt_fs) +
                           " fs violates dt < 1/(4 max Omega) = " +
                           std::to_string(1.0 / (4.0 * omega_max)) + " fs");

    // Every populated (comp, J) with an allowed J+2 partner must be in the table.
    for (const auto& [key, r] : ens.weights) {
        const auto& c = m.components[key.first];
        if (r > 0.0 && key.second + 2 <= m.J_max && c.allows(key.second + 2)) {
            table.find(key.first, key.second);
        }
    }

    AlignmentTrace tr;
    tr.t = t_grid_ps;
    tr.pulse_descriptor = pulse_descriptor;
    tr.signal.assign(t_grid_ps.size(), 0.0);
    for (const auto& c : m.components) tr.components_included.push_back(c.label);
    if (keep_solo)
        tr.solo.assign(m.components.size(), std::vector<double>(t_grid_ps.size(), 0.0));

    for (const auto& e : table.entries) {
        const double rho = ens.rho(e.component, e.J);
        if (rho <= 0.0) continue;
        const double amp =
            2.0 * rho / (2.0 * e.J + 1.0) * couplings.sum_offdiag_sq(e.J) * e.magnitude;
        for (std::size_t k = 0; k < t_grid_ps.size(); ++k) {
            const double v = amp * std::cos(e.Omega * t_grid_ps[k] * 1000.0 + e.phase);
            tr.signal[k] += v;
            if (keep_solo) tr.solo[e.component][k] += v;
        }
    }
    return tr;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> window_indices(const AlignmentTrace& tr,
                                                          double t_lo, double t_hi) {
    if (t_lo >= t_hi) throw WindowError("empty analysis window");
    if (t_lo < tr.t.front() - 1e-9 || t_hi > tr.t.back() + 1e-9)
        throw WindowError("analysis window outside trace span");
    std::size_t i0 = 0;
    while (i0 < tr.t.size() && tr.t[i0] < t_lo) ++i0;
    std::size_t i1 = tr.t.size();
    while (i1 > i0 && tr.t[i1 - 1] > t_hi) --i1;
    if (i1 - i0 < 50) throw WindowError("analysis window holds fewer than 50 samples");
    return {i0, i1};
}

// Envelope FWHM via half-maximum crossings around the envelope peak,
// linearly interpolated; window edge used where no crossing exists.
inline double envelope_fwhm(const std::vector<double>& t, const std::vector<double>& env) {
    std::size_t ipk = 0;
    for (std::size_t i = 1; i < env.size(); ++i)
        if (env[i] > env[ipk]) ipk = i;
    const double half = env[ipk] / 2.0;
    double tl = t.front(), tr = t.back();
    for (std::size_t i = ipk; i > 0; --i) {
        if (env[i - 1] < half && env[i] >= half) {
            tl = t[i - 1] + (half - env[i - 1]) * (t[i] - t[i - 1]) / (env[i] - env[i - 1]);
            break;
        }
    }
    for (std::size_t i = ipk; i + 1 < env.size(); ++i) {
        if (env[i + 1] < half && env[i] >= half) {
            tr = t[i] + (env[i] - half) * (t[i + 1] - t[i]) / (env[i] - env[i + 1]);
            break;
        }
    }
    return tr - tl;
}

}  // namespace detail

/// Peak, zero crossings (of the mean-subtracted signal) and envelope FWHM
/// from the discrete analytic-signal (Hilbert) envelope -- the documented
/// envelope choice of this implementation. Ties in the peak search go to
/// the earliest maximal sample.
inline RevivalMetrics analyze_revival(const AlignmentTrace& tr, double t_lo, double t_hi) {
    const auto [i0, i1] = detail::window_indices(tr, t_lo, t_hi);
    std::vector<double> t(tr.t.begin() + i0, tr.t.begin() + i1);
    std::vector<double> x(tr.signal.begin() + i0, tr.signal.begin() + i1);

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (double& v : x) v -= mean;

    RevivalMetrics mx;
    mx.t_lo = t_lo;
    mx.t_hi = t_hi;

    std::size_t ipk = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (std::abs(x[i]) > std::abs(x[ipk])) ipk = i;
    mx.peak_time = t[ipk];
    mx.peak_amplitude = std::abs(x[ipk]);

    for (std::size_t i = 1; i < x.size(); ++i)
        if ((x[i - 1] < 0.0 && x[i] >= 0.0) || (x[i - 1] >= 0.0 && x[i] < 0.0))
            ++mx.zero_crossings;
    mx.cycle_count = static_cast<int>(std::lround(mx.zero_crossings / 2.0));

    mx.envelope_fwhm = detail::envelope_fwhm(t, hilbert_envelope(x));
    return mx;
}

inline RevivalMetrics analyze_revival(const AlignmentTrace& tr,
                                      const std::pair<double, double>& window) {
    return analyze_revival(tr, window.first, window.second);
}

/// Solo-trace peak time per component inside the window and all pairwise
/// differences Delta_t(label_i, label_j) = t_i - t_j, components in trace
/// order. A component whose solo peak stays below 3x its in-window RMS is
/// reported via AssignmentError.
inline std::map<std::pair<std::string, std::string>, double> component_peak_separation(
    const AlignmentTrace& tr, const std::vector<std::string>& labels, double t_lo, double t_hi) {
    if (tr.solo.size() != tr.components_included.size())
        throw ValidationError("trace lacks per-component bookkeeping (synthesize with solo)");
    const auto [i0, i1] = detail::window_indices(tr, t_lo, t_hi);

    std::vector<double> peak_t(labels.size(), 0.0);
    for (std::size_t li = 0; li < labels.size(); ++li) {
        std::size_t ci = 0;
        for (; ci < tr.components_included.size(); ++ci)
            if (tr.components_included[ci] == labels[li]) break;
        if (ci == tr.components_included.size())
            throw ValidationError("unknown component label '" + labels[li] + "'");
        const auto& solo = tr.solo[ci];

        double mean = 0.0;
        for (std::size_t i = i0; i < i1; ++i) mean += solo[i];
        mean /= static_cast<double>(i1 - i0);

        double rms = 0.0, best = 0.0;
        std::size_t ipk = i0;
        for (std::size_t i = i0; i < i1; ++i) {
            const double v = solo[i] - mean;
            rms += v * v;
            if (std::abs(v) > best) { best = std::abs(v); ipk = i; }
        }
        rms = std::sqrt(rms / static_cast<double>(i1 - i0));
        if (best < 3.0 * rms)
            throw AssignmentError("component '" + labels[li] +
                                  "' has no peak above 3x RMS in the window");
        peak_t[li] = tr.t[ipk];
    }

    std::map<std::pair<std::string, std::string>, double> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            out[{labels[i], labels[j]}] = peak_t[i] - peak_t[j];
    return out;
}

/// Uniform time grid helper (ps).
inline std::vector<double> linspace_time(double t_lo, double t_hi, double dt) {
    if (dt <= 0.0 || t_hi <= t_lo) throw ValidationError("bad time grid parameters");
    std::vector<double> t;
    const auto n = static_cast<std::size_t>(std::floor((t_hi - t_lo) / dt)) + 1;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.push_back(t_lo + static_cast<double>(i) * dt);
    return t;
}

}  // namespace revival
