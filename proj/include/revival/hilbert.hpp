#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "revival/units.hpp"

namespace revival {

namespace detail {

// In-place iterative radix-2 FFT (size must be a power of two).
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

}  // namespace detail

/// Magnitude of the analytic signal (discrete Hilbert-transform envelope)
/// of a real sequence, zero-padded to the next power of two of at least
/// twice the length to suppress circular wrap.
inline std::vector<double> hilbert_envelope(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::size_t m = 1;
    while (m < 2 * n) m <<= 1;
    std::vector<std::complex<double>> a(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i] = x[i];
    detail::fft_pow2(a, false);
    // Analytic-signal filter: keep DC and Nyquist, double positive bins.
    for (std::size_t k = 1; k < m / 2; ++k) a[k] *= 2.0;
    for (std::size_t k = m / 2 + 1; k < m; ++k) a[k] = 0.0;
    detail::fft_pow2(a, true);
    std::vector<double> env(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(a[i]);
    return env;
}

}  // namespace revival
