#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace revival {

/// Plain Nelder-Mead downhill simplex in N dimensions. Deterministic for
/// identical inputs; no restarts, no randomness.
template <std::size_t N>
struct NelderMead {
    using Point = std::array<double, N>;

    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    int max_iter = 5000;
    double x_tol = 1e-10;  // relative simplex extent
    double f_tol = 1e-18;  // absolute f spread

    struct Result {
        Point x{};
        double value = 0.0;
        int iterations = 0;
        bool converged = false;
    };

    Result minimize(const std::function<double(const Point&)>& f, const Point& start,
                    const Point& step) const {
        std::array<Point, N + 1> simplex;
        std::array<double, N + 1> fv;
        simplex[0] = start;
        for (std::size_t i = 0; i < N; ++i) {
            simplex[i + 1] = start;
            simplex[i + 1][i] += (step[i] != 0.0 ? step[i] : 1.0);
        }
        for (std::size_t i = 0; i <= N; ++i) fv[i] = f(simplex[i]);

        auto order = [&] {
            std::array<std::size_t, N + 1> idx{};
            for (std::size_t i = 0; i <= N; ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
            std::array<Point, N + 1> s2;
            std::array<double, N + 1> f2;
            for (std::size_t i = 0; i <= N; ++i) { s2[i] = simplex[idx[i]]; f2[i] = fv[idx[i]]; }
            simplex = s2;
            fv = f2;
        };

        Result res;
        for (int it = 0; it < max_iter; ++it) {
            order();
            res.iterations = it;

            double extent = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                double lo = simplex[0][i], hi = simplex[0][i];
                for (std::size_t k = 1; k <= N; ++k) {
                    lo = std::min(lo, simplex[k][i]);
                    hi = std::max(hi, simplex[k][i]);
                }
                extent = std::max(extent, hi - lo);
                scale = std::max(scale, std::max(std::abs(lo), std::abs(hi)));
            }
            if (extent <= x_tol * std::max(scale, 1e-300) &&
                std::abs(fv[N] - fv[0]) <= std::max(f_tol, 1e-12 * std::abs(fv[0]))) {
                res.converged = true;
                break;
            }

            Point centroid{};
            for (std::size_t i = 0; i < N; ++i) {
                for (std::size_t k = 0; k < N; ++k) centroid[i] += simplex[k][i];
                centroid[i] /= N;
            }
            auto blend = [&](double coef) {
                Point p;
                for (std::size_t i = 0; i < N; ++i)
                    p[i] = centroid[i] + coef * (simplex[N][i] - centroid[i]);
                return p;
            };

            const Point xr = blend(-reflection);
            const double fr = f(xr);
            if (fr < fv[0]) {
                const Point xe = blend(-reflection * expansion);
                const double fe = f(xe);
                if (fe < fr) { simplex[N] = xe; fv[N] = fe; }
                else { simplex[N] = xr; fv[N] = fr; }
            } else if (fr < fv[N - 1]) {
                simplex[N] = xr;
                fv[N] = fr;
            } else {
                const bool outside = fr < fv[N];
                const Point xc = blend(outside ? -contraction : contraction);
                const double fc = f(xc);
                if (fc < std::min(fr, fv[N])) {
                    simplex[N] = xc;
                    fv[N] = fc;
                } else {
                    for (std::size_t k = 1; k <= N; ++k) {
                        for (std::size_t i = 0; i < N; ++i)
                            simplex[k][i] = simplex[0][i] + shrink * (simplex[k][i] - simplex[0][i]);
                        fv[k] = f(simplex[k]);
                    }
                }
            }
        }
        order();
        res.x = simplex[0];
        res.value = fv[0];
        return res;
    }
};

}  // namespace revival
