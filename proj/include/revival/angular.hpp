#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "revival/errors.hpp"

namespace revival {

/// cos^2(theta) matrix elements in the |J, m> basis. Closed forms below
/// are gated by the quadrature oracle (cos2_oracle) in the test suite;
/// all elements are taken positive (real phase convention).

/// <J,m|cos^2||J,m> = 1/3 + (2/3)*[J(J+1) - 3m^2] / [(2J+3)(2J-1)].
inline double cos2_diag(int J, int m) {
    if (std::abs(m) > J) throw DomainError("cos2_diag: |m| > J");
    const double Jd = J, md = m;
    return 1.0 / 3.0 +
           (2.0 / 3.0) * (Jd * (Jd + 1.0) - 3.0 * md * md) /
               ((2.0 * Jd + 3.0) * (2.0 * Jd - 1.0));
}

/// <J,m|cos^2|J+2,m> =
///   sqrt[(J+1-m)(J+2-m)(J+1+m)(J+2+m)] / [(2J+3) sqrt((2J+1)(2J+5))].
inline double cos2_offdiag(int J, int m) {
    if (std::abs(m) > J) throw DomainError("cos2_offdiag: |m| > J");
    const double Jd = J, md = m;
    const double num = (Jd + 1.0 - md) * (Jd + 2.0 - md) * (Jd + 1.0 + md) * (Jd + 2.0 + md);
    return std::sqrt(num) / ((2.0 * Jd + 3.0) * std::sqrt((2.0 * Jd + 1.0) * (2.0 * Jd + 5.0)));
}

namespace detail {

// Orthonormal associated Legendre function Pbar_l^m(x) on [-1,1]
// (integral of Pbar^2 dx = 1), positive phase convention. Stable
// three-term recursion in l at fixed m.
inline double legendre_norm(int l, int m, double x) {
    m = std::abs(m);
    if (l < m) return 0.0;
    // Pbar_m^m = sqrt((2m+1)/2) * prod_k sqrt((2k-1)/(2k)) * (1-x^2)^(m/2)
    double pmm = std::sqrt((2.0 * m + 1.0) / 2.0);
    const double s2 = (1.0 - x) * (1.0 + x);
    for (int k = 1; k <= m; ++k)
        pmm *= std::sqrt((2.0 * k - 1.0) / (2.0 * k) * s2);
    if (l == m) return pmm;

    auto alpha = [m](int ll) {
        return std::sqrt(((ll - m + 1.0) * (ll + m + 1.0)) /
                         ((2.0 * ll + 1.0) * (2.0 * ll + 3.0)));
    };
    double p_prev = 0.0, p = pmm;
    for (int ll = m; ll < l; ++ll) {
        const double p_next = (x * p - (ll > m ? alpha(ll - 1) : 0.0) * p_prev) / alpha(ll);
        p_prev = p;
        p = p_next;
    }
    return p;
}

// Adaptive Simpson on [a,b] to absolute tolerance.
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw ConvergenceError("adaptive quadrature exceeded depth budget");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int panels) {
    double sum = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), fm = f(xm), f1 = f(x1);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        sum += simpson_rec(f, x0, x1, f0, fm, f1, whole, tol / panels, 48);
    }
    return sum;
}

}  // namespace detail

/// Quadrature oracle for the closed forms: computes
///   integral_0^pi Pbar_J^m(cos t) cos^2 t Pbar_Jp^m(cos t) sin t dt
/// (equivalently in x = cos t over [-1,1]) with orthonormal associated
/// Legendre functions, adaptively to ~1e-12 absolute. Independent of the
/// closed forms above by construction.
inline double cos2_oracle(int J, int m, int Jp) {
    if (std::abs(m) > std::min(J, Jp)) throw DomainError("cos2_oracle: |m| > min(J, J')");
    const auto f = [=](double x) {
        return detail::legendre_norm(J, m, x) * x * x * detail::legendre_norm(Jp, m, x);
    };
    const int panels = std::max(32, 2 * std::max(J, Jp) + 8);
    return detail::adaptive_simpson(f, -1.0, 1.0, 1e-13, panels);
}

/// General overlap without the cos^2 weight, used for selection-rule checks.
inline double legendre_overlap_oracle(int J, int m, int Jp) {
    const auto f = [=](double x) {
        return detail::legendre_norm(J, m, x) * detail::legendre_norm(Jp, m, x);
    };
    const int panels = std::max(32, 2 * std::max(J, Jp) + 8);
    return detail::adaptive_simpson(f, -1.0, 1.0, 1e-13, panels);
}

struct CouplingElement {
    int J = 0;
    int m = 0;
    double diag = 0.0;
    double offdiag = 0.0;
};

/// Precomputed coupling table for J <= J_max; immutable once built.
class CouplingTable {
public:
    explicit CouplingTable(int J_max) : J_max_(J_max), sum_offdiag_sq_(J_max + 1, 0.0) {
        elements_.reserve(static_cast<std::size_t>(J_max + 1) * (J_max + 2) / 2);
        for (int J = 0; J <= J_max; ++J) {
            for (int m = 0; m <= J; ++m) {
                CouplingElement e{J, m, cos2_diag(J, m), cos2_offdiag(J, m)};
                elements_.push_back(e);
                const double mult = (m == 0) ? 1.0 : 2.0;  // +-m symmetry
                sum_offdiag_sq_[J] += mult * e.offdiag * e.offdiag;
            }
        }
    }

    int J_max() const { return J_max_; }

    /// Sum over m of <J,m|cos^2|J+2,m>^2 (the per-J coherence weight).
    double sum_offdiag_sq(int J) const { return sum_offdiag_sq_.at(J); }

    const std::vector<CouplingElement>& elements() const { return elements_; }

private:
    int J_max_;
    std::vector<CouplingElement> elements_;
    std::vector<double> sum_offdiag_sq_;
};

}  // namespace revival
