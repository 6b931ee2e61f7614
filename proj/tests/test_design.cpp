#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "revival/design.hpp"

using namespace revival;
using Catch::Approx;

namespace {
constexpr double kSigma120 = 0.013875910185961629;

DesignTarget ch3i_target(double n, double T = 293.0) {
    return {preset_molecule("CH3I").components[0], n, T, kSigma120};
}
}  // namespace

TEST_CASE("analytic_cubic frozen values") {
    // arbitrary-precision references for pi n D_ang / (2 B_ang^4)
    CHECK(analytic_cubic(1.5, 0.25, 2.1e-7) == Approx(18952595.002296325).epsilon(1e-12));
    CHECK(analytic_cubic(2.5, 0.25, 2.1e-7) == Approx(31587658.337160541).epsilon(1e-12));
    CHECK(analytic_cubic(5.5, 0.25, 2.1e-7) == Approx(69492848.341753191).epsilon(1e-12));
    CHECK(analytic_cubic(10.0, 0.25, 2.1e-7) == Approx(126350633.34864217).epsilon(1e-12));
    CHECK(analytic_cubic(32.0, 0.3902, 1.33e-7) == Approx(43148998.713606512).epsilon(1e-12));
}

TEST_CASE("analytic_cubic properties") {
    CHECK(analytic_cubic(0.0, 0.25, 2.1e-7) == 0.0);
    CHECK(analytic_cubic(7.0, 0.25, 2.1e-7) ==
          Approx(2.0 * analytic_cubic(3.5, 0.25, 2.1e-7)).epsilon(1e-14));

    SECTION("within 20% of the experimentally used settings") {
        CHECK(std::abs(analytic_cubic(1.5, 0.25, 2.1e-7) - 2.0e7) / 2.0e7 < 0.2);
        CHECK(std::abs(analytic_cubic(2.5, 0.25, 2.1e-7) - 3.4e7) / 3.4e7 < 0.2);
        CHECK(std::abs(analytic_cubic(5.5, 0.25, 2.1e-7) - 6.8e7) / 6.8e7 < 0.2);
    }

    SECTION("scale covariance: (B, D) -> (sB, sD) rescales by s^-3") {
        const double s = 1.7;
        CHECK(analytic_cubic(4.0, s * 0.25, s * 2.1e-7) ==
              Approx(analytic_cubic(4.0, 0.25, 2.1e-7) / (s * s * s)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(analytic_cubic(1.0, 0.0, 1e-7), ValidationError);
}

TEST_CASE("cdn_target_phase delegates to phi_cdn") {
    const DesignTarget t = ch3i_target(1.5);
    CHECK(cdn_target_phase(t, 10) == Approx(phi_cdn(t.component, 10, 1.5)).epsilon(1e-15));

    DesignTarget co2{preset_molecule("CO2").components[0], 32.0, 403.0, kSigma120};
    CHECK_THROWS_AS(cdn_target_phase(co2, 1), DomainError);  // odd J masked out
}

TEST_CASE("optimize_phase trivial case: no distortion") {
    MoleculeSpec m = preset_molecule("CH3I");
    m.components[0].D = 0.0;
    DesignTarget t{m.components[0], 5.0, 293.0, kSigma120};
    const DesignResult r = optimize_phase(t, m);
    CHECK(r.b_opt == 0.0);
    CHECK(r.b_analytic == 0.0);
    CHECK(r.residual_opt == 0.0);
}

TEST_CASE("optimize_phase reproduces the analytic rule") {
    const MoleculeSpec ch3i = preset_molecule("CH3I");

    SECTION("n = 10 agreement below 1%") {
        const DesignResult r = optimize_phase(ch3i_target(10.0), ch3i);
        CHECK(r.rel_diff < 0.01);
        CHECK(r.residual_opt <= r.residual_analytic + 1e-12);
    }

    SECTION("n = 2.5 optimum stays within 20% of the experimental 3.4e7") {
        const DesignResult r = optimize_phase(ch3i_target(2.5), ch3i);
        CHECK(std::abs(r.b_opt - 3.4e7) / 3.4e7 < 0.2);
        CHECK(r.residual_opt <= r.residual_analytic + 1e-12);
    }

    SECTION("spot checks of the n > 5 agreement claim") {
        for (double n : {6.0, 15.0, 40.0}) {
            const DesignResult r = optimize_phase(ch3i_target(n), ch3i);
            CHECK(r.rel_diff < 0.01);
        }
        const MoleculeSpec co2 = preset_molecule("CO2");
        DesignTarget t{co2.components[0], 20.0, 293.0, kSigma120};
        const DesignResult r = optimize_phase(t, co2);
        CHECK(r.rel_diff < 0.01);
    }
}

TEST_CASE("optimizer insensitive to the starting seed") {
    const MoleculeSpec ch3i = preset_molecule("CH3I");
    const DesignTarget t = ch3i_target(8.0);
    const DesignResult ref = optimize_phase(t, ch3i);

    const auto lad = detail::design_ladder(t, ch3i);
    const double b0 = ref.b_analytic;
    const double a_half = 10.0 * b0 * t.sigma;

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ua(-1.0, 1.0), ub(0.5, 1.5);
    for (int k = 0; k < 10; ++k) {
        NelderMead<2> nm;
        nm.x_tol = 1e-9;
        nm.max_iter = 8000;
        const auto obj = [&](const NelderMead<2>::Point& p) {
            return detail::design_objective(lad, t.sigma, p[0] * a_half, p[1] * b0);
        };
        const auto r = nm.minimize(obj, {ua(rng), ub(rng)}, {0.08, 0.08});
        REQUIRE(r.converged);
        CHECK(std::abs(r.x[1] * b0 - ref.b_opt) / ref.b_opt < 1e-4);
        // the objective is even in a~; compare magnitudes on the box scale
        CHECK(std::abs(std::abs(r.x[0] * a_half) - ref.a_opt) / a_half < 1e-4);
    }
}

TEST_CASE("design_report") {
    const MoleculeSpec ch3i = preset_molecule("CH3I");

    SECTION("zero table when D = 0") {
        MoleculeSpec m = ch3i;
        m.components[0].D = 0.0;
        DesignTarget t{m.components[0], 5.0, 293.0, kSigma120};
        const DesignReport rep = design_report(t, m);
        for (const auto& row : rep.rows) {
            CHECK(row.mismatch == 0.0);
            CHECK(row.phi_cdn == 0.0);
        }
    }

    SECTION("optimum dominates the analytic point; mismatch pinned at n = 5.5") {
        const DesignReport rep = design_report(ch3i_target(5.5), ch3i);
        CHECK(rep.result.residual_opt <= rep.result.residual_analytic + 1e-12);
        for (const auto& row : rep.rows)
            if (row.J >= 20 && row.J <= 40) CHECK(std::abs(row.mismatch) < 0.3);
    }
}

TEST_CASE("nelder-mead minimizer sanity") {
    NelderMead<2> nm;
    const auto rosenbrock = [](const NelderMead<2>::Point& p) {
        const double a = 1.0 - p[0];
        const double b = p[1] - p[0] * p[0];
        return a * a + 100.0 * b * b;
    };
    const auto r = nm.minimize(rosenbrock, {-1.2, 1.0}, {0.5, 0.5});
    CHECK(r.converged);
    CHECK(r.x[0] == Approx(1.0).margin(1e-5));
    CHECK(r.x[1] == Approx(1.0).margin(1e-5));

    NelderMead<2> starved;
    starved.max_iter = 3;
    CHECK_FALSE(starved.minimize(rosenbrock, {-1.2, 1.0}, {0.5, 0.5}).converged);
}

TEST_CASE("convergence error carries the best point") {
    const ConvergenceError e("stalled", 1.5, 2.5, 0.125);
    CHECK(e.best_a == 1.5);
    CHECK(e.best_b == 2.5);
    CHECK(e.best_value == 0.125);
}
