#include "doctest.h"

#include <cmath>
#include <vector>

#include "ghs/analysis.hpp"
#include "ghs/characteristics.hpp"
#include "ghs/evolution.hpp"
#include "helpers.hpp"

using namespace ghs;
using ghs::test::pi;

namespace {

// Exact samples approaching T0 geometrically, stopping once zeta <= floor.
void exact_tail(const RiccatiSolution& sol, double floor, std::vector<double>& t, std::vector<double>& z) {
    const double T0 = sol.blowup_time();
    for (double gap = T0; ; gap *= 0.9) {
        const double tt = T0 - gap;
        const double v = sol(tt);
        t.push_back(tt);
        z.push_back(v);
        if (v <= floor) break;
    }
}

}  // namespace

TEST_CASE("Riccati closed forms") {
    SUBCASE("a = 0, zeta0 = -2 pi blows up at 1/pi") {
        const RiccatiSolution s(-2 * pi, 0.0);
        CHECK(s.form() == RiccatiForm::ZeroForcing);
        CHECK(s.blowup_time() == doctest::Approx(1.0 / pi).epsilon(1e-15));
        CHECK(s(0.0) == doctest::Approx(-2 * pi));
        CHECK(s(0.5 / pi) == doctest::Approx(-4 * pi).epsilon(1e-14));
    }
    SUBCASE("a = -1/2, zeta0 = -1 blows up at pi/2") {
        const RiccatiSolution s(-1.0, -0.5);
        CHECK(s.form() == RiccatiForm::NegHalfForcing);
        CHECK(s.blowup_time() == doctest::Approx(pi / 2).epsilon(1e-15));
        CHECK(riccati_exact(-1.0, -0.5, 0.5) == doctest::Approx(std::tan(-pi / 4 - 0.25)).epsilon(1e-14));
    }
    SUBCASE("zeta0 = 0, a = 0 stays at rest") {
        const RiccatiSolution s(0.0, 0.0);
        CHECK_FALSE(s.blows_up());
        CHECK(s(100.0) == 0.0);
    }
    SUBCASE("positive forcing settles on the equilibrium") {
        const RiccatiSolution below(0.5, 2.0);
        const RiccatiSolution above(5.0, 2.0);
        CHECK(below.form() == RiccatiForm::GeneralConstant);
        CHECK_FALSE(below.blows_up());
        CHECK_FALSE(above.blows_up());
        CHECK(below(50.0) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(above(50.0) == doctest::Approx(2.0).epsilon(1e-12));
        const RiccatiSolution steep(-3.0, 2.0);
        CHECK(steep.blows_up());
        CHECK(steep.blowup_time() == doctest::Approx(std::log(5.0) / 2.0).epsilon(1e-14));
    }
    SUBCASE("no solution at or past T0") {
        const RiccatiSolution s(-2 * pi, 0.0);
        CHECK_THROWS_AS(s(1.0 / pi), DomainError);
        CHECK_THROWS_AS(s(1.0), DomainError);
        CHECK_THROWS_AS(riccati_exact(-1.0, -0.5, 2.0), DomainError);
    }
}

TEST_CASE("riccati_numeric") {
    SUBCASE("zeta0 = -1, a = 0 reaches -2 at t = 1") {
        const RiccatiSeries s = riccati_numeric(-1.0, [](double) { return 0.0; }, 1.0, 11);
        REQUIRE(s.zeta.size() == 11);
        CHECK(s.zeta.back() == doctest::Approx(-2.0).epsilon(1e-9));
        CHECK_FALSE(s.blew_up);
    }
    SUBCASE("positive zeta0 decays") {
        const RiccatiSeries s = riccati_numeric(3.0, [](double) { return 0.0; }, 5.0, 51);
        for (std::size_t i = 1; i < s.zeta.size(); ++i) CHECK(s.zeta[i] < s.zeta[i - 1]);
        CHECK(s.zeta.back() > 0.0);
    }
    SUBCASE("matches the closed forms over 90% of T0") {
        struct Case { double zeta0, a; };
        for (const Case c : {Case{-2 * pi, 0.0}, Case{-1.0, -0.5}, Case{-3.0, -2.0}, Case{-3.0, 2.0}}) {
            const RiccatiSolution exact(c.zeta0, c.a);
            const RiccatiSeries s = riccati_numeric(c.zeta0, [a = c.a](double) { return a; },
                                                    0.9 * exact.blowup_time(), 200);
            double worst = 0.0;
            for (std::size_t i = 0; i < s.t.size(); ++i) {
                worst = std::max(worst, std::abs(s.zeta[i] - exact(s.t[i])) / std::max(1.0, std::abs(exact(s.t[i]))));
            }
            CHECK(worst <= 1e-8);
        }
    }
    SUBCASE("flags blow-up and stops") {
        const RiccatiSeries s = riccati_numeric(-2 * pi, [](double) { return 0.0; }, 1.0, 101);
        CHECK(s.blew_up);
        CHECK(s.blowup_time == doctest::Approx(1.0 / pi).epsilon(1e-6));
        CHECK(s.t.back() < 1.0 / pi);
    }
}

TEST_CASE("piecewise_linear holds its ends") {
    const auto f = piecewise_linear({0.0, 1.0, 3.0}, {2.0, 4.0, 0.0});
    CHECK(f(-1.0) == 2.0);
    CHECK(f(0.5) == 3.0);
    CHECK(f(2.0) == 2.0);
    CHECK(f(9.0) == 0.0);
}

TEST_CASE("compare_to_riccati counts only samples below the cap") {
    const RiccatiSolution exact(-2 * pi, 0.0);
    std::vector<double> t, z;
    exact_tail(exact, -1e3, t, z);
    const RiccatiComparison same = compare_to_riccati(t, z, exact, 100.0, 1e-3);
    CHECK(same.max_relative_deviation == 0.0);
    CHECK(same.samples < t.size());
    CHECK(std::isinf(same.first_miss_abs_zeta));

    for (double& v : z) v *= 1.01;
    const RiccatiComparison off = compare_to_riccati(t, z, exact, 100.0, 1e-3);
    CHECK(off.max_relative_deviation == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(off.first_miss_abs_zeta == doctest::Approx(2 * pi));
}

TEST_CASE("fit_blowup on exact data") {
    const RiccatiSolution exact(-2 * pi, 0.0);
    std::vector<double> t, z;
    exact_tail(exact, -1e4, t, z);
    const BlowupFit fit = fit_blowup(t, z);
    CHECK(std::abs(fit.rate_est + 2.0) <= 1e-3);
    CHECK(std::abs(fit.T0_est - 1.0 / pi) <= 1e-4);
    CHECK(fit.samples >= 3);
}

TEST_CASE("fit_blowup refuses series without asymptotics") {
    const std::vector<double> t{0.0, 0.1, 0.2, 0.3};
    const std::vector<double> flat{-1.0, -1.0, -1.0, -1.0};
    CHECK_THROWS_AS(fit_blowup(t, flat), InsufficientAsymptotics);
    const std::vector<double> deep{-60.0, -60.0, -60.0, -60.0};
    CHECK_THROWS_AS(fit_blowup(t, deep), InsufficientAsymptotics);
}

TEST_CASE("property: fit recovers T0 and the -2 rate across closed forms") {
    for (double zeta0 : {-1.0, -2 * pi, -10.0}) {
        for (double a : {0.0, -0.5, -2.0}) {
            CAPTURE(zeta0);
            CAPTURE(a);
            const RiccatiSolution exact(zeta0, a);
            REQUIRE(exact.blows_up());
            std::vector<double> t, z;
            exact_tail(exact, -1e4, t, z);
            const BlowupFit fit = fit_blowup(t, z);
            CHECK(std::abs(fit.rate_est + 2.0) <= 1e-2);
            CHECK(std::abs(fit.T0_est - exact.blowup_time()) <= 1e-4);
        }
    }
}

TEST_CASE("blow-up hypotheses") {
    const PeriodicGrid g(256);
    const SystemParams p{-1.0, -1.0, true};

    SUBCASE("zero-forcing data") {
        const SimState s = test::zero_forcing_state(256);
        const HypothesisReport r = check_blowup_hypotheses(s.u, s.rho, p);
        CHECK(r.applicable);
        CHECK(std::abs(r.a0) <= 1e-12);
        CHECK(r.predicted_T0 == doctest::Approx(1.0 / pi).epsilon(1e-10));
        CHECK(r.predicted_T0_exact);
    }
    SUBCASE("rho0 = 0, u0 = -sin") {
        const HypothesisReport r = check_blowup_hypotheses(sample(fn::Sine{-1.0, 1}, g), RealField(g), p);
        CHECK(r.symmetric);
        CHECK(r.energy_condition);
        CHECK(r.a0 == doctest::Approx(-pi * pi).epsilon(1e-12));
        CHECK(r.steep_slope_condition);
        REQUIRE(r.T0_upper_bound.has_value());
        CHECK(std::isfinite(*r.T0_upper_bound));
        CHECK(r.applicable);
        CHECK_FALSE(r.predicted_T0_exact);
    }
    SUBCASE("odd rho0 is not symmetric") {
        const HypothesisReport r =
            check_blowup_hypotheses(sample(fn::Sine{-1.0, 1}, g), sample(fn::Sine{1.0, 1}, g), p);
        CHECK_FALSE(r.symmetric);
        CHECK_FALSE(r.applicable);
    }
    SUBCASE("positive kappa is not admissible") {
        const SimState s = test::zero_forcing_state(256);
        const HypothesisReport r = check_blowup_hypotheses(s.u, s.rho, {-1.0, 1.0, true});
        CHECK_FALSE(r.parameters_admissible);
        CHECK_FALSE(r.applicable);
    }
}

TEST_CASE("conservation_report") {
    const SystemParams p{-1.0, 1.0, true};
    SUBCASE("single sample") {
        const ConservationReport r = conservation_report({log_sample(test::smooth_state(64), p)}, p);
        CHECK(r.max_a_drift == 0.0);
        CHECK(r.max_energy_drift == 0.0);
        CHECK(r.dadt_residual.empty());
    }
    SUBCASE("energy for alpha = -1 is -2a") {
        const SimState s = test::smooth_state(64);
        CHECK(energy(s, p) == doctest::Approx(-2.0 * compute_a(s, p)).epsilon(1e-13));
        CHECK(dadt_identity(s, p) == 0.0);
    }
}

TEST_CASE("property: origin slope follows the Riccati solution fed the logged a(t) to |zeta| = 100") {
    const SystemParams p{-1.0, -1.0, true};
    const SimState s0 = test::zero_forcing_state(256);
    OriginSlopeTracker tr(s0, p);
    const std::vector<Observer> obs{[&](const SimState& s) { tr.observe(s); }};
    run(s0, p, {}, 0.5, obs);
    const OriginSlopeSeries& series = tr.series();
    const RiccatiSeries ode = riccati_numeric(series.zeta.front(), piecewise_linear(series.t, series.a), series.t);

    double worst = 0.0;
    double reached = 0.0;
    for (std::size_t i = 0; i < ode.t.size(); ++i) {
        if (std::abs(ode.zeta[i]) > 100.0) break;
        reached = std::abs(ode.zeta[i]);
        worst = std::max(worst, std::abs(series.zeta[i] - ode.zeta[i]) / std::abs(ode.zeta[i]));
    }
    CHECK(worst <= 1e-3);
    CHECK(reached >= 50.0);
}
