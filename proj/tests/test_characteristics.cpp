#include "doctest.h"

#include <vector>

#include "ghs/characteristics.hpp"
#include "ghs/evolution.hpp"
#include "ghs/spectral.hpp"
#include "helpers.hpp"

using namespace ghs;
using ghs::test::pi;

namespace {

std::vector<double> offset_seeds(int count) {
    std::vector<double> s;
    for (int i = 0; i < count; ++i) s.push_back((i + 0.37) / count);
    return s;
}

SimState sign_definite_state(int n, double u_amp) {
    const PeriodicGrid g(n);
    return SimState(0.0, sample(fn::Sine{u_amp, 1}, g),
                    sample(FunctionDescriptor{fn::Constant{1.0}, fn::Cosine{0.5, 1}}, g));
}

// Runs with a tracker and returns it.
CharacteristicTracker tracked_run(const SimState& s0, const SystemParams& p, double horizon,
                                  std::vector<double> seeds = offset_seeds(32)) {
    CharacteristicTracker tracker(s0, p, std::move(seeds));
    const std::vector<Observer> obs{[&](const SimState& s) { tracker.observe(s); }};
    run(s0, p, {}, horizon, obs);
    return tracker;
}

}  // namespace

TEST_CASE("advect: identity flow and translation") {
    const PeriodicGrid g(32);
    const SystemParams p{-1.0, 1.0, true};

    SUBCASE("u = 0") {
        const SimState a(0.0, RealField(g), sample(fn::Constant{1.0}, g));
        const SimState b(0.7, RealField(g), sample(fn::Constant{1.0}, g));
        const CharacteristicEnsemble e = advect(seed_ensemble(a, p, offset_seeds(8)), a, b, p);
        for (std::size_t i = 0; i < e.size(); ++i) {
            CHECK(e.phi[i] == doctest::Approx(e.seeds[i]).epsilon(1e-15));
            CHECK(e.phi_x[i] == 1.0);
        }
    }
    SUBCASE("u = c") {
        const double c = 0.3;
        const double t = 2.5;
        const SimState a(0.0, sample(fn::Constant{c}, g), RealField(g));
        const SimState b(t, sample(fn::Constant{c}, g), RealField(g));
        const CharacteristicEnsemble e = advect(seed_ensemble(a, p, offset_seeds(8)), a, b, p);
        for (std::size_t i = 0; i < e.size(); ++i) {
            const double wrapped = e.phi[i] - std::floor(e.phi[i]);
            const double expect = e.seeds[i] + c * t - std::floor(e.seeds[i] + c * t);
            CHECK(std::abs(wrapped - expect) <= 1e-13);
            CHECK(std::abs(e.phi_x[i] - 1.0) <= 1e-14);
        }
    }
}

TEST_CASE("advect refuses an ensemble from another time") {
    const SimState a = test::smooth_state(32);
    SimState b = a;
    b.t = 0.1;
    const CharacteristicEnsemble e = seed_ensemble(a, {}, {});
    CHECK_THROWS_AS(advect(e, b, b, {}), InterpolationOutOfSync);
    CHECK_NOTHROW(advect(e, a, b, {}));
}

TEST_CASE("default seeds are the grid nodes and sample rho0 exactly") {
    const SimState s = test::smooth_state(32);
    const CharacteristicEnsemble e = seed_ensemble(s, {});
    REQUIRE(e.size() == 32);
    for (int j = 0; j < 32; ++j) CHECK(e.gamma0[static_cast<std::size_t>(j)] == s.rho[j]);
}

TEST_CASE("Jacobian matches the exponential of the integrated slope") {
    for (auto mode : {TimeReconstruction::Linear, TimeReconstruction::CubicHermite}) {
        const SimState s0 = test::smooth_state(256);
        const SystemParams p{-1.0, -1.0, true};
        CharacteristicTracker tracker(s0, p, offset_seeds(32), mode);
        const std::vector<Observer> obs{[&](const SimState& s) { tracker.observe(s); }};
        run(s0, p, {}, 0.5, obs);
        const double gap = jacobian_exponential_gap(tracker.ensemble());
        if (mode == TimeReconstruction::CubicHermite) {
            CHECK(gap <= 1e-6);
        } else {
            // Second order in time: the cross-check still agrees, to a looser level.
            CHECK(gap <= 1e-5);
        }
    }
}

TEST_CASE("transport identity") {
    SUBCASE("t = 0 is exact") {
        const SimState s = test::smooth_state(64);
        const CharacteristicEnsemble e = seed_ensemble(s, {}, offset_seeds(16));
        CHECK(check_transport_identity(e, e.gamma0, -1.0) == 0.0);
        CHECK(check_transport_identity(e, e.gamma0, 0.0) == 0.0);
    }
    SUBCASE("alpha = -1 at t = 0.5") {
        const auto tr = tracked_run(test::smooth_state(256), {-1.0, 1.0, true}, 0.5);
        CHECK(check_transport_identity(tr.ensemble(), tr.rho0_at_seeds(), -1.0) <= 1e-5);
    }
    SUBCASE("alpha = 0 keeps gamma") {
        const auto tr = tracked_run(test::smooth_state(256), {0.0, 1.0, true}, 1.0);
        CHECK(check_transport_identity(tr.ensemble(), tr.rho0_at_seeds(), 0.0) <= 1e-5);
    }
    SUBCASE("general alpha") {
        for (double alpha : {-2.0, 1.0}) {
            const auto tr = tracked_run(test::smooth_state(256), {alpha, 1.0, true}, 0.5);
            CHECK(check_transport_identity(tr.ensemble(), tr.rho0_at_seeds(), alpha) <= 1e-5);
        }
    }
    SUBCASE("size mismatch") {
        const CharacteristicEnsemble e = seed_ensemble(test::smooth_state(16), {});
        CHECK_THROWS_AS(check_transport_identity(e, std::vector<double>(3), -1.0), std::invalid_argument);
    }
}

TEST_CASE("auxiliary monitor for w") {
    const SystemParams p{-1.0, 1.0, true};

    SUBCASE("ratio is 1 at t = 0") {
        const SimState s = sign_definite_state(64, 1.0);
        const AuxiliaryMonitor m(AuxiliaryKind::WAlphaMinus1, seed_ensemble(s, p), p, compute_a(s, p));
        CHECK(m.worst_ratio() == 1.0);
        CHECK(m.min_value() > 0.0);
    }
    SUBCASE("Gronwall envelope holds on [0, 5]") {
        // The initial velocity is left open; a small one keeps the run resolved.
        const SimState s0 = sign_definite_state(256, 0.1);
        CharacteristicTracker tr(s0, p);
        AuxiliaryMonitor m(AuxiliaryKind::WAlphaMinus1, tr.ensemble(), p, compute_a(s0, p));
        const std::vector<Observer> obs{[&](const SimState& s) {
            tr.observe(s);
            m.observe(tr.ensemble(), compute_a(s, p));
        }};
        CHECK(run(s0, p, {}, 5.0, obs).status == RunStatus::CompletedHorizon);
        CHECK(m.worst_ratio() <= 1.01);
        CHECK(m.min_value() > 0.0);
        CHECK(m.worst_ratio_history().size() == m.times().size());
    }
    SUBCASE("sign-changing rho0 is rejected") {
        const PeriodicGrid g(64);
        const SimState s(0.0, sample(fn::Sine{0.1, 1}, g), sample(fn::Cosine{1.0, 1}, g));
        CHECK_THROWS_AS(AuxiliaryMonitor(AuxiliaryKind::WAlphaMinus1, seed_ensemble(s, p), p, compute_a(s, p)),
                        SignConditionViolated);
    }
    SUBCASE("parameter preconditions") {
        const SimState s = sign_definite_state(64, 0.1);
        const SystemParams alpha0{0.0, 1.0, true};
        const SystemParams negative{-1.0, -1.0, true};
        CHECK_THROWS_AS(AuxiliaryMonitor(AuxiliaryKind::WAlphaMinus1, seed_ensemble(s, alpha0), alpha0, 0.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(AuxiliaryMonitor(AuxiliaryKind::WAlphaMinus1, seed_ensemble(s, negative), negative, 0.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(AuxiliaryMonitor(AuxiliaryKind::WtildeAlpha0, seed_ensemble(s, p), p, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("auxiliary monitor for w tilde and the history form") {
    const SystemParams p{0.0, 1.0, true};
    const SimState s0 = sign_definite_state(256, 0.1);
    std::vector<CharacteristicEnsemble> history{seed_ensemble(s0, p, offset_seeds(32))};
    std::vector<double> a_history{compute_a(s0, p)};
    SimState prev = s0;
    const std::vector<Observer> obs{[&](const SimState& s) {
        history.push_back(advect(history.back(), prev, s, p));
        a_history.push_back(compute_a(s, p));
        prev = s;
    }};
    run(s0, p, {}, 1.0, obs);
    const AuxiliaryMonitor m = monitor_auxiliary(AuxiliaryKind::WtildeAlpha0, history, p, a_history);
    CHECK(m.worst_ratio() <= 1.01);
    CHECK(m.times().size() == history.size());
    CHECK_THROWS_AS(monitor_auxiliary(AuxiliaryKind::WtildeAlpha0, history, p, std::vector<double>{}),
                    std::invalid_argument);
}

TEST_CASE("origin slope tracking") {
    SUBCASE("zeta(0) = -2 pi for u0 = -sin") {
        const SimState s = test::zero_forcing_state(64);
        const OriginSlopeTracker tr(s, {-1.0, -1.0, true});
        CHECK(tr.series().zeta.front() == doctest::Approx(-2 * pi).epsilon(1e-13));
    }
    SUBCASE("rho(t, 0) stays zero while resolved") {
        const SystemParams p{-1.0, -1.0, true};
        const SimState s0 = test::zero_forcing_state(256);
        OriginSlopeTracker tr(s0, p);
        const std::vector<Observer> obs{[&](const SimState& s) { tr.observe(s); }};
        run(s0, p, {}, 0.1, obs);
        double worst = 0.0;
        for (double r : tr.series().rho_origin) worst = std::max(worst, std::abs(r));
        CHECK(worst <= 1e-8);
    }
    SUBCASE("without dealiasing rho(t, 0) is exactly zero up to 0.9 T0") {
        const SystemParams p{-1.0, -1.0, false};
        const SimState s0 = test::zero_forcing_state(256);
        std::vector<SimState> history{s0};
        const std::vector<Observer> obs{[&](const SimState& s) { history.push_back(s); }};
        run(s0, p, {}, 0.9 / pi, obs);
        const OriginSlopeSeries series = track_origin_slope(history, p);
        REQUIRE(series.t.size() == history.size());
        for (double r : series.rho_origin) CHECK(r == 0.0);
    }
    SUBCASE("blow-up run follows the Riccati solution to |zeta| = 100") {
        const SystemParams p{-1.0, -1.0, true};
        const SimState s0 = test::zero_forcing_state(256);
        OriginSlopeTracker tr(s0, p);
        const std::vector<Observer> obs{[&](const SimState& s) { tr.observe(s); }};
        run(s0, p, {}, 0.5, obs);
        const RiccatiSolution exact(-2 * pi, 0.0);
        const RiccatiComparison c = compare_to_riccati(tr.series().t, tr.series().zeta, exact, 100.0, 1e-3);
        CHECK(c.max_relative_deviation <= 1e-3);
    }
}

TEST_CASE("property: odd/even symmetry is preserved") {
    const SystemParams p{-1.0, -1.0, true};
    const SimState s0 = test::zero_forcing_state(256);
    double odd = 0.0;
    double even = 0.0;
    const std::vector<Observer> obs{[&](const SimState& s) {
        const int n = s.u.size();
        for (int j = 0; j < n; ++j) {
            odd = std::max(odd, std::abs(s.u[j] + s.u[(n - j) % n]));
            even = std::max(even, std::abs(s.rho[j] - s.rho[(n - j) % n]));
        }
    }};
    run(s0, p, {}, 0.2, obs);
    CHECK(odd <= 1e-8);
    CHECK(even <= 1e-8);
}

TEST_CASE("property: flow map stays an orientation-preserving circle map") {
    for (double kappa : {-1.0, 1.0}) {
        const auto tr = tracked_run(test::smooth_state(128), {-1.0, kappa, true}, 1.0, offset_seeds(64));
        CHECK(tr.always_orientation_preserving());
        CHECK(tr.min_phi_x() > 0.0);
        CHECK(is_orientation_preserving(tr.ensemble()));
    }
}

TEST_CASE("property: gamma keeps the sign of gamma0") {
    const SystemParams p{-1.0, 1.0, true};
    const SimState s0 = sign_definite_state(256, 0.1);
    CharacteristicTracker tr(s0, p, offset_seeds(64));
    double min_gamma = INFINITY;
    const std::vector<Observer> obs{[&](const SimState& s) {
        tr.observe(s);
        for (double gv : tr.ensemble().gamma) min_gamma = std::min(min_gamma, gv);
    }};
    run(s0, p, {}, 2.0, obs);
    CHECK(min_gamma > 0.0);
}
