#include "ghs/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ghs/evolution.hpp"
#include "ghs/spectral.hpp"

namespace ghs {

namespace {

void sample_along(CharacteristicEnsemble& e, const SimState& state, const SystemParams& params) {
    const Interpolant u(state.u);
    const Interpolant rho(state.rho);
    const double a = compute_a(state, params);
    const std::size_t p = e.size();
    e.M.resize(p);
    e.N.resize(p);
    e.gamma.resize(p);
    e.varpi.resize(p);
    e.slope_rate.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        const auto ju = u.jet(e.phi[i]);
        const auto jr = rho.jet(e.phi[i]);
        e.M[i] = ju.d1;
        e.N[i] = ju.d2;
        e.gamma[i] = jr.value;
        e.varpi[i] = jr.d1;
        e.slope_rate[i] = 0.5 * params.alpha * e.M[i] * e.M[i] + 0.5 * params.kappa * e.gamma[i] * e.gamma[i] + a;
    }
}

SpectralField blend(const SpectralField& a, double wa, const SpectralField& b, double wb) {
    SpectralField out(a.grid());
    auto o = out.half_spectrum();
    auto x = a.half_spectrum();
    auto y = b.half_spectrum();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] = wa * x[k] + wb * y[k];
    return out;
}

}  // namespace

CharacteristicEnsemble seed_ensemble(const SimState& state, const SystemParams& params, std::vector<double> seeds) {
    if (seeds.empty()) seeds = state.grid().points();
    std::sort(seeds.begin(), seeds.end());

    CharacteristicEnsemble e;
    e.t = state.t;
    e.seeds = seeds;
    e.phi = seeds;
    e.phi_x.assign(seeds.size(), 1.0);
    e.slope_integral.assign(seeds.size(), 0.0);
    sample_along(e, state, params);
    // Node-aligned seeds take rho0 exactly from the samples.
    const Interpolant rho(state.rho);
    e.gamma0.resize(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        e.gamma0[i] = rho(seeds[i]);
        e.gamma[i] = e.gamma0[i];
    }
    return e;
}

CharacteristicEnsemble advect(const CharacteristicEnsemble& ensemble, const SimState& from, const SimState& to,
                              const SystemParams& params, TimeReconstruction mode) {
    const double tol = 1e-12 * std::max(1.0, std::abs(from.t));
    if (std::abs(ensemble.t - from.t) > tol) {
        std::ostringstream msg;
        msg << "ensemble at t=" << ensemble.t << " but Eulerian state at t=" << from.t;
        throw InterpolationOutOfSync(msg.str());
    }
    require_same_grid(from.u, to.u);
    const double dt = to.t - from.t;

    const SpectralField u0 = to_spectral(from.u);
    const SpectralField u1 = to_spectral(to.u);
    SpectralField mid = blend(u0, 0.5, u1, 0.5);
    if (mode == TimeReconstruction::CubicHermite) {
        const SpectralField d0 = to_spectral(rhs(from, params).du_dt);
        const SpectralField d1 = to_spectral(rhs(to, params).du_dt);
        // Hermite basis at the midpoint: u(1/2) = (u0 + u1)/2 + dt (u0' - u1')/8.
        const SpectralField corr = blend(d0, dt / 8.0, d1, -dt / 8.0);
        mid = blend(mid, 1.0, corr, 1.0);
    }
    const Interpolant at0(u0);
    const Interpolant at_mid(std::move(mid));
    const Interpolant at1(u1);

    CharacteristicEnsemble out = ensemble;
    out.t = to.t;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const double x = ensemble.phi[i];
        const double J = ensemble.phi_x[i];

        const auto j1 = at0.jet(x);
        const double k1 = j1.value;
        const double l1 = j1.d1 * J;

        const auto j2 = at_mid.jet(x + 0.5 * dt * k1);
        const double k2 = j2.value;
        const double l2 = j2.d1 * (J + 0.5 * dt * l1);

        const auto j3 = at_mid.jet(x + 0.5 * dt * k2);
        const double k3 = j3.value;
        const double l3 = j3.d1 * (J + 0.5 * dt * l2);

        const auto j4 = at1.jet(x + dt * k3);
        const double k4 = j4.value;
        const double l4 = j4.d1 * (J + dt * l3);

        out.phi[i] = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.phi_x[i] = J + dt / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
    }

    sample_along(out, to, params);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.slope_integral[i] += 0.5 * dt * (ensemble.M[i] + out.M[i]) +
                                 dt * dt / 12.0 * (ensemble.slope_rate[i] - out.slope_rate[i]);
    }
    return out;
}

double check_transport_identity(const CharacteristicEnsemble& ensemble, std::span<const double> rho0_at_seeds,
                                double alpha) {
    if (rho0_at_seeds.size() != ensemble.size()) throw std::invalid_argument("rho0 samples do not match ensemble");
    double worst = 0.0;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const double predicted = rho0_at_seeds[i] * std::pow(ensemble.phi_x[i], alpha);
        worst = std::max(worst, std::abs(ensemble.gamma[i] - predicted));
    }
    return worst;
}

double jacobian_exponential_gap(const CharacteristicEnsemble& ensemble) {
    double worst = 0.0;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const double expected = std::exp(ensemble.slope_integral[i]);
        worst = std::max(worst, std::abs(ensemble.phi_x[i] - expected) / expected);
    }
    return worst;
}

bool is_orientation_preserving(const CharacteristicEnsemble& ensemble) {
    if (ensemble.size() == 0) return true;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        if (!(ensemble.phi_x[i] > 0.0)) return false;
        if (i > 0 && !(ensemble.phi[i] > ensemble.phi[i - 1])) return false;
    }
    return ensemble.phi.back() - ensemble.phi.front() < 1.0;
}

CharacteristicTracker::CharacteristicTracker(const SimState& initial, const SystemParams& params,
                                             std::vector<double> seeds, TimeReconstruction mode)
    : params_(params),
      mode_(mode),
      previous_(initial),
      ensemble_(seed_ensemble(initial, params, std::move(seeds))),
      min_phi_x_(1.0) {}

void CharacteristicTracker::observe(const SimState& state) {
    ensemble_ = advect(ensemble_, previous_, state, params_, mode_);
    previous_ = state;
    for (double j : ensemble_.phi_x) min_phi_x_ = std::min(min_phi_x_, j);
    always_ordered_ = always_ordered_ && is_orientation_preserving(ensemble_);
}

AuxiliaryMonitor::AuxiliaryMonitor(AuxiliaryKind kind, const CharacteristicEnsemble& initial,
                                   const SystemParams& params, double a0)
    : kind_(kind), kappa_(params.kappa), t_(initial.t) {
    if (kind == AuxiliaryKind::WAlphaMinus1 && params.alpha != -1.0) {
        throw std::invalid_argument("auxiliary function w requires alpha = -1");
    }
    if (kind == AuxiliaryKind::WtildeAlpha0 && params.alpha != 0.0) {
        throw std::invalid_argument("auxiliary function w~ requires alpha = 0");
    }
    if (!(params.kappa > 0.0)) throw std::invalid_argument("auxiliary monitors require kappa > 0");
    const auto& g0 = initial.gamma0;
    const bool positive = std::all_of(g0.begin(), g0.end(), [](double g) { return g > 0.0; });
    const bool negative = std::all_of(g0.begin(), g0.end(), [](double g) { return g < 0.0; });
    if (!(positive || negative)) {
        throw SignConditionViolated("rho0 is not sign-definite over the seeds");
    }

    initial_ = evaluate(initial);
    values_ = initial_;
    exponent_.assign(initial.size(), 0.0);
    last_rate_ = exponent_rate(initial, a0);
    min_value_ = *std::min_element(values_.begin(), values_.end());
    times_.push_back(t_);
    ratio_history_.push_back(1.0);
}

std::vector<double> AuxiliaryMonitor::evaluate(const CharacteristicEnsemble& e) const {
    std::vector<double> w(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double m2 = 1.0 + e.M[i] * e.M[i];
        if (kind_ == AuxiliaryKind::WAlphaMinus1) {
            w[i] = kappa_ * e.gamma0[i] * e.gamma[i] + e.gamma0[i] / e.gamma[i] * m2;
        } else {
            w[i] = kappa_ * e.gamma0[i] * e.gamma0[i] + m2;
        }
    }
    return w;
}

std::vector<double> AuxiliaryMonitor::exponent_rate(const CharacteristicEnsemble& e, double a) const {
    std::vector<double> r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        r[i] = (kind_ == AuxiliaryKind::WAlphaMinus1) ? 1.0 + 2.0 * std::abs(a)
                                                      : 0.5 * kappa_ * e.gamma[i] * e.gamma[i] + std::abs(a);
    }
    return r;
}

void AuxiliaryMonitor::observe(const CharacteristicEnsemble& ensemble, double a) {
    if (ensemble.size() != initial_.size()) throw std::invalid_argument("ensemble size changed");
    const double dt = ensemble.t - t_;
    const std::vector<double> rate = exponent_rate(ensemble, a);
    values_ = evaluate(ensemble);
    double worst_now = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        exponent_[i] += 0.5 * dt * (last_rate_[i] + rate[i]);
        // w must stay positive; losing that is an unbounded violation, not a NaN to skip.
        const double q = values_[i] / initial_[i];
        const double ratio = q > 0.0 ? std::exp(std::log(q) - exponent_[i]) : std::numeric_limits<double>::infinity();
        worst_now = std::isnan(ratio) ? std::numeric_limits<double>::infinity() : std::max(worst_now, ratio);
        min_value_ = std::min(min_value_, values_[i]);
    }
    last_rate_ = rate;
    t_ = ensemble.t;
    worst_ratio_ = std::max(worst_ratio_, worst_now);
    times_.push_back(t_);
    ratio_history_.push_back(worst_now);
}

AuxiliaryMonitor monitor_auxiliary(AuxiliaryKind kind, std::span<const CharacteristicEnsemble> history,
                                   const SystemParams& params, std::span<const double> a_history) {
    if (history.empty() || history.size() != a_history.size()) {
        throw std::invalid_argument("monitor_auxiliary needs matching non-empty histories");
    }
    AuxiliaryMonitor monitor(kind, history.front(), params, a_history.front());
    for (std::size_t i = 1; i < history.size(); ++i) monitor.observe(history[i], a_history[i]);
    return monitor;
}

OriginSlopeSeries track_origin_slope(std::span<const SimState> history, const SystemParams& params) {
    OriginSlopeSeries s;
    for (const auto& state : history) {
        s.t.push_back(state.t);
        s.zeta.push_back(derivative(state.u)[0]);
        s.rho_origin.push_back(state.rho[0]);
        s.a.push_back(compute_a(state, params));
    }
    return s;
}

OriginSlopeTracker::OriginSlopeTracker(const SimState& initial, const SystemParams& params) : params_(params) {
    observe(initial);
}

void OriginSlopeTracker::observe(const SimState& state) {
    series_.t.push_back(state.t);
    series_.zeta.push_back(derivative(state.u)[0]);
    series_.rho_origin.push_back(state.rho[0]);
    series_.a.push_back(compute_a(state, params_));
}

}  // namespace ghs
