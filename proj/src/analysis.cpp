#include "ghs/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "ghs/evolution.hpp"
#include "ghs/spectral.hpp"

namespace ghs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double acoth(double y) { return 0.5 * std::log((y + 1.0) / (y - 1.0)); }

}  // namespace

RiccatiSolution::RiccatiSolution(double zeta0, double a) : zeta0_(zeta0), a_(a), T0_(kInf) {
    if (!std::isfinite(zeta0) || !std::isfinite(a)) throw std::invalid_argument("Riccati data must be finite");
    if (a == 0.0) {
        form_ = RiccatiForm::ZeroForcing;
        if (zeta0 < 0.0) T0_ = -2.0 / zeta0;
    } else if (a < 0.0) {
        form_ = (a == -0.5) ? RiccatiForm::NegHalfForcing : RiccatiForm::GeneralConstant;
        const double c = std::sqrt(-2.0 * a);
        T0_ = (2.0 / c) * (std::atan(zeta0 / c) + 0.5 * std::numbers::pi);
    } else {
        form_ = RiccatiForm::GeneralConstant;
        const double c = std::sqrt(2.0 * a);
        if (zeta0 < -c) T0_ = std::log((zeta0 - c) / (zeta0 + c)) / c;
    }
}

double RiccatiSolution::operator()(double t) const {
    if (t >= T0_) {
        std::ostringstream msg;
        msg << "Riccati solution evaluated at t=" << t << " past blow-up time " << T0_;
        throw DomainError(msg.str());
    }
    switch (form_) {
        case RiccatiForm::ZeroForcing: return 2.0 * zeta0_ / (2.0 + zeta0_ * t);
        case RiccatiForm::NegHalfForcing: return std::tan(std::atan(zeta0_) - 0.5 * t);
        case RiccatiForm::GeneralConstant: break;
    }
    if (a_ < 0.0) {
        const double c = std::sqrt(-2.0 * a_);
        return c * std::tan(std::atan(zeta0_ / c) - 0.5 * c * t);
    }
    const double c = std::sqrt(2.0 * a_);
    const double y = zeta0_ / c;
    if (std::abs(y) < 1.0) return c * std::tanh(0.5 * c * t + std::atanh(y));
    if (std::abs(y) == 1.0) return zeta0_;
    return c / std::tanh(0.5 * c * t + acoth(y));
}

double riccati_exact(double zeta0, double a, double t) { return RiccatiSolution(zeta0, a)(t); }

RiccatiSeries riccati_numeric(double zeta0, const std::function<double(double)>& forcing,
                              std::span<const double> times, const RiccatiNumericOptions& options) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 1>;

    RiccatiSeries out;
    if (times.empty()) return out;
    if (!std::is_sorted(times.begin(), times.end()) || times.front() < 0.0) {
        throw std::invalid_argument("riccati_numeric needs ascending non-negative sample times");
    }

    const double q = options.quadratic;
    auto system = [&](const State& z, State& dz, double t) { dz[0] = q * z[0] * z[0] + forcing(t); };

    auto stepper = odeint::make_dense_output(options.tolerance, options.tolerance,
                                             odeint::runge_kutta_dopri5<State>());
    stepper.initialize(State{zeta0}, 0.0, 1e-4);

    State z{};
    for (double tau : times) {
        while (stepper.current_time() < tau) {
            stepper.do_step(system);
            if (std::abs(stepper.current_state()[0]) > options.blowup_threshold || !std::isfinite(stepper.current_state()[0])) {
                out.blew_up = true;
                out.blowup_time = stepper.current_time();
                return out;
            }
        }
        if (tau == 0.0) {
            z[0] = zeta0;
        } else {
            stepper.calc_state(tau, z);
        }
        out.t.push_back(tau);
        out.zeta.push_back(z[0]);
    }
    return out;
}

RiccatiSeries riccati_numeric(double zeta0, const std::function<double(double)>& forcing, double horizon,
                              std::size_t samples, const RiccatiNumericOptions& options) {
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    std::vector<double> times(samples);
    for (std::size_t i = 0; i < samples; ++i) times[i] = horizon * static_cast<double>(i) / static_cast<double>(samples - 1);
    return riccati_numeric(zeta0, forcing, times, options);
}

std::function<double(double)> piecewise_linear(std::vector<double> t, std::vector<double> v) {
    if (t.empty() || t.size() != v.size()) throw std::invalid_argument("piecewise_linear needs matching non-empty series");
    return [t = std::move(t), v = std::move(v)](double x) {
        if (x <= t.front()) return v.front();
        if (x >= t.back()) return v.back();
        const auto it = std::upper_bound(t.begin(), t.end(), x);
        const auto i = static_cast<std::size_t>(it - t.begin());
        const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
        return (1.0 - w) * v[i - 1] + w * v[i];
    };
}

RiccatiComparison compare_to_riccati(std::span<const double> t, std::span<const double> zeta,
                                     const RiccatiSolution& exact, double zeta_cap, double tolerance) {
    if (t.size() != zeta.size()) throw std::invalid_argument("compare_to_riccati: series lengths differ");
    RiccatiComparison c;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= exact.blowup_time()) break;
        const double z = exact(t[i]);
        if (std::abs(z) > zeta_cap) break;
        const double dev = std::abs(zeta[i] - z) / std::max(std::abs(z), 1e-300);
        ++c.samples;
        c.max_relative_deviation = std::max(c.max_relative_deviation, dev);
        if (dev > tolerance && std::isinf(c.first_miss_abs_zeta)) c.first_miss_abs_zeta = std::abs(z);
    }
    return c;
}

BlowupFit fit_blowup(std::span<const double> t, std::span<const double> zeta, double threshold) {
    if (t.size() != zeta.size()) throw std::invalid_argument("fit_blowup: series lengths differ");

    std::size_t begin = zeta.size();
    while (begin > 0 && zeta[begin - 1] <= threshold) --begin;
    const std::size_t count = zeta.size() - begin;
    if (count < 3) {
        throw InsufficientAsymptotics("series has " + std::to_string(count) +
                                      " trailing samples in the asymptotic regime (need 3)");
    }

    double t_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = begin; i < zeta.size(); ++i) {
        t_mean += t[i];
        y_mean += 1.0 / zeta[i];
    }
    t_mean /= static_cast<double>(count);
    y_mean /= static_cast<double>(count);

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = begin; i < zeta.size(); ++i) {
        const double dt = t[i] - t_mean;
        sxx += dt * dt;
        sxy += dt * (1.0 / zeta[i] - y_mean);
    }
    if (sxx <= 0.0) throw InsufficientAsymptotics("asymptotic window has zero time extent");
    const double slope = sxy / sxx;
    if (!(slope > 0.0)) throw InsufficientAsymptotics("1/zeta is not increasing toward zero");

    BlowupFit fit;
    fit.T0_est = t_mean - y_mean / slope;
    fit.rate_est = -1.0 / slope;
    fit.window_begin = t[begin];
    fit.window_end = t.back();
    fit.samples = count;
    double ss = 0.0;
    for (std::size_t i = begin; i < zeta.size(); ++i) {
        const double r = 1.0 / zeta[i] - (y_mean + slope * (t[i] - t_mean));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(count));
    if (!(fit.T0_est > fit.window_end)) {
        throw InsufficientAsymptotics("fitted blow-up time precedes the end of the window");
    }
    return fit;
}

HypothesisReport check_blowup_hypotheses(const RealField& u0, const RealField& rho0, const SystemParams& params,
                                         double symmetry_tolerance) {
    require_same_grid(u0, rho0);
    HypothesisReport r;
    const int n = u0.size();
    const double u_scale = std::max(1.0, u0.max_abs());
    const double rho_scale = std::max(1.0, rho0.max_abs());
    for (int j = 0; j < n; ++j) {
        const int mirror = (n - j) % n;
        r.odd_residual_u = std::max(r.odd_residual_u, std::abs(u0[j] + u0[mirror]));
        r.even_residual_rho = std::max(r.even_residual_rho, std::abs(rho0[j] - rho0[mirror]));
    }
    r.rho_at_origin = rho0[0];

    const RealField ux = derivative(u0);
    r.zeta0 = ux[0];
    for (int j = 0; j < n; ++j) {
        r.ux_norm_sq += ux[j] * ux[j];
        r.rho_norm_sq += rho0[j] * rho0[j];
    }
    r.ux_norm_sq /= n;
    r.rho_norm_sq /= n;
    r.a0 = -0.5 * r.ux_norm_sq - 0.5 * params.kappa * r.rho_norm_sq;

    r.symmetric = r.odd_residual_u <= symmetry_tolerance * u_scale &&
                  r.even_residual_rho <= symmetry_tolerance * rho_scale &&
                  std::abs(r.rho_at_origin) <= symmetry_tolerance * rho_scale && r.zeta0 < 0.0;
    r.parameters_admissible = params.alpha == -1.0 && params.kappa < 0.0;

    // Quadrature of exactly balanced data leaves rounding-level residue;
    // snap it so the closed forms for a = 0 and a = -1/2 are selected.
    const double scale = r.ux_norm_sq + std::abs(params.kappa) * r.rho_norm_sq;
    const double snap = 1e-12 * std::max(1.0, scale);
    double a0 = r.a0;
    if (std::abs(a0) <= snap) a0 = 0.0;
    if (std::abs(a0 + 0.5) <= snap) a0 = -0.5;

    r.energy_condition = a0 <= 0.0;
    const double c = std::sqrt(2.0 * std::abs(a0));
    r.steep_slope_condition = r.zeta0 < -c;
    r.applicable = r.symmetric && r.parameters_admissible && (r.energy_condition || r.steep_slope_condition);

    const RiccatiSolution riccati(r.zeta0, a0);
    r.predicted_T0 = riccati.blowup_time();
    r.predicted_T0_exact = riccati.form() != RiccatiForm::GeneralConstant;
    if (r.steep_slope_condition && c > 0.0) r.T0_upper_bound = std::log((r.zeta0 - c) / (r.zeta0 + c)) / c;
    return r;
}

double energy(const SimState& state, const SystemParams& params) {
    const RealField ux = derivative(state.u);
    double ux2 = 0.0;
    double rho2 = 0.0;
    for (int j = 0; j < ux.size(); ++j) {
        ux2 += ux[j] * ux[j];
        rho2 += state.rho[j] * state.rho[j];
    }
    return (ux2 + params.kappa * rho2) / ux.size();
}

double dadt_identity(const SimState& state, const SystemParams& params) {
    const RealField ux = derivative(state.u);
    double cross = 0.0;
    double cube = 0.0;
    for (int j = 0; j < ux.size(); ++j) {
        cross += ux[j] * state.rho[j] * state.rho[j];
        cube += ux[j] * ux[j] * ux[j];
    }
    const double n = ux.size();
    const double ap1 = params.alpha + 1.0;
    return -1.5 * params.kappa * ap1 * cross / n - 0.5 * ap1 * (params.alpha + 2.0) * cube / n;
}

RunLogSample log_sample(const SimState& state, const SystemParams& params) {
    return {state.t, compute_a(state, params), energy(state, params), dadt_identity(state, params)};
}

ConservationReport conservation_report(const RunLog& log, const SystemParams& /*params*/) {
    ConservationReport rep;
    for (const auto& s : log) {
        rep.t.push_back(s.t);
        rep.a.push_back(s.a);
        rep.energy.push_back(s.energy);
    }
    if (log.empty()) return rep;
    for (const auto& s : log) {
        rep.max_a_drift = std::max(rep.max_a_drift, std::abs(s.a - log.front().a));
        rep.max_energy_drift = std::max(rep.max_energy_drift, std::abs(s.energy - log.front().energy));
    }
    if (log.size() < 3) return rep;

    double identity_scale = 0.0;
    for (std::size_t i = 1; i + 1 < log.size(); ++i) {
        const double h1 = log[i].t - log[i - 1].t;
        const double h2 = log[i + 1].t - log[i].t;
        // Second-order centered difference on a non-uniform stencil.
        const double d = (h1 * h1 * log[i + 1].a - h2 * h2 * log[i - 1].a + (h2 * h2 - h1 * h1) * log[i].a) /
                         (h1 * h2 * (h1 + h2));
        const double r = std::abs(d - log[i].dadt_identity);
        rep.dadt_residual.push_back(r);
        rep.max_dadt_residual = std::max(rep.max_dadt_residual, r);
        identity_scale = std::max(identity_scale, std::abs(log[i].dadt_identity));
    }
    if (identity_scale > 0.0) {
        rep.relative_dadt_residual = rep.max_dadt_residual / identity_scale;
    } else if (rep.max_dadt_residual > 0.0) {
        rep.relative_dadt_residual = kInf;
    }
    return rep;
}

}  // namespace ghs
