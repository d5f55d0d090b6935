#include "ghs/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ghs/spectral.hpp"

namespace ghs {

void StepControl::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!(dt_min > 0.0 && dt_min < dt_max)) throw std::invalid_argument("need 0 < dt_min < dt_max");
    if (!(slope_floor < 0.0)) throw std::invalid_argument("slope_floor must be negative");
}

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::CompletedHorizon: return "CompletedHorizon";
        case RunStatus::BlowUpDetected: return "BlowUpDetected";
        case RunStatus::NumericalBreakdown: return "NumericalBreakdown";
    }
    return "?";
}

double compute_a(const SimState& state, const SystemParams& params) {
    const RealField ux = derivative(state.u);
    double ux2 = 0.0;
    double rho2 = 0.0;
    for (int j = 0; j < ux.size(); ++j) {
        ux2 += ux[j] * ux[j];
        rho2 += state.rho[j] * state.rho[j];
    }
    const double n = ux.size();
    return -0.5 * params.kappa * rho2 / n - 0.5 * (params.alpha + 2.0) * ux2 / n;
}

Tendency rhs(const SimState& state, const SystemParams& params) {
    const SpectralField u_hat = to_spectral(state.u);
    const SpectralField rho_hat = to_spectral(state.rho);
    RealField u = state.u;
    RealField rho = state.rho;
    RealField ux = to_physical(derivative(u_hat));
    RealField rhox = to_physical(derivative(rho_hat));

    // Filtering is linear, so each input is low-passed once and each sum of
    // products once; this equals summing individually dealiased products.
    const bool dealias = params.dealias;
    if (dealias) {
        u = lowpass(u);
        rho = lowpass(rho);
        ux = lowpass(ux);
        rhox = lowpass(rhox);
    }
    const auto finish = [dealias](RealField f) { return dealias ? lowpass(f) : f; };

    const double alpha = params.alpha;
    const double kappa = params.kappa;
    const int n = u.size();

    RealField integrand(u.grid());
    RealField advection(u.grid());
    RealField drho(u.grid());
    for (int j = 0; j < n; ++j) {
        integrand[j] = 0.5 * kappa * rho[j] * rho[j] + 0.5 * (alpha + 2.0) * ux[j] * ux[j];
        advection[j] = u[j] * ux[j];
        drho[j] = alpha * ux[j] * rho[j] - u[j] * rhox[j];
    }
    integrand = finish(std::move(integrand));
    const double a = -integrand.integral();
    for (double& v : integrand.values()) v += a;

    RealField du = antiderivative(integrand);
    du -= finish(std::move(advection));
    return {std::move(du), finish(std::move(drho))};
}

double cfl_dt(const SimState& state, const StepControl& control) {
    constexpr double eps = 1e-12;
    const double dx = state.grid().spacing();
    const double ux_max = derivative(state.u).max_abs();
    return control.cfl * std::min(dx / (state.u.max_abs() + eps), 1.0 / (ux_max + eps));
}

double choose_dt(const SimState& state, const StepControl& control) {
    if (!control.adaptive) return control.dt_max;
    return std::clamp(cfl_dt(state, control), control.dt_min, control.dt_max);
}

namespace {

SimState axpy(const SimState& s, double h, const Tendency& k) {
    SimState out = s;
    out.t = s.t + h;
    for (int j = 0; j < s.u.size(); ++j) {
        out.u[j] += h * k.du_dt[j];
        out.rho[j] += h * k.drho_dt[j];
    }
    return out;
}

}  // namespace

SimState step_fixed(const SimState& state, const SystemParams& params, double dt) {
    const Tendency k1 = rhs(state, params);
    const Tendency k2 = rhs(axpy(state, 0.5 * dt, k1), params);
    const Tendency k3 = rhs(axpy(state, 0.5 * dt, k2), params);
    const Tendency k4 = rhs(axpy(state, dt, k3), params);

    SimState out = state;
    out.t = state.t + dt;
    const double w = dt / 6.0;
    for (int j = 0; j < state.u.size(); ++j) {
        out.u[j] += w * (k1.du_dt[j] + 2.0 * k2.du_dt[j] + 2.0 * k3.du_dt[j] + k4.du_dt[j]);
        out.rho[j] += w * (k1.drho_dt[j] + 2.0 * k2.drho_dt[j] + 2.0 * k3.drho_dt[j] + k4.drho_dt[j]);
    }
    if (!out.is_finite()) throw NumericalBreakdown("non-finite state after step at t=" + std::to_string(state.t));
    return out;
}

SimState step(const SimState& state, const SystemParams& params, const StepControl& control) {
    return step_fixed(state, params, choose_dt(state, control));
}

RunOutcome run(const SimState& initial, const SystemParams& params, const StepControl& control, double horizon,
               std::span<const Observer> observers, std::span<const double> checkpoints) {
    params.validate();
    control.validate();

    RunOutcome outcome{.blowup_estimate = std::nullopt, .final_state = initial, .message = {}};
    outcome.t_final = initial.t;
    if (!initial.is_finite()) {
        outcome.status = RunStatus::NumericalBreakdown;
        outcome.message = "initial state is not finite";
        return outcome;
    }
    if (horizon <= initial.t) return outcome;

    std::vector<double> stops;
    for (double c : checkpoints) {
        if (c > initial.t && c < horizon) stops.push_back(c);
    }
    stops.push_back(horizon);
    std::sort(stops.begin(), stops.end());
    std::size_t next_stop = 0;

    std::vector<double> slope_t{initial.t};
    std::vector<double> slope_min{derivative(initial.u).min()};
    outcome.min_slope = slope_min.back();

    SimState state = initial;
    while (true) {
        const double dt_cfl = cfl_dt(state, control);
        const bool pinned = control.adaptive && dt_cfl <= control.dt_min;
        if (!pinned) {
            const double target = stops[next_stop];
            double dt = choose_dt(state, control);
            bool land = false;
            if (state.t + dt >= target - 1e-12 * std::max(1.0, std::abs(target))) {
                dt = target - state.t;
                land = true;
            }
            try {
                state = step_fixed(state, params, dt);
            } catch (const Error& e) {
                outcome.status = RunStatus::NumericalBreakdown;
                outcome.message = e.what();
                break;
            }
            if (land) {
                state.t = target;
                ++next_stop;
            }
            ++outcome.steps;
            outcome.final_state = state;
            outcome.t_final = state.t;
            for (const auto& observe : observers) observe(state);

            slope_t.push_back(state.t);
            slope_min.push_back(derivative(state.u).min());
            outcome.min_slope = std::min(outcome.min_slope, slope_min.back());
        }

        if (pinned || slope_min.back() <= control.slope_floor) {
            try {
                outcome.blowup_estimate = fit_blowup(slope_t, slope_min);
                outcome.status = RunStatus::BlowUpDetected;
                outcome.message = pinned ? "step size collapsed to dt_min" : "slope floor reached";
            } catch (const InsufficientAsymptotics& e) {
                outcome.status = RunStatus::NumericalBreakdown;
                outcome.message = std::string("blow-up trigger without Riccati asymptotics: ") + e.what();
            }
            break;
        }
        if (next_stop == stops.size()) break;
    }
    return outcome;
}

}  // namespace ghs
