#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "ghs/analysis.hpp"
#include "ghs/grid.hpp"

namespace ghs {

/// Adaptive step-size and blow-up stopping thresholds.
struct StepControl {
    double cfl = 0.3;
    double dt_min = 1e-9;
    double dt_max = 1e-2;
    // Run stops with BlowUpDetected once min_x u_x falls to this value.
    double slope_floor = -1e6;
    // When false every step uses dt_max (for convergence studies).
    bool adaptive = true;

    void validate() const;
};

enum class RunStatus { CompletedHorizon, BlowUpDetected, NumericalBreakdown };

const char* to_string(RunStatus status);

struct RunOutcome {
    RunStatus status = RunStatus::CompletedHorizon;
    double t_final = 0.0;
    // Present whenever status == BlowUpDetected.
    std::optional<BlowupFit> blowup_estimate;
    SimState final_state;
    std::size_t steps = 0;
    double min_slope = 0.0;  // extremum of min_x u_x over the trajectory
    std::string message;
};

/// du/dt and drho/dt of the integrated system.
struct Tendency {
    RealField du_dt;
    RealField drho_dt;
};

/// a = -(kappa/2) int rho^2 - ((alpha+2)/2) int u_x^2, by periodic quadrature.
double compute_a(const SimState& state, const SystemParams& params);

/**
 * Right-hand side with gauge h = 0:
 *   u_t   = -u u_x + d_x^{-1}( (kappa/2) rho^2 + ((alpha+2)/2) u_x^2 + a )
 *   rho_t = alpha u_x rho - u rho_x
 *
 * a is recomputed from the same (dealiased) products that form the
 * integrand, so the integrand is mean-free to rounding. Propagates
 * NonZeroMean if that ever fails.
 */
Tendency rhs(const SimState& state, const SystemParams& params);

/// cfl * min(dx / (|u|_inf + eps), 1 / (|u_x|_inf + eps)), unclamped.
double cfl_dt(const SimState& state, const StepControl& control);

/// Step size actually taken by step(): cfl_dt clamped to [dt_min, dt_max],
/// or dt_max when adaptive control is off.
double choose_dt(const SimState& state, const StepControl& control);

/// One classical RK4 step of size dt. Throws NumericalBreakdown on non-finite output.
SimState step_fixed(const SimState& state, const SystemParams& params, double dt);

SimState step(const SimState& state, const SystemParams& params, const StepControl& control);

// Invoked after every accepted step with the new state.
using Observer = std::function<void(const SimState&)>;

/**
 * Advance until horizon, blow-up, or breakdown.
 *
 * Steps are shortened so the trajectory lands exactly on every checkpoint
 * time in (initial.t, horizon] and on the horizon itself. Blow-up is
 * declared when min_x u_x <= slope_floor or the CFL step collapses to
 * dt_min; the blow-up estimate is fitted to the min-slope history. If that
 * fit fails the run is reported as NumericalBreakdown instead.
 */
RunOutcome run(const SimState& initial, const SystemParams& params, const StepControl& control, double horizon,
               std::span<const Observer> observers = {}, std::span<const double> checkpoints = {});

}  // namespace ghs
