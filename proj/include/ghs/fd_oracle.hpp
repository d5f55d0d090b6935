#pragma once

#include "ghs/evolution.hpp"
#include "ghs/grid.hpp"

// Second-order finite-difference twin of the spectral solver, for
// cross-validation only. Nothing here calls into spectral.hpp.
namespace ghs::fd {

/// Centered difference (f_{j+1} - f_{j-1}) / (2 dx).
RealField central_difference(const RealField& f);

/// Cumulative trapezoid from x = 0; assumes a mean-free integrand.
RealField cumulative_trapezoid(const RealField& f);

Tendency fd_rhs(const SimState& state, const SystemParams& params);

/**
 * Fixed-step RK4 to the horizon; the last step is shortened to land on it.
 * The caller is responsible for a stable dt (roughly dt < dx / max|u| and
 * dt < 1 / max|u_x|). Throws NumericalBreakdown on non-finite values.
 */
SimState fd_run(const SimState& initial, const SystemParams& params, double dt, double horizon);

}  // namespace ghs::fd
