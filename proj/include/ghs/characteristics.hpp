#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ghs/grid.hpp"

namespace ghs {

/**
 * Lagrangian particles phi(t, x_i) with their Jacobians and the field values
 * sampled along each path:
 *   M = u_x(t, phi), gamma = rho(t, phi), N = u_xx(t, phi), varpi = rho_x(t, phi).
 *
 * phi is stored unwrapped (it is not reduced mod 1), so particle order and
 * the circle-diffeomorphism property can be read off directly.
 */
struct CharacteristicEnsemble {
    double t = 0.0;
    std::vector<double> seeds;
    std::vector<double> phi;
    std::vector<double> phi_x;
    std::vector<double> M;
    std::vector<double> gamma;
    std::vector<double> N;
    std::vector<double> varpi;

    // gamma at t = 0, i.e. rho0 at the seeds.
    std::vector<double> gamma0;
    // int_0^t M ds per particle, accumulated from the logged M samples with
    // the endpoint-corrected trapezoid rule (uses M_t along the path).
    std::vector<double> slope_integral;
    // M_t = (alpha/2) M^2 + (kappa/2) gamma^2 + a at the current time.
    std::vector<double> slope_rate;

    std::size_t size() const { return seeds.size(); }
};

/// Ensemble at state.t with phi = seeds. Empty seeds means the grid nodes.
CharacteristicEnsemble seed_ensemble(const SimState& state, const SystemParams& params,
                                     std::vector<double> seeds = {});

enum class TimeReconstruction {
    // u(t) linear between the two accepted states.
    Linear,
    // Cubic Hermite in time using du/dt at both ends.
    CubicHermite,
};

/**
 * One RK4 step of phi' = u(t, phi), phi_x' = u_x(t, phi) phi_x from
 * from.t to to.t, with u evaluated by trigonometric interpolation of a
 * time reconstruction between the two accepted Eulerian states.
 *
 * Throws InterpolationOutOfSync unless ensemble.t == from.t.
 */
CharacteristicEnsemble advect(const CharacteristicEnsemble& ensemble, const SimState& from, const SimState& to,
                              const SystemParams& params, TimeReconstruction mode = TimeReconstruction::CubicHermite);

/// max_i |gamma_i - gamma0_i phi_x,i^alpha|
double check_transport_identity(const CharacteristicEnsemble& ensemble, std::span<const double> rho0_at_seeds,
                                double alpha);

/// max_i |phi_x,i - exp(int M)| / exp(int M)
double jacobian_exponential_gap(const CharacteristicEnsemble& ensemble);

/// All phi_x > 0 and the images strictly ordered around the circle.
bool is_orientation_preserving(const CharacteristicEnsemble& ensemble);

/// Observer that advects an ensemble alongside a run.
class CharacteristicTracker {
public:
    CharacteristicTracker(const SimState& initial, const SystemParams& params, std::vector<double> seeds = {},
                          TimeReconstruction mode = TimeReconstruction::CubicHermite);

    void observe(const SimState& state);

    const CharacteristicEnsemble& ensemble() const { return ensemble_; }
    const std::vector<double>& rho0_at_seeds() const { return ensemble_.gamma0; }
    // Smallest phi_x seen at any accepted step.
    double min_phi_x() const { return min_phi_x_; }
    bool always_orientation_preserving() const { return always_ordered_; }

private:
    SystemParams params_;
    TimeReconstruction mode_;
    SimState previous_;
    CharacteristicEnsemble ensemble_;
    double min_phi_x_;
    bool always_ordered_ = true;
};

// ---------------------------------------------------------------------------
// Auxiliary-function monitor
// ---------------------------------------------------------------------------

enum class AuxiliaryKind {
    // w = kappa gamma0 gamma + (gamma0/gamma)(1 + M^2), envelope exp((1 + 2|a|) t)
    WAlphaMinus1,
    // w~ = kappa gamma0^2 + 1 + M^2, envelope exp(int (kappa gamma^2/2 + |a|) ds)
    WtildeAlpha0,
};

/**
 * Streams ensembles through time and tracks the worst ratio
 * w(t,x) / (w(0,x) envelope(t,x)) over all particles and times. A ratio at
 * or below one certifies the Gronwall bound numerically.
 *
 * The constructor checks the hypotheses: alpha = -1 (resp. 0), kappa > 0
 * (std::invalid_argument), and a sign-definite gamma0 (SignConditionViolated).
 */
class AuxiliaryMonitor {
public:
    AuxiliaryMonitor(AuxiliaryKind kind, const CharacteristicEnsemble& initial, const SystemParams& params, double a0);

    void observe(const CharacteristicEnsemble& ensemble, double a);

    AuxiliaryKind kind() const { return kind_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& initial_values() const { return initial_; }
    double worst_ratio() const { return worst_ratio_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& worst_ratio_history() const { return ratio_history_; }
    double min_value() const { return min_value_; }

private:
    std::vector<double> evaluate(const CharacteristicEnsemble& e) const;
    std::vector<double> exponent_rate(const CharacteristicEnsemble& e, double a) const;

    AuxiliaryKind kind_;
    double kappa_;
    double t_;
    std::vector<double> initial_;
    std::vector<double> values_;
    std::vector<double> exponent_;
    std::vector<double> last_rate_;
    double worst_ratio_ = 1.0;
    double min_value_;
    std::vector<double> times_;
    std::vector<double> ratio_history_;
};

/// Batch form over a recorded history; a_history[i] belongs to history[i].
AuxiliaryMonitor monitor_auxiliary(AuxiliaryKind kind, std::span<const CharacteristicEnsemble> history,
                                   const SystemParams& params, std::span<const double> a_history);

// ---------------------------------------------------------------------------
// Origin slope
// ---------------------------------------------------------------------------

struct OriginSlopeSeries {
    std::vector<double> t;
    std::vector<double> zeta;        // u_x(t, 0)
    std::vector<double> rho_origin;  // rho(t, 0)
    std::vector<double> a;           // a(t), for feeding the Riccati oracle
};

OriginSlopeSeries track_origin_slope(std::span<const SimState> history, const SystemParams& params);

class OriginSlopeTracker {
public:
    OriginSlopeTracker(const SimState& initial, const SystemParams& params);
    void observe(const SimState& state);
    const OriginSlopeSeries& series() const { return series_; }

private:
    SystemParams params_;
    OriginSlopeSeries series_;
};

}  // namespace ghs
