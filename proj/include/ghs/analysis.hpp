#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ghs/grid.hpp"

namespace ghs {

// ---------------------------------------------------------------------------
// Slope dynamics at a symmetry point: zeta' = -zeta^2/2 + a.
// ---------------------------------------------------------------------------

enum class RiccatiForm { ZeroForcing, NegHalfForcing, GeneralConstant };

/**
 * Closed-form solution of zeta' = -zeta^2/2 + a with constant a.
 *
 *  a = 0     zeta = 2 zeta0 / (2 + zeta0 t),           T0 = -2/zeta0 if zeta0 < 0
 *  a = -1/2  zeta = tan(atan(zeta0) - t/2),            T0 = pi + 2 atan(zeta0)
 *  a < 0     zeta = c tan(atan(zeta0/c) - c t/2),      c = sqrt(2|a|)
 *  a > 0     zeta = c tanh(c t/2 + atanh(zeta0/c))     for |zeta0| < c
 *            zeta = c coth(c t/2 + acoth(zeta0/c))     for |zeta0| > c
 *
 * T0 is +infinity when the solution exists for all t >= 0.
 */
class RiccatiSolution {
public:
    RiccatiSolution(double zeta0, double a);

    double zeta0() const { return zeta0_; }
    double forcing() const { return a_; }
    RiccatiForm form() const { return form_; }
    double blowup_time() const { return T0_; }
    bool blows_up() const { return T0_ < std::numeric_limits<double>::infinity(); }

    // Throws DomainError for t >= T0.
    double operator()(double t) const;

private:
    double zeta0_;
    double a_;
    RiccatiForm form_;
    double T0_;
};

double riccati_exact(double zeta0, double a, double t);

struct RiccatiSeries {
    std::vector<double> t;
    std::vector<double> zeta;
    bool blew_up = false;
    // First time |zeta| exceeded the blow-up threshold, if it did.
    double blowup_time = std::numeric_limits<double>::infinity();
};

struct RiccatiNumericOptions {
    double tolerance = 1e-10;
    double blowup_threshold = 1e8;
    // Coefficient of zeta^2; alpha/2 in general, -1/2 for alpha = -1.
    double quadratic = -0.5;
};

/**
 * Adaptive (Dormand-Prince) solve of zeta' = q zeta^2 + a(t), reporting zeta
 * at each requested time (sorted ascending, starting at >= 0). Output stops
 * early when |zeta| passes the blow-up threshold.
 */
RiccatiSeries riccati_numeric(double zeta0, const std::function<double(double)>& forcing,
                              std::span<const double> times, const RiccatiNumericOptions& options = {});

// Uniformly sampled variant on [0, horizon].
RiccatiSeries riccati_numeric(double zeta0, const std::function<double(double)>& forcing, double horizon,
                              std::size_t samples, const RiccatiNumericOptions& options = {});

/// Piecewise-linear interpolation of a logged series, held constant outside.
std::function<double(double)> piecewise_linear(std::vector<double> t, std::vector<double> v);

// ---------------------------------------------------------------------------
// Blow-up fit
// ---------------------------------------------------------------------------

/**
 * Sampled slope series against a closed-form solution. Only samples with
 * t < T0 and |exact| <= zeta_cap count. first_miss_abs_zeta is |exact| at the
 * first counted sample whose relative deviation exceeds tolerance (infinity
 * if none does).
 */
struct RiccatiComparison {
    std::size_t samples = 0;
    double max_relative_deviation = 0.0;
    double first_miss_abs_zeta = std::numeric_limits<double>::infinity();
};

RiccatiComparison compare_to_riccati(std::span<const double> t, std::span<const double> zeta,
                                     const RiccatiSolution& exact, double zeta_cap, double tolerance);

struct BlowupFit {
    double T0_est = 0.0;
    // Estimated limit of (T0 - t) zeta(t); -2 at a Riccati blow-up.
    double rate_est = 0.0;
    double window_begin = 0.0;
    double window_end = 0.0;
    // RMS deviation of 1/zeta from the fitted line.
    double residual = 0.0;
    std::size_t samples = 0;
};

inline constexpr double kAsymptoticThreshold = -50.0;

/**
 * Least-squares line through 1/zeta against t over the trailing run of
 * samples with zeta <= threshold. Near blow-up (1/zeta)' -> 1/2, so the root
 * of the line estimates T0 and -1/slope estimates the rate.
 *
 * Throws InsufficientAsymptotics when fewer than three trailing samples
 * reach the threshold or the fitted root does not lie past the window.
 */
BlowupFit fit_blowup(std::span<const double> t, std::span<const double> zeta,
                     double threshold = kAsymptoticThreshold);

// ---------------------------------------------------------------------------
// Origin blow-up hypotheses (alpha = -1, kappa < 0)
// ---------------------------------------------------------------------------

struct HypothesisReport {
    double odd_residual_u = 0.0;     // max_x |u0(x) + u0(-x)|
    double even_residual_rho = 0.0;  // max_x |rho0(x) - rho0(-x)|
    double rho_at_origin = 0.0;
    double zeta0 = 0.0;              // u0_x(0)
    double ux_norm_sq = 0.0;         // ||u0_x||^2
    double rho_norm_sq = 0.0;        // ||rho0||^2
    double a0 = 0.0;                 // -||u0_x||^2/2 - kappa ||rho0||^2/2
    bool symmetric = false;          // u0 odd, rho0 even, rho0(0) = 0, zeta0 < 0
    bool parameters_admissible = false;  // alpha = -1, kappa < 0
    bool energy_condition = false;   // ||u0_x||^2 + kappa ||rho0||^2 >= 0
    bool steep_slope_condition = false;  // zeta0 < -sqrt(2 |a0|)
    bool applicable = false;         // symmetric && admissible && (energy || steep)
    // Exact blow-up time of the origin slope for constant a0 (infinite if none).
    double predicted_T0 = std::numeric_limits<double>::infinity();
    bool predicted_T0_exact = false;  // a0 = 0 or a0 = -1/2
    // (2|a0|)^{-1/2} ln((zeta0 - c)/(zeta0 + c)), present when the steep condition holds.
    std::optional<double> T0_upper_bound;
};

HypothesisReport check_blowup_hypotheses(const RealField& u0, const RealField& rho0, const SystemParams& params,
                                         double symmetry_tolerance = 1e-12);

// ---------------------------------------------------------------------------
// Conservation diagnostics
// ---------------------------------------------------------------------------

/// E = ||u_x||^2 + kappa ||rho||^2
double energy(const SimState& state, const SystemParams& params);

/// -(3/2) kappa (alpha+1) int u_x rho^2 - ((alpha+1)(alpha+2)/2) int u_x^3
double dadt_identity(const SimState& state, const SystemParams& params);

struct RunLogSample {
    double t = 0.0;
    double a = 0.0;
    double energy = 0.0;
    double dadt_identity = 0.0;
};

using RunLog = std::vector<RunLogSample>;

RunLogSample log_sample(const SimState& state, const SystemParams& params);

struct ConservationReport {
    std::vector<double> t;
    std::vector<double> a;
    std::vector<double> energy;
    double max_a_drift = 0.0;       // max |a(t) - a(0)|
    double max_energy_drift = 0.0;  // max |E(t) - E(0)|
    // Interior samples only: centered difference of a(t) minus the identity.
    std::vector<double> dadt_residual;
    double max_dadt_residual = 0.0;
    // max residual / max |identity|; zero when the identity vanishes identically.
    double relative_dadt_residual = 0.0;
};

ConservationReport conservation_report(const RunLog& log, const SystemParams& params);

}  // namespace ghs
