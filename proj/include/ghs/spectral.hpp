#pragma once

#include <cmath>
#include <stdexcept>

#include "ghs/grid.hpp"

namespace ghs {

/// Order s >= 0 of the Sobolev weight (1 + (2 pi k)^2)^s.
class SobolevOrder {
public:
    explicit SobolevOrder(double s) : s_(s) {
        if (!std::isfinite(s) || s < 0.0) throw std::invalid_argument("Sobolev order must be finite and >= 0");
    }
    double value() const { return s_; }

private:
    double s_;
};

SpectralField to_spectral(const RealField& f);
RealField to_physical(const SpectralField& f);

// Spectral derivative, Nyquist mode dropped.
SpectralField derivative(const SpectralField& f);
RealField derivative(const RealField& f);
RealField second_derivative(const RealField& f);

/**
 * F(x) = int_0^x f(y) dy for a mean-free periodic f.
 *
 * F is periodic with F(0) = 0 exactly. Throws NonZeroMean when
 * |mean(f)| > mean_tolerance * max(1, max|f|); the scale factor keeps the
 * test at rounding level when the integrand is large near blow-up.
 */
RealField antiderivative(const RealField& f);

inline constexpr double kMeanTolerance = 1e-10;

/// Zero every mode with |k| > grid.dealias_cutoff().
RealField lowpass(const RealField& f);

/**
 * Pointwise product. With dealias on, both inputs and the result are
 * restricted to |k| <= dealias_cutoff(), which removes every alias of the
 * quadratic interaction (2/3 rule).
 */
RealField product(const RealField& f, const RealField& g, bool dealias = true);

/// (sum_k (1 + (2 pi k)^2)^s |c_k|^2)^{1/2}
double sobolev_norm(const RealField& f, SobolevOrder s);

/**
 * Resolution indicator: the share of the non-mean spectral energy carried by
 * the top third of the kept band, dealias_cutoff()*2/3 < |k| <= n/2. Smooth
 * resolved fields sit near round-off; values above ~1e-8 mean the grid no
 * longer resolves the field. Returns 0 for a constant field.
 */
double spectral_tail(const RealField& f);

/**
 * Trigonometric interpolant of a grid field.
 *
 * Returns the stored sample at grid nodes. The Nyquist coefficient enters as c_{n/2} cos(pi n x),
 * which keeps the interpolant real; derivatives drop it, consistent with
 * derivative().
 */
class Interpolant {
public:
    struct Jet {
        double value = 0.0;
        double d1 = 0.0;
        double d2 = 0.0;
    };

    explicit Interpolant(const RealField& f);
    explicit Interpolant(SpectralField f);

    double operator()(double x) const;
    Jet jet(double x) const;

    const SpectralField& spectrum() const { return coeffs_; }

private:
    SpectralField coeffs_;
    std::vector<double> nodes_;  // empty when built from a spectrum
};

double interpolate(const RealField& f, double x);

}  // namespace ghs
