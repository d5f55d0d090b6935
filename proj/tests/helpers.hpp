#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "ghs/grid.hpp"

namespace ghs::test {

inline constexpr double pi = std::numbers::pi;

// Random real trigonometric polynomial with modes |k| <= kmax, fixed seed.
inline RealField random_field(const PeriodicGrid& g, int kmax, unsigned seed, double mean = 0.0) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    FunctionDescriptor f;
    fn::FourierSum sum{mean, {}, {}};
    for (int k = 1; k <= kmax; ++k) {
        const double decay = std::exp(-0.2 * k);
        sum.cos_coeffs.push_back(decay * normal(rng));
        sum.sin_coeffs.push_back(decay * normal(rng));
    }
    f.terms.push_back(sum);
    return sample(f, g);
}

inline double max_diff(const RealField& a, const RealField& b) { return (a - b).max_abs(); }

// A4-style smooth data: u0 = 0.1 sin(2 pi x), rho0 = 0.5 + 0.1 cos(2 pi x).
inline SimState smooth_state(int n) {
    const PeriodicGrid g(n);
    return SimState(0.0, sample(fn::Sine{0.1, 1}, g), sample(FunctionDescriptor{fn::Constant{0.5}, fn::Cosine{0.1, 1}}, g));
}

// Symmetric blow-up data with a(0) = 0 and T0 = 1/pi.
inline SimState zero_forcing_state(int n) {
    const PeriodicGrid g(n);
    return SimState(0.0, sample(fn::Sine{-1.0, 1}, g), sample(fn::RaisedCosine{2.0 * pi / std::sqrt(3.0)}, g));
}

}  // namespace ghs::test
