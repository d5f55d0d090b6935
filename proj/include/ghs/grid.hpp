#pragma once

#include <complex>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

#include "ghs/errors.hpp"

namespace ghs {

/**
 * Uniform discretization of the unit circle R/Z.
 *
 * Points are x_j = j/n for j = 0..n-1. Wavenumbers run over -n/2+1..n/2;
 * the physical angular frequency of mode k is 2*pi*k. The Nyquist mode
 * k = n/2 has no partner and is dropped by every differentiating operator.
 */
class PeriodicGrid {
public:
    static constexpr int kMinPoints = 8;

    // Throws std::invalid_argument unless n is even and >= kMinPoints.
    explicit PeriodicGrid(int n);

    int size() const { return n_; }
    double spacing() const { return 1.0 / n_; }
    double point(int j) const { return static_cast<double>(j) / n_; }
    std::vector<double> points() const;

    int nyquist() const { return n_ / 2; }
    int min_wavenumber() const { return -n_ / 2 + 1; }
    int max_wavenumber() const { return n_ / 2; }
    std::vector<int> wavenumbers() const;

    // Number of stored half-spectrum coefficients (k = 0..n/2).
    int spectrum_size() const { return n_ / 2 + 1; }

    // Largest |k| kept by the 2/3 dealiasing filter: strictly below n/3, so
    // that aliases of products of kept modes land outside the kept band.
    int dealias_cutoff() const { return (n_ - 1) / 3; }

    friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

private:
    int n_;
};

PeriodicGrid make_grid(int n);

/// Real samples of a periodic function on a grid.
class RealField {
public:
    explicit RealField(PeriodicGrid grid);
    RealField(PeriodicGrid grid, std::vector<double> values);

    const PeriodicGrid& grid() const { return grid_; }
    int size() const { return grid_.size(); }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
    double& operator[](int j) { return values_[static_cast<std::size_t>(j)]; }

    bool is_finite() const;
    double max_abs() const;
    double min() const;
    double max() const;
    // Periodic trapezoid quadrature over one period (= mean of the samples).
    double integral() const;

    RealField& operator+=(const RealField& other);
    RealField& operator-=(const RealField& other);
    RealField& operator*=(double s);

private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double s, RealField a);

void require_same_grid(const RealField& a, const RealField& b);

/**
 * Fourier coefficients of a real field, c_k = (1/n) sum_j f_j e^{-2 pi i k x_j}.
 *
 * Only k = 0..n/2 is stored; negative wavenumbers follow from Hermitian
 * symmetry c_{-k} = conj(c_k), so a SpectralField always represents a
 * real-valued function.
 */
class SpectralField {
public:
    explicit SpectralField(PeriodicGrid grid);
    SpectralField(PeriodicGrid grid, std::vector<std::complex<double>> half_spectrum);

    const PeriodicGrid& grid() const { return grid_; }

    // Signed-wavenumber access, k in [-n/2+1, n/2].
    std::complex<double> coeff(int k) const;

    std::span<const std::complex<double>> half_spectrum() const { return coeffs_; }
    std::span<std::complex<double>> half_spectrum() { return coeffs_; }

private:
    PeriodicGrid grid_;
    std::vector<std::complex<double>> coeffs_;
};

/// (alpha, kappa) plus numerics switches. The gauge h(t) is fixed to zero.
struct SystemParams {
    double alpha = -1.0;
    double kappa = 1.0;
    bool dealias = true;

    void validate() const;
};

/// Time plus the solution pair (u, rho) on a shared grid.
struct SimState {
    double t = 0.0;
    RealField u;
    RealField rho;

    SimState(double t, RealField u, RealField rho);

    const PeriodicGrid& grid() const { return u.grid(); }
    bool is_finite() const { return u.is_finite() && rho.is_finite(); }
};

// Closed-form initial-data families. A FunctionDescriptor is a sum of terms.
namespace fn {

struct Constant {
    double value = 0.0;
};
/// amplitude * sin(2 pi frequency x)
struct Sine {
    double amplitude = 1.0;
    int frequency = 1;
};
/// amplitude * cos(2 pi frequency x)
struct Cosine {
    double amplitude = 1.0;
    int frequency = 1;
};
/// scale * (1 - cos(2 pi x)); even about 0 and vanishing there.
struct RaisedCosine {
    double scale = 1.0;
};
/// mean + sum_k cos_coeffs[k-1] cos(2 pi k x) + sin_coeffs[k-1] sin(2 pi k x)
struct FourierSum {
    double mean = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
};

using Term = std::variant<Constant, Sine, Cosine, RaisedCosine, FourierSum>;

}  // namespace fn

struct FunctionDescriptor {
    std::vector<fn::Term> terms;

    FunctionDescriptor() = default;
    template <typename T>
        requires std::is_constructible_v<fn::Term, T>
    FunctionDescriptor(T term) : terms{fn::Term(std::move(term))} {}  // NOLINT(google-explicit-constructor)
    FunctionDescriptor(std::initializer_list<fn::Term> ts) : terms(ts) {}

    double operator()(double x) const;
};

RealField sample(const FunctionDescriptor& f, const PeriodicGrid& grid);

}  // namespace ghs
