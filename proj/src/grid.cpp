#include "ghs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ghs {

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
    if (n < kMinPoints || n % 2 != 0) {
        throw std::invalid_argument("grid size must be even and >= " + std::to_string(kMinPoints) +
                                    ", got " + std::to_string(n));
    }
}

std::vector<double> PeriodicGrid::points() const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) x[static_cast<std::size_t>(j)] = point(j);
    return x;
}

std::vector<int> PeriodicGrid::wavenumbers() const {
    std::vector<int> k;
    k.reserve(static_cast<std::size_t>(n_));
    for (int m = min_wavenumber(); m <= max_wavenumber(); ++m) k.push_back(m);
    return k;
}

PeriodicGrid make_grid(int n) { return PeriodicGrid(n); }

RealField::RealField(PeriodicGrid grid)
    : grid_(grid), values_(static_cast<std::size_t>(grid.size()), 0.0) {}

RealField::RealField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid_.size())) {
        throw GridMismatch("field has " + std::to_string(values_.size()) + " samples, grid has " +
                           std::to_string(grid_.size()));
    }
}

bool RealField::is_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double RealField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double RealField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double RealField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double RealField::integral() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / grid_.size();
}

RealField& RealField::operator+=(const RealField& other) {
    require_same_grid(*this, other);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

RealField& RealField::operator-=(const RealField& other) {
    require_same_grid(*this, other);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

RealField& RealField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double s, RealField a) { return a *= s; }

void require_same_grid(const RealField& a, const RealField& b) {
    if (a.grid() != b.grid()) {
        throw GridMismatch("fields live on different grids (n=" + std::to_string(a.size()) +
                           " vs n=" + std::to_string(b.size()) + ")");
    }
}

SpectralField::SpectralField(PeriodicGrid grid)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.spectrum_size())) {}

SpectralField::SpectralField(PeriodicGrid grid, std::vector<std::complex<double>> half_spectrum)
    : grid_(grid), coeffs_(std::move(half_spectrum)) {
    if (coeffs_.size() != static_cast<std::size_t>(grid_.spectrum_size())) {
        throw GridMismatch("half spectrum length does not match grid");
    }
}

std::complex<double> SpectralField::coeff(int k) const {
    if (k < grid_.min_wavenumber() || k > grid_.max_wavenumber()) {
        throw std::out_of_range("wavenumber " + std::to_string(k) + " outside grid band");
    }
    if (k >= 0) return coeffs_[static_cast<std::size_t>(k)];
    return std::conj(coeffs_[static_cast<std::size_t>(-k)]);
}

void SystemParams::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(kappa)) {
        throw std::invalid_argument("alpha and kappa must be finite");
    }
}

SimState::SimState(double t_, RealField u_, RealField rho_)
    : t(t_), u(std::move(u_)), rho(std::move(rho_)) {
    require_same_grid(u, rho);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct TermEvaluator {
    double x;

    double operator()(const fn::Constant& c) const { return c.value; }
    double operator()(const fn::Sine& s) const { return s.amplitude * std::sin(kTwoPi * s.frequency * x); }
    double operator()(const fn::Cosine& c) const { return c.amplitude * std::cos(kTwoPi * c.frequency * x); }
    double operator()(const fn::RaisedCosine& r) const { return r.scale * (1.0 - std::cos(kTwoPi * x)); }
    double operator()(const fn::FourierSum& f) const {
        double v = f.mean;
        for (std::size_t k = 0; k < f.cos_coeffs.size(); ++k) {
            v += f.cos_coeffs[k] * std::cos(kTwoPi * static_cast<double>(k + 1) * x);
        }
        for (std::size_t k = 0; k < f.sin_coeffs.size(); ++k) {
            v += f.sin_coeffs[k] * std::sin(kTwoPi * static_cast<double>(k + 1) * x);
        }
        return v;
    }
};

}  // namespace

double FunctionDescriptor::operator()(double x) const {
    double v = 0.0;
    for (const auto& term : terms) v += std::visit(TermEvaluator{x}, term);
    return v;
}

RealField sample(const FunctionDescriptor& f, const PeriodicGrid& grid) {
    RealField out(grid);
    for (int j = 0; j < grid.size(); ++j) out[j] = f(grid.point(j));
    return out;
}

}  // namespace ghs
