#include "ghs/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace ghs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe, execution with the new-array API is.
// Plans are created once per size under a lock and never destroyed.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

const PlanPair& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<PlanPair>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<PlanPair>();
        std::vector<double> real(static_cast<std::size_t>(n));
        std::vector<std::complex<double>> cplx(static_cast<std::size_t>(n / 2 + 1));
        auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        slot->forward = fftw_plan_dft_r2c_1d(n, real.data(), c, flags);
        slot->backward = fftw_plan_dft_c2r_1d(n, c, real.data(), flags);
    }
    return *slot;
}

}  // namespace

SpectralField to_spectral(const RealField& f) {
    const int n = f.size();
    std::vector<double> in(f.values().begin(), f.values().end());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
    fftw_execute_dft_r2c(plans_for(n).forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / n;
    for (auto& c : out) c *= scale;
    return SpectralField(f.grid(), std::move(out));
}

RealField to_physical(const SpectralField& f) {
    const int n = f.grid().size();
    // c2r overwrites its input.
    std::vector<std::complex<double>> in(f.half_spectrum().begin(), f.half_spectrum().end());
    in.front().imag(0.0);
    in.back().imag(0.0);
    std::vector<double> out(static_cast<std::size_t>(n));
    fftw_execute_dft_c2r(plans_for(n).backward, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    return RealField(f.grid(), std::move(out));
}

SpectralField derivative(const SpectralField& f) {
    SpectralField out(f.grid());
    auto src = f.half_spectrum();
    auto dst = out.half_spectrum();
    const int nyq = f.grid().nyquist();
    for (int k = 1; k < nyq; ++k) {
        dst[static_cast<std::size_t>(k)] = std::complex<double>(0.0, kTwoPi * k) * src[static_cast<std::size_t>(k)];
    }
    return out;
}

RealField derivative(const RealField& f) { return to_physical(derivative(to_spectral(f))); }

RealField second_derivative(const RealField& f) {
    return to_physical(derivative(derivative(to_spectral(f))));
}

RealField antiderivative(const RealField& f) {
    SpectralField spec = to_spectral(f);
    auto c = spec.half_spectrum();
    const double mean = c[0].real();
    const double tol = kMeanTolerance * std::max(1.0, f.max_abs());
    if (std::abs(mean) > tol) {
        std::ostringstream msg;
        msg << "antiderivative of a field with mean " << mean << " (tolerance " << tol << ")";
        throw NonZeroMean(msg.str());
    }
    const int nyq = f.grid().nyquist();
    c[0] = 0.0;
    for (int k = 1; k < nyq; ++k) {
        c[static_cast<std::size_t>(k)] /= std::complex<double>(0.0, kTwoPi * k);
    }
    c[static_cast<std::size_t>(nyq)] = 0.0;
    RealField out = to_physical(spec);
    const double at_origin = out[0];
    for (double& v : out.values()) v -= at_origin;
    return out;
}

namespace {

void truncate(SpectralField& spec) {
    auto c = spec.half_spectrum();
    const auto cutoff = static_cast<std::size_t>(spec.grid().dealias_cutoff());
    for (std::size_t k = cutoff + 1; k < c.size(); ++k) c[k] = 0.0;
}

}  // namespace

RealField lowpass(const RealField& f) {
    SpectralField spec = to_spectral(f);
    truncate(spec);
    return to_physical(spec);
}

RealField product(const RealField& f, const RealField& g, bool dealias) {
    require_same_grid(f, g);
    if (!dealias) {
        RealField out(f.grid());
        for (int j = 0; j < f.size(); ++j) out[j] = f[j] * g[j];
        return out;
    }
    const RealField lf = lowpass(f);
    const RealField lg = lowpass(g);
    RealField out(f.grid());
    for (int j = 0; j < f.size(); ++j) out[j] = lf[j] * lg[j];
    return lowpass(out);
}

double sobolev_norm(const RealField& f, SobolevOrder s) {
    const SpectralField spec = to_spectral(f);
    auto c = spec.half_spectrum();
    const int nyq = f.grid().nyquist();
    double sum = std::norm(c[0]);
    for (int k = 1; k <= nyq; ++k) {
        const double wk = kTwoPi * k;
        const double weight = std::pow(1.0 + wk * wk, s.value());
        const double mult = (k == nyq) ? 1.0 : 2.0;
        sum += mult * weight * std::norm(c[static_cast<std::size_t>(k)]);
    }
    return std::sqrt(sum);
}

double spectral_tail(const RealField& f) {
    const SpectralField spec = to_spectral(f);
    auto c = spec.half_spectrum();
    const int nyq = f.grid().nyquist();
    const int edge = 2 * f.grid().dealias_cutoff() / 3;
    double total = 0.0;
    double tail = 0.0;
    for (int k = 1; k <= nyq; ++k) {
        const double e = std::norm(c[static_cast<std::size_t>(k)]);
        total += e;
        if (k > edge) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

Interpolant::Interpolant(const RealField& f)
    : coeffs_(to_spectral(f)), nodes_(f.values().begin(), f.values().end()) {}
Interpolant::Interpolant(SpectralField f) : coeffs_(std::move(f)) {}

double Interpolant::operator()(double x) const {
    if (!nodes_.empty()) {
        const int n = coeffs_.grid().size();
        const double scaled = (x - std::floor(x)) * n;
        if (scaled == std::floor(scaled)) return nodes_[static_cast<std::size_t>(scaled) % nodes_.size()];
    }
    return jet(x).value;
}

Interpolant::Jet Interpolant::jet(double x) const {
    auto c = coeffs_.half_spectrum();
    const int nyq = coeffs_.grid().nyquist();
    const double theta = kTwoPi * x;
    const std::complex<double> step(std::cos(theta), std::sin(theta));
    std::complex<double> e = step;

    Jet out;
    out.value = c[0].real();
    for (int k = 1; k < nyq; ++k) {
        const std::complex<double> term = c[static_cast<std::size_t>(k)] * e;
        const double wk = kTwoPi * k;
        // 2 Re(c e), 2 Re(i w c e), 2 Re(-w^2 c e)
        out.value += 2.0 * term.real();
        out.d1 -= 2.0 * wk * term.imag();
        out.d2 -= 2.0 * wk * wk * term.real();
        e *= step;
        // Renormalize periodically to stop |e| drifting from 1.
        if ((k & 31) == 0) e /= std::abs(e);
    }
    out.value += c[static_cast<std::size_t>(nyq)].real() * std::cos(std::numbers::pi * coeffs_.grid().size() * x);
    return out;
}

double interpolate(const RealField& f, double x) { return Interpolant(f)(x); }

}  // namespace ghs
