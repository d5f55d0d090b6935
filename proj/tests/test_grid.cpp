#include "doctest.h"

#include <complex>
#include <stdexcept>

#include "ghs/grid.hpp"
#include "ghs/spectral.hpp"
#include "helpers.hpp"

using namespace ghs;
using ghs::test::pi;

TEST_CASE("make_grid builds uniform points on the unit circle") {
    const PeriodicGrid g = make_grid(8);
    const auto x = g.points();
    REQUIRE(x.size() == 8);
    for (int j = 0; j < 8; ++j) CHECK(x[static_cast<std::size_t>(j)] == doctest::Approx(0.125 * j));
    CHECK(g.spacing() == 0.125);
}

TEST_CASE("make_grid rejects odd or tiny sizes") {
    CHECK_THROWS_AS(make_grid(7), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(6), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0), std::invalid_argument);
    CHECK_NOTHROW(make_grid(8));
}

TEST_CASE("n = 256 stores wavenumbers -127..128") {
    const PeriodicGrid g = make_grid(256);
    const auto k = g.wavenumbers();
    REQUIRE(k.size() == 256);
    CHECK(g.min_wavenumber() == -127);
    CHECK(g.max_wavenumber() == 128);
    CHECK(g.nyquist() == 128);
    CHECK(g.spectrum_size() == 129);
    CHECK(g.dealias_cutoff() == 85);

    // The Nyquist mode is zeroed by differentiation.
    const RealField alternating = sample(fn::Cosine{1.0, 128}, g);
    CHECK(derivative(alternating).max_abs() == 0.0);
}

TEST_CASE("sample evaluates the built-in families") {
    const PeriodicGrid g = make_grid(8);

    SUBCASE("sine") {
        const RealField f = sample(fn::Sine{-1.0, 1}, g);
        for (int j = 0; j < 8; ++j) CHECK(f[j] == doctest::Approx(-std::sin(2 * pi * g.point(j))));
    }
    SUBCASE("constant") {
        const RealField f = sample(fn::Constant{0.5}, g);
        for (double v : f.values()) CHECK(v == 0.5);
    }
    SUBCASE("raised cosine is even and vanishes at 0") {
        const RealField f = sample(fn::RaisedCosine{1.7}, g);
        CHECK(f[0] == 0.0);
        for (int j = 1; j < 8; ++j) {
            CHECK(f[j] == doctest::Approx(1.7 * (1 - std::cos(2 * pi * g.point(j)))));
            CHECK(f[j] == doctest::Approx(f[8 - j]));
        }
    }
    SUBCASE("sums of terms and Fourier sums") {
        const FunctionDescriptor d{fn::Constant{1.0}, fn::Cosine{0.5, 1},
                                   fn::FourierSum{0.25, {0.0, 2.0}, {3.0}}};
        const RealField f = sample(d, g);
        for (int j = 0; j < 8; ++j) {
            const double x = g.point(j);
            const double expect = 1.0 + 0.5 * std::cos(2 * pi * x) + 0.25 + 2.0 * std::cos(4 * pi * x) +
                                  3.0 * std::sin(2 * pi * x);
            CHECK(f[j] == doctest::Approx(expect));
        }
    }
}

TEST_CASE("fields on different grids do not mix") {
    const RealField a(make_grid(8));
    const RealField b(make_grid(16));
    CHECK_THROWS_AS(require_same_grid(a, b), GridMismatch);
    CHECK_THROWS_AS(a + b, GridMismatch);
    CHECK_THROWS_AS(SimState(0.0, a, b), GridMismatch);
    CHECK_THROWS_AS(RealField(make_grid(8), std::vector<double>(7)), GridMismatch);
}

TEST_CASE("RealField detects non-finite corruption") {
    RealField f(make_grid(8));
    CHECK(f.is_finite());
    f[3] = std::nan("");
    CHECK_FALSE(f.is_finite());
    f[3] = INFINITY;
    CHECK_FALSE(f.is_finite());
}

TEST_CASE("SystemParams rejects non-finite coefficients") {
    CHECK_NOTHROW(SystemParams{}.validate());
    CHECK_THROWS_AS((SystemParams{INFINITY, 1.0, true}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SystemParams{-1.0, std::nan(""), true}.validate()), std::invalid_argument);
}

TEST_CASE("SpectralField is Hermitian") {
    const PeriodicGrid g = make_grid(16);
    const SpectralField s = to_spectral(test::random_field(g, 7, 3));
    for (int k = 1; k < 8; ++k) CHECK(std::abs(s.coeff(-k) - std::conj(s.coeff(k))) == 0.0);
    CHECK(s.coeff(0).imag() == 0.0);
    CHECK_THROWS_AS(s.coeff(9), std::out_of_range);
}

TEST_CASE("property: physical-spectral round trip") {
    for (int n : {8, 64, 256}) {
        const PeriodicGrid g = make_grid(n);
        for (unsigned seed = 0; seed < 20; ++seed) {
            std::mt19937 rng(seed);
            std::uniform_real_distribution<double> unif(-5.0, 5.0);
            RealField f(g);
            for (double& v : f.values()) v = unif(rng);
            const RealField back = to_physical(to_spectral(f));
            CHECK(test::max_diff(back, f) <= 1e-12 * f.max_abs());
        }
    }
}

TEST_CASE("property: Parseval") {
    for (int n : {8, 64, 256}) {
        const PeriodicGrid g = make_grid(n);
        for (unsigned seed = 0; seed < 20; ++seed) {
            std::mt19937 rng(100 + seed);
            std::normal_distribution<double> normal;
            RealField f(g);
            for (double& v : f.values()) v = normal(rng);
            double physical = 0.0;
            for (double v : f.values()) physical += v * v;
            physical /= n;
            const SpectralField s = to_spectral(f);
            double spectral = 0.0;
            for (int k = g.min_wavenumber(); k <= g.max_wavenumber(); ++k) spectral += std::norm(s.coeff(k));
            CHECK(spectral == doctest::Approx(physical).epsilon(1e-12));
        }
    }
}
