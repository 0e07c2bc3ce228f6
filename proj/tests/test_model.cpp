// Unit tests for parameters, dispersion and the polariton basis.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "wqed/errors.hpp"
#include "wqed/model.hpp"

using namespace wqed;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

ModelParams params(double omega, double Omega, double G, double g = 1.0) {
    ModelParams p;
    p.omega = omega;
    p.Omega = Omega;
    p.G = G;
    p.g = g;
    return p;
}

// Oracle: roots of lambda^2 - tr lambda + det for [[Omega, G], [G, omega]],
// in long double.
std::pair<long double, long double> char_poly_roots(long double Omega, long double omega, long double G) {
    const long double tr = Omega + omega;
    const long double det = Omega * omega - G * G;
    const long double disc = std::sqrt(tr * tr - 4.0L * det);
    const long double big = tr >= 0 ? 0.5L * (tr + disc) : 0.5L * (tr - disc);
    const long double small = big != 0 ? det / big : 0.0L;
    return tr >= 0 ? std::pair{big, small} : std::pair{small, big};
}

} // namespace

TEST_CASE("effective coupling") {
    SUBCASE("uniform couplings scale as sqrt(N)") {
        const std::vector<std::complex<double>> four(4, 1.0);
        CHECK(effective_coupling(1.0, four) == Approx(2.0).epsilon(1e-15));
        const std::vector<std::complex<double>> one{1.0};
        CHECK(effective_coupling(3.0, one) == 3.0);
        for (long n : {1L, 4L, 9L, 16L}) {
            const std::vector<std::complex<double>> z(static_cast<std::size_t>(n), 1.0);
            CHECK(effective_coupling(0.7, z) / effective_coupling(0.7, one) ==
                  Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-14));
            CHECK(effective_coupling(0.7, n) == Approx(effective_coupling(0.7, z)).epsilon(1e-15));
        }
    }
    SUBCASE("inhomogeneous complex factors") {
        const std::vector<std::complex<double>> z{{0.6, 0.0}, {0.0, 0.8}};
        CHECK(effective_coupling(1.0, z) == Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("invalid input") {
        CHECK_THROWS_AS(effective_coupling(1.0, std::span<const std::complex<double>>{}), InvalidInput);
        const std::vector<std::complex<double>> too_big{{1.1, 0.0}};
        CHECK_THROWS_AS(effective_coupling(1.0, too_big), InvalidInput);
        CHECK_THROWS_AS(effective_coupling(1.0, 0L), InvalidInput);
    }
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(params(3, 2, 3).validate());
    CHECK_THROWS_AS(params(3, 2, 3, 0.0).validate(), InvalidInput);
    CHECK_THROWS_AS(params(3, 2, -1.0).validate(), InvalidInput);
    CHECK_THROWS_AS(params(NAN, 2, 1.0).validate(), InvalidInput);

    const ModelParams scaled = in_units_of_g(params(6.0, 4.0, 6.0, 2.0));
    CHECK(scaled.g == 1.0);
    CHECK(scaled.omega == 3.0);
    CHECK(scaled.Omega == 2.0);
    CHECK(scaled.G == 3.0);
}

TEST_CASE("dispersion") {
    ModelParams p = params(3.0, 0.0, 0.0);
    for (auto sign : {HoppingSign::Plus, HoppingSign::Minus}) {
        p.hopping_sign = sign;
        CHECK(dispersion(p, kPi / 2) == Approx(3.0).epsilon(1e-15));
    }
    p.hopping_sign = HoppingSign::Minus;
    CHECK(dispersion(p, 0.0) == 1.0);
    p.hopping_sign = HoppingSign::Plus;
    CHECK(dispersion(p, 2 * kPi / 3) == Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(dispersion(p, -0.1), InvalidInput);
    CHECK_THROWS_AS(dispersion(p, 3.2), InvalidInput);

    SUBCASE("monotone on [0, pi] and reaches both band edges") {
        for (auto sign : {HoppingSign::Plus, HoppingSign::Minus}) {
            p.hopping_sign = sign;
            const double dir = sign == HoppingSign::Plus ? -1.0 : 1.0;
            double prev = dispersion(p, 0.0);
            for (int i = 1; i <= 200; ++i) {
                const double e = dispersion(p, kPi * i / 200.0);
                CHECK(dir * (e - prev) > 0.0);
                prev = e;
            }
            const double lo = std::min(dispersion(p, 0.0), dispersion(p, kPi));
            const double hi = std::max(dispersion(p, 0.0), dispersion(p, kPi));
            CHECK(lo == p.band_bottom());
            CHECK(hi == p.band_top());
        }
    }
    SUBCASE("conventions are related by k -> pi - k") {
        ModelParams minus = p;
        minus.hopping_sign = HoppingSign::Minus;
        for (double k : {0.3, 1.0, 2.5}) {
            CHECK(dispersion(minus, k) == Approx(dispersion(p, plus_wavenumber(minus, k))).epsilon(1e-14));
        }
    }
}

TEST_CASE("dispersion limits") {
    const ModelParams p = params(3.0, 0.0, 0.0);
    auto exact = [&](double k) { return p.omega - 2.0 * p.g * std::cos(k); };
    CHECK(dispersion_limits(p, 0.0).quadratic == 1.0);
    CHECK(dispersion_limits(p, 0.1).quadratic == Approx(1.01).epsilon(1e-15));
    CHECK(std::abs(dispersion_limits(p, 0.1).quadratic - exact(0.1)) < 1e-4);

    // first-order Taylor about pi/2: remainder shrinks like |k - pi/2|^3
    CHECK(dispersion_limits(p, kPi / 2).linear == Approx(exact(kPi / 2)).epsilon(1e-14));
    double prev = 1.0;
    for (double h : {0.2, 0.1, 0.05, 0.025}) {
        const double err = std::abs(dispersion_limits(p, kPi / 2 + h).linear - exact(kPi / 2 + h));
        CHECK(err < prev);
        CHECK(err == Approx(h * h * h / 3.0).epsilon(0.02));
        prev = err;
    }
}

TEST_CASE("polariton basis: worked cases") {
    SUBCASE("degenerate node") {
        const auto b = polariton_basis(params(5, 5, 3));
        CHECK(b.theta == Approx(kPi / 4).epsilon(1e-15));
        CHECK(b.Omega_plus == Approx(8.0).epsilon(1e-15));
        CHECK(b.Omega_minus == Approx(2.0).epsilon(1e-15));
        CHECK(b.xi_A == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(b.xi_B == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    }
    SUBCASE("atom above the cavity") {
        // mpmath: tests/oracles/oracle_values.py
        const auto b = polariton_basis(params(5, 8, 3));
        CHECK(b.Delta == Approx(std::sqrt(45.0)).epsilon(1e-15));
        CHECK(b.Omega_plus == Approx(9.854101966249685).epsilon(1e-15));
        CHECK(b.Omega_minus == Approx(3.145898033750315).epsilon(1e-15));
        CHECK(b.theta == Approx(0.5535743588970452).epsilon(1e-15));
    }
    SUBCASE("atom below the cavity") {
        const auto b = polariton_basis(params(15, 5, 3));
        CHECK(b.Omega_plus == Approx(15.8309518948453).epsilon(1e-15));
        CHECK(b.Omega_minus == Approx(4.169048105154700).epsilon(1e-15));
        CHECK(b.theta == Approx(1.300586576659605).epsilon(1e-15));
    }
    SUBCASE("decoupled limit picks the continuous angle") {
        CHECK(polariton_basis(params(5, 8, 0)).theta == 0.0);
        CHECK(polariton_basis(params(8, 5, 0)).theta == Approx(kPi / 2).epsilon(1e-15));
        CHECK(polariton_basis(params(5, 8, 1e-9)).theta == Approx(0.0).epsilon(1e-9));
        CHECK(polariton_basis(params(8, 5, 1e-9)).theta == Approx(kPi / 2).epsilon(1e-9));
    }
}

TEST_CASE("polariton basis: invariants over random parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> energy(-10.0, 10.0);
    std::uniform_real_distribution<double> coupling(0.0, 6.0);
    std::uniform_real_distribution<double> hop(0.1, 3.0);
    for (int i = 0; i < 5000; ++i) {
        const ModelParams p = params(energy(rng), energy(rng), coupling(rng), hop(rng));
        const auto b = polariton_basis(p);
        const auto [hi, lo] = char_poly_roots(p.Omega, p.omega, p.G);
        const double scale = std::max({1.0, std::abs(p.Omega), std::abs(p.omega), p.G});

        // a root near zero is only determined to within eps * scale
        CHECK(std::abs(b.Omega_plus - static_cast<double>(hi)) <= 1e-12 * std::abs(static_cast<double>(hi)) + 1e-15 * scale);
        CHECK(std::abs(b.Omega_minus - static_cast<double>(lo)) <= 1e-12 * std::abs(static_cast<double>(lo)) + 1e-15 * scale);
        CHECK(std::abs(b.Omega_plus + b.Omega_minus - (p.Omega + p.omega)) < 1e-13 * scale);
        CHECK(b.Omega_plus - b.Omega_minus == Approx(b.Delta).epsilon(1e-12));
        CHECK(b.Delta >= std::abs(b.delta));
        CHECK(b.xi_A * b.xi_A + b.xi_B * b.xi_B == Approx(p.g * p.g).epsilon(1e-15));
        CHECK(b.theta >= 0.0);
        CHECK(b.theta <= kPi / 2);
        if (p.G > 0.1) {
            CHECK((b.Omega_plus - p.Omega) * (b.Omega_plus - p.omega) == Approx(p.G * p.G).epsilon(1e-10));
        }
        // (cos t, sin t) is the Omega_plus eigenvector of [[Omega, G], [G, omega]]
        const double c = std::cos(b.theta);
        const double s = std::sin(b.theta);
        CHECK(std::abs(p.Omega * c + p.G * s - b.Omega_plus * c) < 1e-12 * scale);
        CHECK(std::abs(p.G * c + p.omega * s - b.Omega_plus * s) < 1e-12 * scale);
    }
}
