// model.cpp: parameters, dispersion and polariton basis

#include "wqed/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidInput(std::string("parameter '") + name + "' must be finite");
    }
}

} // namespace

void ModelParams::validate() const {
    require_finite(omega, "omega");
    require_finite(g, "g");
    require_finite(Omega, "Omega");
    require_finite(G, "G");
    if (!(g > 0.0)) throw InvalidInput("parameter 'g' must be > 0, got " + std::to_string(g));
    if (G < 0.0) throw InvalidInput("parameter 'G' must be >= 0, got " + std::to_string(G));
}

ModelParams in_units_of_g(const ModelParams& p) {
    p.validate();
    ModelParams out = p;
    out.omega = p.omega / p.g;
    out.Omega = p.Omega / p.g;
    out.G = p.G / p.g;
    out.g = 1.0;
    return out;
}

double effective_coupling(double xi, std::span<const std::complex<double>> zeta) {
    if (zeta.empty()) throw InvalidInput("effective_coupling: coupling-factor list is empty");
    if (!(xi >= 0.0) || !std::isfinite(xi)) {
        throw InvalidInput("effective_coupling: xi must be finite and >= 0");
    }
    double weight = 0.0;
    for (std::size_t l = 0; l < zeta.size(); ++l) {
        const double mag2 = std::norm(zeta[l]);
        // small slack so that values like 0.6 + 0.8i read from text are accepted
        if (!std::isfinite(mag2) || mag2 > 1.0 + 1e-12) {
            throw InvalidInput("effective_coupling: |zeta| > 1 at entry " + std::to_string(l));
        }
        weight += mag2;
    }
    return xi * std::sqrt(weight);
}

double effective_coupling(double xi, long n_atoms) {
    if (n_atoms < 1) throw InvalidInput("effective_coupling: number of atoms must be >= 1");
    if (!(xi >= 0.0) || !std::isfinite(xi)) {
        throw InvalidInput("effective_coupling: xi must be finite and >= 0");
    }
    return xi * std::sqrt(static_cast<double>(n_atoms));
}

double plus_wavenumber(const ModelParams& p, double k) {
    return p.hopping_sign == HoppingSign::Plus ? k : std::numbers::pi - k;
}

double dispersion(const ModelParams& p, double k) {
    if (!(k >= 0.0 && k <= std::numbers::pi)) {
        throw InvalidInput("dispersion: wavenumber must lie in [0, pi], got " + std::to_string(k));
    }
    const double c = 2.0 * p.g * std::cos(k);
    return p.hopping_sign == HoppingSign::Plus ? p.omega + c : p.omega - c;
}

DispersionLimits dispersion_limits(const ModelParams& p, double k) {
    return {p.omega - 2.0 * p.g + p.g * k * k,
            p.omega - std::numbers::pi * p.g + 2.0 * p.g * k};
}

PolaritonBasis polariton_basis(const ModelParams& p) {
    PolaritonBasis b;
    b.delta = p.Omega - p.omega;
    b.Delta = std::hypot(b.delta, 2.0 * p.G);

    // tan(theta) = (Delta - delta) / (2G) = 2G / (Delta + delta); pick the
    // form without cancellation. At G = 0 this gives 0 for delta > 0 and pi/2
    // for delta < 0.
    if (b.delta > 0.0) {
        b.theta = std::atan2(2.0 * p.G, b.Delta + b.delta);
    } else if (b.delta < 0.0) {
        b.theta = std::atan2(b.Delta - b.delta, 2.0 * p.G);
    } else {
        b.theta = std::numbers::pi / 4.0;
    }

    // The larger-magnitude root from the half-sum, the other from the
    // determinant, so neither suffers cancellation.
    const double trace = p.Omega + p.omega;
    const double det = p.Omega * p.omega - p.G * p.G;
    if (trace >= 0.0) {
        b.Omega_plus = 0.5 * (trace + b.Delta);
        b.Omega_minus = b.Omega_plus != 0.0 ? det / b.Omega_plus : 0.0;
    } else {
        b.Omega_minus = 0.5 * (trace - b.Delta);
        b.Omega_plus = b.Omega_minus != 0.0 ? det / b.Omega_minus : 0.0;
    }

    b.xi_A = p.g * std::sin(b.theta);
    b.xi_B = p.g * std::cos(b.theta);
    return b;
}

} // namespace wqed
