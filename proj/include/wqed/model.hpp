// model.hpp: physical parameters, lattice dispersion and the dressed node
//
// All energies are in the same unit as the hopping g (the CLI normalizes to
// g = 1). The waveguide is an infinite chain of identical resonators with
// frequency omega and nearest-neighbour hopping g. Resonator 0 holds the
// atomic ensemble, represented by a single collective mode of frequency Omega
// coupled to the resonator with strength G = xi * sqrt(N).

#pragma once

#include <complex>
#include <span>

namespace wqed {

/// Sign of the hopping term, which fixes the dispersion convention.
///
/// Plus:  E(k) = omega + 2 g cos k  (used by every solver in this library)
/// Minus: E(k) = omega - 2 g cos k
///
/// The two are related by k -> pi - k. Functions that take a wavenumber read it
/// in the convention stored on ModelParams and convert with plus_wavenumber().
enum class HoppingSign { Plus, Minus };

struct ModelParams {
    double omega{0.0};   // bare resonator frequency
    double g{1.0};       // hopping magnitude, > 0
    double Omega{0.0};   // atomic level spacing
    double G{0.0};       // collective coupling xi * sqrt(N(zeta)), >= 0
    HoppingSign hopping_sign{HoppingSign::Plus};

    /// Throws InvalidInput unless g > 0, G >= 0 and all fields are finite.
    void validate() const;

    double band_bottom() const { return omega - 2.0 * g; }
    double band_top() const { return omega + 2.0 * g; }
    bool in_band(double E) const { return E > band_bottom() && E < band_top(); }
};

/// Same physics expressed in units of g (g becomes 1).
ModelParams in_units_of_g(const ModelParams& p);

/// Dressed states of resonator 0 and the collective atomic mode.
///
/// A = a cos(theta) + b0 sin(theta) has energy Omega_plus,
/// B = a sin(theta) - b0 cos(theta) has energy Omega_minus.
struct PolaritonBasis {
    double delta{0.0};        // Omega - omega
    double Delta{0.0};        // sqrt(delta^2 + 4 G^2)
    double theta{0.0};        // mixing angle in [0, pi/2]
    double Omega_plus{0.0};
    double Omega_minus{0.0};
    double xi_A{0.0};         // g sin(theta)
    double xi_B{0.0};         // g cos(theta)
};

/// G = xi * sqrt(sum |zeta_l|^2). Throws InvalidInput on an empty list,
/// negative xi or |zeta_l| > 1.
double effective_coupling(double xi, std::span<const std::complex<double>> zeta);

/// G for N atoms with uniform unit coupling factors, xi * sqrt(N).
double effective_coupling(double xi, long n_atoms);

/// Map a wavenumber given in p.hopping_sign's convention to the Plus convention.
double plus_wavenumber(const ModelParams& p, double k);

/// Band energy at wavenumber k in [0, pi], in p.hopping_sign's convention.
/// Throws InvalidInput for k outside [0, pi].
double dispersion(const ModelParams& p, double k);

struct DispersionLimits {
    double quadratic;  // omega - 2g + g k^2, expansion about k = 0
    double linear;     // omega - pi g + 2 g k, expansion about k = pi/2
};

/// Long- and short-wavelength approximations of the Minus-convention band
/// omega - 2g cos k. The linear form is the first-order Taylor expansion about
/// the band centre k = pi/2 (error O((k - pi/2)^3)).
DispersionLimits dispersion_limits(const ModelParams& p, double k);

PolaritonBasis polariton_basis(const ModelParams& p);

} // namespace wqed
