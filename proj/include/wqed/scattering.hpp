// scattering.hpp: single-photon scattering off the dressed node
//
// A photon of wavenumber k in (0, pi) is scattered by resonator 0. Away from
// the node the amplitudes are plane waves,
//
//   u_j = e^{ikj} + r e^{-ikj}   (j <= -1)
//   u_j = s e^{ikj}              (j >= 1)
//
// and at the node the photon is shared between the polaritons A and B with
// amplitudes u_A and u_B. Two routes compute the same solution: the closed
// form for s (with u_A, u_B derived from it) and a direct 4x4 solve of the
// node equations. Both use the Plus dispersion E = omega + 2g cos k; inputs
// are read in ModelParams::hopping_sign's convention and mapped.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "wqed/model.hpp"

namespace wqed {

using cplx = std::complex<double>;

/// |sin k| below this is treated as a band edge.
inline constexpr double kBandEdgeTolerance = 1e-14;

struct ScatteringSolution {
    double k{0.0};       // wavenumber as supplied by the caller
    double E{0.0};       // incident energy
    cplx s{};            // transmission amplitude
    cplx r{};            // reflection amplitude, r = s - 1
    cplx u_A{};
    cplx u_B{};
    double T{0.0};       // |s|^2
    double R{0.0};       // |r|^2
    bool band_edge{false};

    /// Photon amplitude in resonator 0: sin(theta) u_A - cos(theta) u_B.
    cplx site0(const PolaritonBasis& basis) const;
};

struct TransmissionAmplitude {
    cplx s{};
    bool band_edge{false};
};

/// Closed-form transmission amplitude
///
///   s = -2ig (E - Omega) sin k / [(E - Omega_+)(E - Omega_-) - 2g e^{ik} (E - Omega)].
///
/// The denominator has imaginary part -2g sin k (E - Omega) and real part
/// -G^2 at that zero, so it never vanishes for k in (0, pi) and G > 0; for
/// G = 0 numerator and denominator share the factor (E - Omega).
/// At a band edge returns s = 0 with band_edge set.
TransmissionAmplitude transmission_amplitude(const ModelParams& p, const PolaritonBasis& basis,
                                             double k);

struct Occupations {
    cplx u_A{};
    cplx u_B{};
};

/// Polariton amplitudes
///   u_A =  (E - Omega_-)/(E - Omega) (xi_A/g) s,
///   u_B = -(E - Omega_+)/(E - Omega) (xi_B/g) s,
/// evaluated with the factor (E - Omega) cancelled against the numerator of s,
/// so the Fano point E = Omega is regular.
Occupations occupations(const ModelParams& p, const PolaritonBasis& basis, double k);

/// Full solution from the closed form and occupations().
ScatteringSolution closed_form_solution(const ModelParams& p, const PolaritonBasis& basis, double k);

/// Full solution from the four node equations solved directly for
/// (r, s, u_A, u_B) by Gaussian elimination. Never evaluates the closed form.
ScatteringSolution solve_node_system(const ModelParams& p, const PolaritonBasis& basis, double k);

/// Largest absolute residual of the four node equations for the given
/// amplitudes (substituting the plane-wave form for u_{+-1}, u_{+-2}).
double node_equation_residual(const ModelParams& p, const PolaritonBasis& basis,
                              const ScatteringSolution& sol);

/// solve_node_system over a strictly increasing grid inside (0, pi). Points are
/// evaluated in parallel (see parallelism.hpp); output order follows the grid.
std::vector<ScatteringSolution> transmission_spectrum(const ModelParams& p,
                                                      std::span<const double> k_grid);

/// n evenly spaced points on [k_min, k_max].
std::vector<double> linear_grid(double k_min, double k_max, std::size_t n);

} // namespace wqed
