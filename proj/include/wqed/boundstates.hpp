// boundstates.hpp: photon-atom bound states outside the band
//
// For G > 0 there is exactly one bound level above the band and one below.
// The amplitude on resonator j is u0 * beta^|j| with
//
//   E_b - omega = g (beta + 1/beta),
//   G^2 / (E_b - Omega) = g (1/beta - beta),
//
// so beta is in (0, 1) above the band and in (-1, 0) below it (staggered
// sign). Eliminating beta gives the transcendental equations
//
//   upper:  E = Omega + G^2 / sqrt((E - omega)^2 - 4g^2),  E > omega + 2g
//   lower:  E = Omega - G^2 / sqrt((E - omega)^2 - 4g^2),  E < omega - 2g
//
// which are solved by bracketed bisection followed by Newton polishing.

#pragma once

#include <optional>
#include <vector>

#include "wqed/model.hpp"

namespace wqed {

enum class Branch { Upper, Lower };

const char* to_string(Branch b);

struct BoundState {
    double E_b{0.0};
    double beta{0.0};        // per-site ratio u_{j+1}/u_j away from the node
    double u0{0.0};          // resonator-0 amplitude, > 0
    double u_e{0.0};         // collective atomic amplitude
    Branch branch{Branch::Upper};
    double norm_check{0.0};  // sum_j u_j^2 + u_e^2 from the closed geometric sum

    /// u_j = u0 beta^|j|
    double amplitude(long j) const;
    /// e-folding length 1 / ln(1/|beta|), in sites.
    double localization_length() const;
};

struct BoundEnergies {
    double upper;
    double lower;
};

/// Both bound energies, or nullopt when G = 0 (no bound state).
std::optional<BoundEnergies> bound_energies(const ModelParams& p);

/// Left side minus right side of the branch's transcendental equation.
double transcendental_residual(const ModelParams& p, double E, Branch branch);

/// Normalized bound state for a root E_b of the branch equation.
/// Throws InvalidInput if E_b is not a root (residual above 1e-10 relative to
/// the energy scale) and NumericalError if |beta| >= 1.
BoundState bound_wavefunction(const ModelParams& p, double E_b, Branch branch);

/// Both bound states for p; empty when G = 0.
std::vector<BoundState> bound_states(const ModelParams& p);

/// Energy-dependent node potential V = -G^2 / (E - Omega). Throws InvalidInput
/// at the resonance E = Omega.
double effective_potential(const ModelParams& p, double E);

} // namespace wqed
