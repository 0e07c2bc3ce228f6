// lattice_oracle.hpp: finite-lattice verification engine
//
// The single-excitation Hamiltonian on resonators j = -L..L plus the
// collective atomic mode is a chain with one extra vertex hanging off site 0:
//
//   H = sum_j omega |j><j| + g (|j><j+1| + h.c.) + Omega |a><a| + G (|0><a| + h.c.)
//
// Nothing here uses the closed-form scattering or bound-state results; those
// are what this module checks. Eigenvalues come from Sylvester inertia counts
// (O(dim) per count) and time evolution from Crank-Nicolson steps solved with
// the same chain elimination, so every operation is linear in the lattice size.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "wqed/model.hpp"

namespace wqed {

enum class Boundary { HardWall, Absorbing };

struct LatticeConfig {
    long L{200};                     // sites j in [-L, L]
    Boundary boundary{Boundary::HardWall};
    long absorber_width{200};        // sites at each end carrying the imaginary ramp
    double absorber_strength{0.5};   // ramp height at the wall, in units of g

    std::size_t dimension() const { return static_cast<std::size_t>(2 * L + 2); }
};

/// Sparse single-excitation Hamiltonian. Index j + L holds resonator j, index
/// 2L + 1 the atomic mode. Under Absorbing boundaries the resonator diagonal
/// acquires -i W_j with a quadratic ramp W_j rising to absorber_strength * g.
class LatticeHamiltonian {
public:
    LatticeHamiltonian(const ModelParams& p, const LatticeConfig& config);

    std::size_t dimension() const { return diag_.size(); }
    long half_width() const { return L_; }
    std::size_t site_index(long j) const { return static_cast<std::size_t>(j + L_); }
    std::size_t atom_index() const { return diag_.size() - 1; }

    double hopping() const { return g_; }
    double coupling() const { return G_; }
    std::span<const double> diagonal() const { return diag_; }
    std::span<const double> absorption() const { return absorb_; }
    bool hermitian() const { return !has_absorber_; }

    /// y = H x (absorption included).
    void apply(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) const;
    void apply(std::span<const double> x, std::span<double> y) const;

    /// Row-major dense copy of the Hermitian part, for cross-checks on small lattices.
    std::vector<double> dense() const;

    /// Number of eigenvalues strictly below x (Hermitian part only).
    std::size_t count_below(double x) const;

    /// All eigenvalues in (lo, hi), ascending, each resolved by bisection on
    /// count_below to within a few ulps.
    std::vector<double> eigenvalues_in(double lo, double hi) const;

    /// Unit eigenvector for an eigenvalue from eigenvalues_in(), by inverse
    /// iteration. Sign fixed so the largest-magnitude component is positive.
    std::vector<double> eigenvector(double eigenvalue) const;

    /// Gershgorin interval containing the spectrum.
    std::pair<double, double> spectral_bounds() const;

private:
    long L_;
    double g_;
    double G_;
    std::vector<double> diag_;
    std::vector<double> absorb_;
    bool has_absorber_{false};
};

LatticeHamiltonian build_hamiltonian(const ModelParams& p, const LatticeConfig& config);

struct Eigenpair {
    double energy;
    std::vector<double> vector;
};

/// Eigenpairs with energy outside [omega - 2g - margin, omega + 2g + margin].
/// Every hard-wall chain level lies strictly inside the band, so margin = 0
/// already separates bound states from band states. Eigenvectors that are
/// pure atomic mode (G = 0) are dropped. Requires HardWall. Ascending in energy.
std::vector<Eigenpair> bound_states_numeric(const ModelParams& p, const LatticeConfig& config,
                                            double margin = 0.0);

struct WavepacketSpec {
    double k0{1.5707963267948966};  // carrier wavenumber in (0, pi), caller's convention
    double sigma{40.0};             // Gaussian width in sites
    long j0{-1000};                 // launch centre, left of the node
    double t_final{1500.0};         // in units of 1/g
    double dt{0.02};                // in units of 1/g
    long j_cut{50};                 // measurement buffer around the node
    long snapshot_every{0};         // steps between snapshots, 0 = none
};

struct Snapshot {
    double t;
    std::vector<double> probability;  // |u_j|^2 for j = -L..L
};

struct PropagationResult {
    double T_num{0.0};           // right of +j_cut plus absorbed on the right
    double R_num{0.0};           // left of -j_cut plus absorbed on the left
    double absorbed_left{0.0};
    double absorbed_right{0.0};
    double residual{0.0};        // |j| <= j_cut and the atomic mode
    double norm_error{0.0};      // |in-flight + absorbed - 1|
    double energy_drift{0.0};    // |<H>(t_final) - <H>(0)|, no-absorber runs only
    long steps{0};
    std::vector<Snapshot> history;
};

/// Evolves a right-moving Gaussian packet with carrier energy E(k0) through
/// the node using Crank-Nicolson steps (unitary without absorbers).
///
/// Errors: InvalidInput for a malformed spec or a packet already overlapping
/// the node (probability on j >= 0 above 1e-8); NumericalError if probability
/// accounting drifts above 1e-10.
PropagationResult propagate_wavepacket(const ModelParams& p, const LatticeConfig& config,
                                       const WavepacketSpec& spec);

struct CurvePoint {
    double k;
    double T_num;
};

/// propagate_wavepacket for each k in k_list (in parallel). If spec.t_final is
/// not positive, each run picks the time needed for its packet to clear the
/// measurement region.
std::vector<CurvePoint> transmission_curve_numeric(const ModelParams& p, const LatticeConfig& config,
                                                   const WavepacketSpec& spec,
                                                   std::span<const double> k_list);

/// Time for a packet at wavenumber k to travel from j0 to well past +j_cut.
double suggested_t_final(const ModelParams& p, const WavepacketSpec& spec, double k);

} // namespace wqed
