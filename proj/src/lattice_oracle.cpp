// lattice_oracle.cpp: finite-lattice eigenpairs and wavepacket propagation

#include "wqed/lattice_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wqed/errors.hpp"
#include "wqed/parallelism.hpp"

namespace wqed {

using cplx = std::complex<double>;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void validate_config(const LatticeConfig& c) {
    if (c.L < 1) throw InvalidInput("lattice: half-width L must be >= 1");
    if (c.boundary == Boundary::Absorbing) {
        if (c.absorber_width < 1 || c.absorber_width >= c.L) {
            throw InvalidInput("lattice: absorber width must be in [1, L)");
        }
        if (!(c.absorber_strength > 0.0)) throw InvalidInput("lattice: absorber strength must be > 0");
    }
}

} // namespace

LatticeHamiltonian::LatticeHamiltonian(const ModelParams& p, const LatticeConfig& config)
    : L_(config.L), g_(p.g), G_(p.G) {
    p.validate();
    validate_config(config);
    const std::size_t dim = config.dimension();
    diag_.assign(dim, p.omega);
    diag_.back() = p.Omega;
    absorb_.assign(dim, 0.0);

    if (config.boundary == Boundary::Absorbing) {
        has_absorber_ = true;
        const double w = static_cast<double>(config.absorber_width);
        for (long d = 1; d <= config.absorber_width; ++d) {
            // d = depth into the absorber, d = width at the wall
            const double ramp = config.absorber_strength * p.g * (d / w) * (d / w);
            absorb_[site_index(-L_ + config.absorber_width - d)] = ramp;
            absorb_[site_index(L_ - config.absorber_width + d)] = ramp;
        }
    }
}

void LatticeHamiltonian::apply(std::span<const cplx> x, std::span<cplx> y) const {
    const std::size_t n_sites = diag_.size() - 1;
    const std::size_t a = atom_index();
    const cplx minus_i{0.0, -1.0};
    for (std::size_t i = 0; i < n_sites; ++i) {
        cplx acc = (diag_[i] + minus_i * absorb_[i]) * x[i];
        if (i > 0) acc += g_ * x[i - 1];
        if (i + 1 < n_sites) acc += g_ * x[i + 1];
        y[i] = acc;
    }
    const std::size_t c = site_index(0);
    y[c] += G_ * x[a];
    y[a] = diag_[a] * x[a] + G_ * x[c];
}

void LatticeHamiltonian::apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n_sites = diag_.size() - 1;
    const std::size_t a = atom_index();
    for (std::size_t i = 0; i < n_sites; ++i) {
        double acc = diag_[i] * x[i];
        if (i > 0) acc += g_ * x[i - 1];
        if (i + 1 < n_sites) acc += g_ * x[i + 1];
        y[i] = acc;
    }
    const std::size_t c = site_index(0);
    y[c] += G_ * x[a];
    y[a] = diag_[a] * x[a] + G_ * x[c];
}

std::vector<double> LatticeHamiltonian::dense() const {
    const std::size_t n = diag_.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = diag_[i];
    for (std::size_t i = 0; i + 1 < n - 1; ++i) {
        m[i * n + i + 1] = g_;
        m[(i + 1) * n + i] = g_;
    }
    const std::size_t c = site_index(0);
    const std::size_t a = atom_index();
    m[c * n + a] = G_;
    m[a * n + c] = G_;
    return m;
}

std::pair<double, double> LatticeHamiltonian::spectral_bounds() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t c = site_index(0);
    for (std::size_t i = 0; i + 1 < diag_.size(); ++i) {
        const double radius = 2.0 * std::abs(g_) + (i == c ? std::abs(G_) : 0.0);
        lo = std::min(lo, diag_[i] - radius);
        hi = std::max(hi, diag_[i] + radius);
    }
    lo = std::min(lo, diag_.back() - std::abs(G_));
    hi = std::max(hi, diag_.back() + std::abs(G_));
    return {lo, hi};
}

// Inertia of H - x: eliminate the atomic mode into site 0, then run the
// LDL^T recurrence along the chain. Each negative pivot is one eigenvalue
// below x.
std::size_t LatticeHamiltonian::count_below(double x) const {
    const double scale = std::max({std::abs(x), std::abs(g_), std::abs(G_), 1.0});
    const double tiny = kEps * kEps * scale;
    auto guard = [tiny](double d) { return d == 0.0 ? -tiny : d; };

    std::size_t count = 0;
    const double pa = guard(diag_.back() - x);
    if (pa < 0.0) ++count;
    const double shift0 = G_ * G_ / pa;

    const std::size_t c = site_index(0);
    const double g2 = g_ * g_;
    double d = 0.0;
    for (std::size_t i = 0; i + 1 < diag_.size(); ++i) {
        double a = diag_[i] - x;
        if (i == c) a -= shift0;
        d = guard(i == 0 ? a : a - g2 / d);
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> LatticeHamiltonian::eigenvalues_in(double lo, double hi) const {
    const std::size_t first = count_below(lo);
    const std::size_t last = count_below(hi);
    std::vector<double> out;
    out.reserve(last > first ? last - first : 0);
    for (std::size_t m = first; m < last; ++m) {
        double a = lo;
        double b = hi;
        for (int it = 0; it < 2000; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            (count_below(mid) > m ? b : a) = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

std::vector<double> LatticeHamiltonian::eigenvector(double eigenvalue) const {
    const std::size_t n = diag_.size();
    const std::size_t n_sites = n - 1;
    const std::size_t c = site_index(0);
    const double scale = std::max({std::abs(eigenvalue), std::abs(g_), std::abs(G_), 1.0});
    const double tiny = kEps * scale;
    auto guard = [tiny](double d) { return std::abs(d) < tiny ? (d < 0.0 ? -tiny : tiny) : d; };

    // Factor H - lambda once: atom pivot, then chain pivots.
    const double pa = guard(diag_.back() - eigenvalue);
    std::vector<double> piv(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) {
        double a = diag_[i] - eigenvalue;
        if (i == c) a -= G_ * G_ / pa;
        piv[i] = guard(i == 0 ? a : a - g_ * g_ / piv[i - 1]);
    }

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.3 * static_cast<double>(i) + 0.7);
    std::vector<double> z(n_sites);

    for (int iter = 0; iter < 3; ++iter) {
        const double rhs_atom = v[n - 1];
        for (std::size_t i = 0; i < n_sites; ++i) {
            double r = v[i];
            if (i == c) r -= G_ * rhs_atom / pa;
            z[i] = i == 0 ? r : r - (g_ / piv[i - 1]) * z[i - 1];
        }
        v[n_sites - 1] = z[n_sites - 1] / piv[n_sites - 1];
        for (std::size_t i = n_sites - 1; i-- > 0;) v[i] = (z[i] - g_ * v[i + 1]) / piv[i];
        v[n - 1] = (rhs_atom - G_ * v[c]) / pa;

        double norm = 0.0;
        for (double e : v) norm += e * e;
        norm = std::sqrt(norm);
        for (double& e : v) e /= norm;
    }

    const auto big = std::max_element(v.begin(), v.end(),
                                      [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*big < 0.0) {
        for (double& e : v) e = -e;
    }
    return v;
}

LatticeHamiltonian build_hamiltonian(const ModelParams& p, const LatticeConfig& config) {
    return LatticeHamiltonian(p, config);
}

std::vector<Eigenpair> bound_states_numeric(const ModelParams& p, const LatticeConfig& config,
                                            double margin) {
    if (config.boundary != Boundary::HardWall) {
        throw InvalidInput("bound_states_numeric: requires hard-wall boundaries");
    }
    if (!(margin >= 0.0)) throw InvalidInput("bound_states_numeric: margin must be >= 0");
    const LatticeHamiltonian h(p, config);
    const auto [lo, hi] = h.spectral_bounds();
    const double pad = 1e-9 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));

    std::vector<double> energies = h.eigenvalues_in(lo - pad, p.band_bottom() - margin);
    const auto upper = h.eigenvalues_in(p.band_top() + margin, hi + pad);
    energies.insert(energies.end(), upper.begin(), upper.end());

    std::vector<Eigenpair> out;
    out.reserve(energies.size());
    const std::size_t atom = h.atom_index();
    for (double e : energies) {
        auto v = h.eigenvector(e);
        // a decoupled atomic level (G = 0) carries no photon weight
        if (1.0 - v[atom] * v[atom] < 1e-12) continue;
        out.push_back({e, std::move(v)});
    }
    return out;
}

namespace {

void validate_spec(const ModelParams& p, const LatticeConfig& c, const WavepacketSpec& s) {
    if (!(s.k0 > 0.0 && s.k0 < std::numbers::pi)) throw InvalidInput("wavepacket: k0 must lie in (0, pi)");
    if (!(s.sigma > 0.0)) throw InvalidInput("wavepacket: sigma must be > 0");
    if (!(s.dt > 0.0)) throw InvalidInput("wavepacket: dt must be > 0");
    if (!(s.t_final > 0.0)) throw InvalidInput("wavepacket: t_final must be > 0");
    if (s.j0 >= 0) throw InvalidInput("wavepacket: launch centre j0 must be left of the node");
    if (s.j_cut < 0 || s.j_cut >= c.L) throw InvalidInput("wavepacket: j_cut must be in [0, L)");
    if (s.snapshot_every < 0) throw InvalidInput("wavepacket: snapshot interval must be >= 0");
    const double kp = plus_wavenumber(p, s.k0);
    if (1.0 / s.sigma >= std::min(kp, std::numbers::pi - kp)) {
        throw InvalidInput("wavepacket: momentum spread 1/sigma reaches the band edge");
    }
}

double expectation(const LatticeHamiltonian& h, std::span<const cplx> psi, std::vector<cplx>& work) {
    // Hermitian part only; callers use this for absorber-free runs.
    h.apply(psi, work);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        num += std::real(std::conj(psi[i]) * work[i]);
        den += std::norm(psi[i]);
    }
    return num / den;
}

} // namespace

PropagationResult propagate_wavepacket(const ModelParams& p, const LatticeConfig& config,
                                       const WavepacketSpec& spec) {
    const LatticeHamiltonian h(p, config);
    validate_spec(p, config, spec);

    const long L = config.L;
    const std::size_t n = h.dimension();
    const std::size_t n_sites = n - 1;
    const std::size_t c = h.site_index(0);
    const std::size_t a = h.atom_index();

    // Carrier e^{-i k j}: with +g hopping this moves towards +j at speed 2g sin k
    // and has energy omega + 2g cos k.
    const double kp = plus_wavenumber(p, spec.k0);
    std::vector<cplx> psi(n, cplx{0.0, 0.0});
    double norm = 0.0;
    for (long j = -L; j <= L; ++j) {
        const double dj = static_cast<double>(j - spec.j0);
        const double env = std::exp(-dj * dj / (4.0 * spec.sigma * spec.sigma));
        psi[h.site_index(j)] = env * std::exp(cplx{0.0, -kp * static_cast<double>(j)});
        norm += env * env;
    }
    for (auto& e : psi) e /= std::sqrt(norm);

    double on_node = 0.0;
    for (long j = 0; j <= L; ++j) on_node += std::norm(psi[h.site_index(j)]);
    if (on_node > 1e-8) {
        throw InvalidInput("wavepacket: initial packet overlaps the node (probability " +
                           std::to_string(on_node) + " on j >= 0)");
    }
    const long absorber = config.boundary == Boundary::Absorbing ? config.absorber_width : 0;
    double at_edge = 0.0;
    for (long j = -L; j < -L + absorber + 1; ++j) at_edge += std::norm(psi[h.site_index(j)]);
    if (at_edge > 1e-8) throw InvalidInput("wavepacket: initial packet reaches the left boundary");

    std::vector<cplx> work(n);
    const bool lossless = h.hermitian();
    const double energy0 = lossless ? expectation(h, psi, work) : 0.0;

    const long steps = static_cast<long>(std::ceil(spec.t_final / spec.dt - 1e-9));
    const double dt = spec.t_final / static_cast<double>(steps);
    const double tau = 0.5 * dt;

    // Crank-Nicolson: (1 + i tau H') psi_new = (1 - i tau H') psi with
    // H' = H - omega - iW. Energies are measured from omega so the dominant
    // phase does not enter the step error.
    const std::span<const double> W = h.absorption();
    const cplx itau{0.0, tau};
    const cplx hop_l = itau * p.g;        // off-diagonal of the left operator
    const cplx coup_l = itau * p.G;
    const cplx atom_l = 1.0 + itau * (p.Omega - p.omega);
    const cplx atom_r = 1.0 - itau * (p.Omega - p.omega);

    std::vector<cplx> inv_piv(n_sites);
    {
        cplx prev{};
        for (std::size_t i = 0; i < n_sites; ++i) {
            cplx d = 1.0 + tau * W[i];
            if (i == c) d -= coup_l * coup_l / atom_l;
            if (i > 0) d -= hop_l * hop_l / prev;
            prev = d;
            inv_piv[i] = 1.0 / d;
        }
    }

    std::vector<std::size_t> absorbing_sites;
    for (std::size_t i = 0; i < n_sites; ++i) {
        if (W[i] > 0.0) absorbing_sites.push_back(i);
    }

    PropagationResult result;
    result.steps = steps;
    auto record = [&](double t) {
        Snapshot snap{t, std::vector<double>(n_sites)};
        for (std::size_t i = 0; i < n_sites; ++i) snap.probability[i] = std::norm(psi[i]);
        result.history.push_back(std::move(snap));
    };
    if (spec.snapshot_every > 0) record(0.0);

    double lost_left = 0.0;
    double lost_right = 0.0;
    for (long step = 1; step <= steps; ++step) {
        // right-hand side (1 - i tau H') psi, with the atom row eliminated into site 0
        const cplx rhs_atom = atom_r * psi[a] - coup_l * psi[c];
        for (std::size_t i = 0; i < n_sites; ++i) {
            cplx r = (1.0 - tau * W[i]) * psi[i];
            cplx nb = 0.0;
            if (i > 0) nb += psi[i - 1];
            if (i + 1 < n_sites) nb += psi[i + 1];
            r -= hop_l * nb;
            if (i == c) r -= coup_l * psi[a] + coup_l * rhs_atom / atom_l;
            work[i] = i == 0 ? r : r - hop_l * inv_piv[i - 1] * work[i - 1];
        }
        cplx next = work[n_sites - 1] * inv_piv[n_sites - 1];
        // back-substitution, overwriting work with the new state
        work[n_sites - 1] = next;
        for (std::size_t i = n_sites - 1; i-- > 0;) {
            next = (work[i] - hop_l * next) * inv_piv[i];
            work[i] = next;
        }
        work[a] = (rhs_atom - coup_l * work[c]) / atom_l;

        // exact CN norm loss: 2 dt sum W |(psi_old + psi_new)/2|^2
        for (std::size_t i : absorbing_sites) {
            const double loss = 2.0 * dt * W[i] * std::norm(0.5 * (psi[i] + work[i]));
            (i < c ? lost_left : lost_right) += loss;
        }
        psi.swap(work);
        if (spec.snapshot_every > 0 && step % spec.snapshot_every == 0) {
            record(static_cast<double>(step) * dt);
        }
    }

    double left = 0.0;
    double right = 0.0;
    double centre = std::norm(psi[a]);
    for (long j = -L; j <= L; ++j) {
        const double prob = std::norm(psi[h.site_index(j)]);
        if (j < -spec.j_cut) {
            left += prob;
        } else if (j > spec.j_cut) {
            right += prob;
        } else {
            centre += prob;
        }
    }

    result.absorbed_left = lost_left;
    result.absorbed_right = lost_right;
    result.T_num = right + lost_right;
    result.R_num = left + lost_left;
    result.residual = centre;
    result.norm_error = std::abs(left + right + centre + lost_left + lost_right - 1.0);
    if (lossless) result.energy_drift = std::abs(expectation(h, psi, work) - energy0);

    if (result.norm_error > 1e-10) {
        throw NumericalError("lattice_oracle", "integrator failure: probability accounting drifted by " +
                                                   std::to_string(result.norm_error));
    }
    return result;
}

double suggested_t_final(const ModelParams& p, const WavepacketSpec& spec, double k) {
    const double kp = plus_wavenumber(p, k);
    const double v = 2.0 * p.g * std::sin(kp);
    const double curvature = 2.0 * p.g * std::abs(std::cos(kp));
    const double travel = static_cast<double>(spec.j_cut - spec.j0);
    double t = (travel + 8.0 * spec.sigma) / v;
    for (int it = 0; it < 8; ++it) {
        const double spread = curvature * t / (2.0 * spec.sigma * spec.sigma);
        const double width = spec.sigma * std::sqrt(1.0 + spread * spread);
        t = (travel + 8.0 * width) / v;
    }
    return t;
}

std::vector<CurvePoint> transmission_curve_numeric(const ModelParams& p, const LatticeConfig& config,
                                                   const WavepacketSpec& spec,
                                                   std::span<const double> k_list) {
    std::vector<CurvePoint> out(k_list.size());
    parallel_for(k_list.size(), [&](std::size_t i) {
        WavepacketSpec run = spec;
        run.k0 = k_list[i];
        run.snapshot_every = 0;
        if (!(run.t_final > 0.0)) run.t_final = suggested_t_final(p, run, run.k0);
        try {
            out[i] = {k_list[i], propagate_wavepacket(p, config, run).T_num};
        } catch (const NumericalError& e) {
            throw NumericalError("lattice_oracle", "k = " + std::to_string(k_list[i]) + ": " + e.what());
        }
    });
    return out;
}

} // namespace wqed
