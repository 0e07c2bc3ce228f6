// scattering.cpp: closed-form and direct-solve scattering amplitudes

#include "wqed/scattering.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "wqed/errors.hpp"
#include "wqed/parallelism.hpp"

namespace wqed {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Kinematics {
    double k_plus;
    double E;
    double sin_k;
    bool band_edge;
};

Kinematics kinematics(const ModelParams& p, double k) {
    if (!(k >= 0.0 && k <= std::numbers::pi)) {
        throw InvalidInput("scattering: wavenumber must lie in (0, pi), got " + std::to_string(k));
    }
    Kinematics kin;
    kin.k_plus = plus_wavenumber(p, k);
    kin.E = p.omega + 2.0 * p.g * std::cos(kin.k_plus);
    kin.sin_k = std::sin(kin.k_plus);
    kin.band_edge = std::abs(kin.sin_k) < kBandEdgeTolerance;
    return kin;
}

// s / (E - Omega), finite everywhere in the open band.
cplx reduced_transmission(const ModelParams& p, const PolaritonBasis& b, const Kinematics& kin) {
    const double dE = kin.E - p.Omega;
    const cplx denom = (kin.E - b.Omega_plus) * (kin.E - b.Omega_minus) -
                       2.0 * p.g * std::exp(kI * kin.k_plus) * dE;
    return -2.0 * kI * p.g * kin.sin_k / denom;
}

ScatteringSolution band_edge_solution(double k, double E) {
    ScatteringSolution sol;
    sol.k = k;
    sol.E = E;
    sol.s = 0.0;
    sol.r = -1.0;
    sol.T = 0.0;
    sol.R = 1.0;
    sol.band_edge = true;
    return sol;
}

// Dense Gaussian elimination with partial pivoting on a 4x4 complex system.
std::array<cplx, 4> solve4(std::array<std::array<cplx, 4>, 4> a, std::array<cplx, 4> rhs) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int row = col + 1; row < 4; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        }
        if (std::abs(a[piv][col]) == 0.0) {
            throw NumericalError("scattering", "node system is singular (decoupled level inside the band?)");
        }
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int row = col + 1; row < 4; ++row) {
            const cplx f = a[row][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[row][c] -= f * a[col][c];
            rhs[row] -= f * rhs[col];
        }
    }
    std::array<cplx, 4> x{};
    for (int row = 3; row >= 0; --row) {
        cplx acc = rhs[row];
        for (int c = row + 1; c < 4; ++c) acc -= a[row][c] * x[c];
        x[row] = acc / a[row][row];
    }
    return x;
}

} // namespace

cplx ScatteringSolution::site0(const PolaritonBasis& basis) const {
    return std::sin(basis.theta) * u_A - std::cos(basis.theta) * u_B;
}

TransmissionAmplitude transmission_amplitude(const ModelParams& p, const PolaritonBasis& basis,
                                             double k) {
    const Kinematics kin = kinematics(p, k);
    if (kin.band_edge) return {cplx{0.0, 0.0}, true};
    const double dE = kin.E - p.Omega;
    const cplx denom = (kin.E - basis.Omega_plus) * (kin.E - basis.Omega_minus) -
                       2.0 * p.g * std::exp(kI * kin.k_plus) * dE;
    return {-2.0 * kI * p.g * dE * kin.sin_k / denom, false};
}

Occupations occupations(const ModelParams& p, const PolaritonBasis& basis, double k) {
    const Kinematics kin = kinematics(p, k);
    if (kin.band_edge) return {};
    const cplx q = reduced_transmission(p, basis, kin);
    return {(kin.E - basis.Omega_minus) * (basis.xi_A / p.g) * q,
            -(kin.E - basis.Omega_plus) * (basis.xi_B / p.g) * q};
}

ScatteringSolution closed_form_solution(const ModelParams& p, const PolaritonBasis& basis, double k) {
    const Kinematics kin = kinematics(p, k);
    if (kin.band_edge) return band_edge_solution(k, kin.E);
    ScatteringSolution sol;
    sol.k = k;
    sol.E = kin.E;
    sol.s = transmission_amplitude(p, basis, k).s;
    sol.r = sol.s - 1.0;
    const Occupations occ = occupations(p, basis, k);
    sol.u_A = occ.u_A;
    sol.u_B = occ.u_B;
    sol.T = std::norm(sol.s);
    sol.R = std::norm(sol.r);
    return sol;
}

ScatteringSolution solve_node_system(const ModelParams& p, const PolaritonBasis& basis, double k) {
    const Kinematics kin = kinematics(p, k);
    if (kin.band_edge) return band_edge_solution(k, kin.E);

    const cplx e1 = std::exp(kI * kin.k_plus);
    const cplx em1 = std::conj(e1);
    const cplx e2 = e1 * e1;
    const cplx em2 = em1 * em1;
    const double dw = kin.E - p.omega;
    const double xa = basis.xi_A;
    const double xb = basis.xi_B;

    // Unknowns (r, s, u_A, u_B). Rows: resonators -1 and +1, polaritons A and B.
    std::array<std::array<cplx, 4>, 4> a{};
    std::array<cplx, 4> rhs{};

    a[0] = {dw * e1 - p.g * e2, 0.0, -xa, xb};
    rhs[0] = -(dw * em1 - p.g * em2);

    a[1] = {0.0, dw * e1 - p.g * e2, -xa, xb};
    rhs[1] = 0.0;

    a[2] = {-xa * e1, -xa * e1, kin.E - basis.Omega_plus, 0.0};
    rhs[2] = xa * em1;

    a[3] = {xb * e1, xb * e1, 0.0, kin.E - basis.Omega_minus};
    rhs[3] = -xb * em1;

    const auto x = solve4(a, rhs);
    ScatteringSolution sol;
    sol.k = k;
    sol.E = kin.E;
    sol.r = x[0];
    sol.s = x[1];
    sol.u_A = x[2];
    sol.u_B = x[3];
    sol.T = std::norm(sol.s);
    sol.R = std::norm(sol.r);
    return sol;
}

double node_equation_residual(const ModelParams& p, const PolaritonBasis& basis,
                              const ScatteringSolution& sol) {
    const Kinematics kin = kinematics(p, sol.k);
    const cplx e1 = std::exp(kI * kin.k_plus);
    const cplx em1 = std::conj(e1);
    const cplx u_m1 = em1 + sol.r * e1;
    const cplx u_m2 = em1 * em1 + sol.r * e1 * e1;
    const cplx u_p1 = sol.s * e1;
    const cplx u_p2 = sol.s * e1 * e1;
    const double dw = kin.E - p.omega;

    const cplx node = basis.xi_A * sol.u_A - basis.xi_B * sol.u_B;
    const double res[4] = {
        std::abs(dw * u_m1 - p.g * u_m2 - node),
        std::abs(dw * u_p1 - p.g * u_p2 - node),
        std::abs((kin.E - basis.Omega_plus) * sol.u_A - basis.xi_A * (u_m1 + u_p1)),
        std::abs((kin.E - basis.Omega_minus) * sol.u_B + basis.xi_B * (u_m1 + u_p1)),
    };
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, r);
    return worst;
}

std::vector<ScatteringSolution> transmission_spectrum(const ModelParams& p,
                                                      std::span<const double> k_grid) {
    p.validate();
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double k = k_grid[i];
        if (!(k > 0.0 && k < std::numbers::pi)) {
            throw InvalidInput("transmission_spectrum: grid point " + std::to_string(i) +
                               " (k = " + std::to_string(k) + ") is outside (0, pi)");
        }
        if (i > 0 && !(k > k_grid[i - 1])) {
            throw InvalidInput("transmission_spectrum: grid is not strictly increasing at point " +
                               std::to_string(i));
        }
    }

    const PolaritonBasis basis = polariton_basis(p);
    std::vector<ScatteringSolution> out(k_grid.size());
    parallel_for(k_grid.size(), [&](std::size_t i) {
        try {
            out[i] = solve_node_system(p, basis, k_grid[i]);
        } catch (const NumericalError& e) {
            throw NumericalError("scattering", "grid point " + std::to_string(i) + ": " + e.what());
        }
    });
    return out;
}

std::vector<double> linear_grid(double k_min, double k_max, std::size_t n) {
    if (n < 2) throw InvalidInput("grid needs at least 2 points");
    if (!(k_max > k_min)) throw InvalidInput("grid end must exceed grid start");
    std::vector<double> grid(n);
    const double step = (k_max - k_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) grid[i] = k_min + step * static_cast<double>(i);
    grid.back() = k_max;
    return grid;
}

} // namespace wqed
