// boundstates.cpp: bound-state energies and profiles

#include "wqed/boundstates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

// Both branches reduce to h(x) = c + x - G^2 / sqrt(x (x + 4g)) = 0 in the
// distance x > 0 from the nearest band edge, with
//   upper: E = omega + 2g + x, c = omega + 2g - Omega
//   lower: E = omega - 2g - x, c = Omega - omega + 2g
// h is strictly increasing from -inf (x -> 0+) to +inf.
struct EdgeEquation {
    double c;
    double G2;
    double g;

    double operator()(double x) const { return c + x - G2 / std::sqrt(x * (x + 4.0 * g)); }

    double derivative(double x) const {
        const double q = x * (x + 4.0 * g);
        return 1.0 + G2 * (x + 2.0 * g) / (q * std::sqrt(q));
    }
};

EdgeEquation edge_equation(const ModelParams& p, Branch branch) {
    const double c = branch == Branch::Upper ? p.omega + 2.0 * p.g - p.Omega
                                             : p.Omega - p.omega + 2.0 * p.g;
    return {c, p.G * p.G, p.g};
}

double solve_edge_offset(const EdgeEquation& h) {
    double lo = 1e-9;
    double hi = std::max(-h.c, 0.0) + h.G2 + 2.0 * h.g;

    while (h(lo) > 0.0) {
        lo /= 16.0;
        if (lo < std::numeric_limits<double>::min()) {
            throw NumericalError("boundstates", "root lies closer to the band edge than representable");
        }
    }
    while (h(hi) < 0.0) {
        hi *= 2.0;
        if (!std::isfinite(hi)) throw NumericalError("boundstates", "failed to bracket bound energy");
    }

    // Geometric bisection while the bracket spans decades, arithmetic after.
    for (int it = 0; it < 400 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (h(mid) < 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-6 * hi) break;
    }

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double step = h(x) / h.derivative(x);
        double next = x - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        (h(next) < 0.0 ? lo : hi) = next;
        if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * next) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

// Distance of E outside the band on the branch's side; <= 0 means not outside.
double edge_offset(const ModelParams& p, double E, Branch branch) {
    return branch == Branch::Upper ? E - p.omega - 2.0 * p.g : p.omega - 2.0 * p.g - E;
}

BoundState state_at_offset(const ModelParams& p, double x, Branch branch) {
    const double E_b = branch == Branch::Upper ? p.omega + 2.0 * p.g + x : p.omega - 2.0 * p.g - x;
    // beta^2 - c beta + 1 = 0 with c = (E_b - omega)/g; take the root inside
    // the unit disc, written without cancellation.
    const double xr = x / p.g;
    const double root = std::sqrt(xr * (xr + 4.0));
    const double abs_c = 2.0 + xr;
    const double mag = 2.0 / (abs_c + root);

    BoundState st;
    st.E_b = E_b;
    st.branch = branch;
    st.beta = branch == Branch::Upper ? mag : -mag;
    if (!(std::abs(st.beta) < 1.0)) {
        throw NumericalError("boundstates", "inconsistent energy: |beta| >= 1");
    }

    const double b2 = st.beta * st.beta;
    const double ratio = p.G / (E_b - p.Omega);  // u_e / u0
    const double chain = (1.0 + b2) / (1.0 - b2);
    st.u0 = 1.0 / std::sqrt(chain + ratio * ratio);
    st.u_e = ratio * st.u0;

    // Explicit sum, smallest terms first.
    long terms = 1;
    if (b2 > 0.0) {
        const double n = std::ceil(std::log(1e-20) / std::log(b2));
        terms = static_cast<long>(std::min(n, 1e7));
    }
    long double sum = 0.0L;
    for (long j = terms; j >= 1; --j) {
        const long double a = static_cast<long double>(st.amplitude(j));
        sum += 2.0L * a * a;
    }
    sum += static_cast<long double>(st.u0) * st.u0;
    sum += static_cast<long double>(st.u_e) * st.u_e;
    st.norm_check = static_cast<double>(sum);
    return st;
}

} // namespace

const char* to_string(Branch b) { return b == Branch::Upper ? "upper" : "lower"; }

double BoundState::amplitude(long j) const {
    return u0 * std::pow(beta, static_cast<double>(std::labs(j)));
}

double BoundState::localization_length() const { return 1.0 / std::log(1.0 / std::abs(beta)); }

std::optional<BoundEnergies> bound_energies(const ModelParams& p) {
    p.validate();
    if (p.G == 0.0) return std::nullopt;
    const double x_up = solve_edge_offset(edge_equation(p, Branch::Upper));
    const double x_lo = solve_edge_offset(edge_equation(p, Branch::Lower));
    return BoundEnergies{p.omega + 2.0 * p.g + x_up, p.omega - 2.0 * p.g - x_lo};
}

double transcendental_residual(const ModelParams& p, double E, Branch branch) {
    const double x = edge_offset(p, E, branch);
    if (!(x > 0.0)) {
        throw InvalidInput(std::string("transcendental_residual: energy is not ") +
                           (branch == Branch::Upper ? "above" : "below") + " the band");
    }
    const double pull = p.G * p.G / std::sqrt(x * (x + 4.0 * p.g));
    return branch == Branch::Upper ? E - p.Omega - pull : E - p.Omega + pull;
}

BoundState bound_wavefunction(const ModelParams& p, double E_b, Branch branch) {
    p.validate();
    if (p.G == 0.0) throw InvalidInput("bound_wavefunction: no bound state when G = 0");

    const double x = edge_offset(p, E_b, branch);
    if (!(x > 0.0)) {
        throw NumericalError("boundstates", "inconsistent energy: |beta| >= 1 (E_b = " +
                                                std::to_string(E_b) + " is not outside the band)");
    }
    const double scale = std::max({1.0, std::abs(E_b), std::abs(p.Omega), p.G * p.G});
    const double residual = transcendental_residual(p, E_b, branch);
    if (std::abs(residual) > 1e-10 * scale) {
        throw InvalidInput("bound_wavefunction: E_b does not solve the " + std::string(to_string(branch)) +
                           " bound-state equation (residual " + std::to_string(residual) + ")");
    }

    return state_at_offset(p, x, branch);
}

std::vector<BoundState> bound_states(const ModelParams& p) {
    p.validate();
    if (p.G == 0.0) return {};
    return {state_at_offset(p, solve_edge_offset(edge_equation(p, Branch::Upper)), Branch::Upper),
            state_at_offset(p, solve_edge_offset(edge_equation(p, Branch::Lower)), Branch::Lower)};
}

double effective_potential(const ModelParams& p, double E) {
    if (E == p.Omega) {
        throw InvalidInput("effective_potential: pole at the atomic resonance E = Omega");
    }
    return -p.G * p.G / (E - p.Omega);
}

} // namespace wqed
