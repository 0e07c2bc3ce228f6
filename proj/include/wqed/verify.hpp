// verify.hpp: the end-to-end verification suite
//
// Each check cross-validates one analytic result against an independent
// route (direct linear solve, 2x2 characteristic polynomial, finite-lattice
// diagonalization, wavepacket propagation) at a fixed tolerance. The CLI
// `verify` command and the acceptance test binary both run these.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wqed {

struct CheckResult {
    std::string id;      // "AC1" ... "AC10"
    std::string name;
    bool passed{false};
    std::string detail;  // measured quantities vs thresholds
    double seconds{0.0};
};

struct VerifyOptions {
    std::uint64_t seed{20081017};
};

CheckResult check_flux_conservation(const VerifyOptions& opt);
CheckResult check_closed_form_vs_direct(const VerifyOptions& opt);
CheckResult check_fano_zero(const VerifyOptions& opt);
CheckResult check_decoupling(const VerifyOptions& opt);
CheckResult check_polariton_eigenvalues(const VerifyOptions& opt);
CheckResult check_bound_state_oracle(const VerifyOptions& opt);
CheckResult check_bound_state_count(const VerifyOptions& opt);
CheckResult check_wavepacket_transmission(const VerifyOptions& opt);
CheckResult check_figure_features(const VerifyOptions& opt);
CheckResult check_determinism(const VerifyOptions& opt);

struct NamedCheck {
    const char* id;
    std::function<CheckResult(const VerifyOptions&)> run;
};

/// All checks in order AC1..AC10.
std::vector<NamedCheck> verification_checks();

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

/// "[PASS] AC1  flux conservation ...  (0.12 s)"
std::string format_check_line(const CheckResult& r);

} // namespace wqed
