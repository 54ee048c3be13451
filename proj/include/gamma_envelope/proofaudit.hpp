#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace gamma_envelope::proofaudit {

/// ln Gamma(x+1) / (ln(x^2+1) - ln(x+1)) on (0, 1].
///
/// Returns gamma for x <= 1e-8. Within 1e-6 of x = 1 the quotient is 0/0;
/// there the value is (L + Q(x)) / 2 with L = 2(1 - gamma) and
/// Q(x) = (x+1)(x^2+1) psi(x+1) / (x^2+2x-1), which matches the ratio to
/// first order (Q alone carries twice the slope).
double ratio_R(double x);

/// The five expressions of the auxiliary polynomial lemma on [0, 1]:
/// i = 1, 3, 4, 5 are the polynomials h1, h3, h4, h5 and
/// i = 2 is (x-1)(x^2+2x-1) - (x+1)(x^2+1) ln((x^2+1)/(x+1)).
double lemma_expr(int i, double x);

enum class ProofFunction { f_over_g_prime, q, q1, q1_prime };

std::string_view name(ProofFunction f);
/// Throws std::invalid_argument on an unknown name.
ProofFunction parse_proof_function(std::string_view s);

/// Evaluates the displayed intermediate function at x. f_over_g_prime
/// needs 0 < x < 1; q, q1 and q1_prime also accept the endpoints.
double proof_function(ProofFunction f, double x);

enum class ClaimKind { sign, monotonicity, unique_zero, unique_minimum, endpoint_value, limit };
enum class ClaimVerdict { pass, fail };

std::string_view name(ClaimKind k);
std::string_view name(ClaimVerdict v);

struct ProofClaim {
    std::string name;
    ClaimKind kind = ClaimKind::sign;
    double a = 0.0;
    double b = 0.0;
    std::string expected;
    ClaimVerdict verdict = ClaimVerdict::fail;
    /// Zero, minimum or violation location. Always set on failure.
    std::optional<double> witness;
    double measured = 0.0;
};

/// Checks every step of the monotonicity proof on grids of grid_n points.
/// Throws std::invalid_argument for grid_n < 100.
std::vector<ProofClaim> audit_proof(int grid_n);

bool all_pass(const std::vector<ProofClaim>& claims);

nlohmann::json to_json(const std::vector<ProofClaim>& claims);
/// Table with columns claim, expected, measured, verdict, witness.
std::string to_markdown(const std::vector<ProofClaim>& claims);

/// True when `value` truncated toward zero at `decimals` places equals
/// `printed` (values in the text are quoted with trailing dots).
bool matches_printed(double value, double printed, int decimals);

}  // namespace gamma_envelope::proofaudit
