#pragma once

#include <stdexcept>
#include <string>

namespace gamma_envelope {

/// Raised for arguments outside a function's mathematical domain.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

namespace refcore {

inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPiSqOver6 = 1.6449340668482264365;

/// Numeric anchors shared by every bound family.
struct Constants {
    double euler_gamma;
    double pi_sq_over_6;
    double alpha_sharp;  // 2(1 - gamma), sharp lower exponent on (0,1)
    double beta_sharp;   // gamma, sharp upper exponent on (0,1)
    double alzer_alpha;  // 1 - gamma
    double alzer_beta;   // (pi^2/6 - gamma) / 2
};

/// Returns the constants. The first call cross-checks the stored Euler
/// constant against -digamma(1) and aborts the process on a mismatch
/// larger than 1e-12.
const Constants& constants();

/// ln Gamma(x) for finite x > 0.
///
/// Arguments in [1.5, 2.5] use the Taylor expansion of ln Gamma about 2
/// (coefficients (-1)^k (zeta(k) - 1) / k), smaller arguments are lifted
/// into that window with the recurrence, and larger ones are shifted up to
/// 10 and evaluated with the Stirling series. This keeps the relative error
/// small near the zeros at x = 1 and x = 2.
double ln_gamma(double x);

/// psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

/// psi^(k)(x) for k in {1, 2, 3} and x > 0.
double polygamma(int k, double x);

}  // namespace refcore
}  // namespace gamma_envelope
