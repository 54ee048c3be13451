#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace gamma_envelope::polycert {

using Integer = mpz_class;
using Rational = mpq_class;

/// Univariate polynomial with exact integer coefficients, ascending degree.
/// Trailing zero coefficients are stripped on construction; the zero
/// polynomial is stored as the single coefficient 0.
class Polynomial {
public:
    Polynomial();
    explicit Polynomial(std::vector<Integer> ascending);
    Polynomial(std::initializer_list<long> ascending);

    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
    bool is_zero() const { return coefficients_.size() == 1 && coefficients_[0] == 0; }
    const std::vector<Integer>& coefficients() const { return coefficients_; }

    Rational evaluate(const Rational& x) const;
    /// Horner evaluation in double precision.
    double evaluate(double x) const;
    Polynomial derivative() const;

    /// Human-readable form, highest degree first, e.g. "x^2 - 2".
    std::string to_string() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<Integer> coefficients_;
};

enum class Sign { negative, positive };
enum class Verdict { certified, refuted };

std::string to_string(Sign s);
std::string to_string(Verdict v);

struct EndpointValue {
    Rational point;
    Rational value;
};

/// Machine-checkable record of why a polynomial keeps one sign on (a, b).
struct SignCertificate {
    Polynomial polynomial;
    Rational a;
    Rational b;
    Sign claimed_sign = Sign::negative;
    /// Coefficient sign changes: an upper bound on the positive roots.
    int descartes_bound = 0;
    /// Exact values at a, the midpoint, b and any extra witness points.
    std::vector<EndpointValue> endpoint_values;
    /// Distinct real roots in the open interval, possibly after shrinking.
    int sturm_root_count = 0;
    Verdict verdict = Verdict::refuted;
    /// One sign change, correct sign at 0, and a witness beyond b with the
    /// opposite sign: the single positive root lies outside (0, b].
    bool descartes_argument = false;
    /// Set when an endpoint was a root and the Sturm interval was shrunk.
    std::optional<std::string> adjustment;
};

/// Sign changes in the coefficient sequence, zeros skipped.
/// Throws std::invalid_argument for the zero polynomial.
int sign_changes(const Polynomial& p);

/// Number of distinct real roots of p in the open interval (a, b), computed
/// from the Sturm chain of the square-free part of p. Endpoints that are
/// roots are moved inward by 1/10^6. Throws std::invalid_argument when p is
/// zero or a >= b.
int sturm_root_count(const Polynomial& p, const Rational& a, const Rational& b);

/// Certify that p has the claimed strict sign on (a, b). Zeros are tolerated
/// only at a and b themselves. `witness_points` are evaluated exactly and
/// recorded alongside a, (a+b)/2 and b.
SignCertificate certify_sign(const Polynomial& p, const Rational& a, const Rational& b, Sign claimed,
                             std::span<const Rational> witness_points = {});

/// The four polynomial inequalities used in the proof, all claimed negative on (0,1).
namespace lemma {
Polynomial h1();  // x^4 + 4x^3 - 2x^2 - 4x - 3
Polynomial h3();  // x^6 + 6x^5 - 3x^4 - 16x^3 - 21x^2 - 6x - 1
Polynomial h4();  // x^5 + 5x^4 - 2x^3 - 8x^2 - 7x - 1
Polynomial h5();  // 5x^7 + 34x^6 + 27x^5 - 62x^4 - 205x^3 - 198x^2 - 83x - 6

struct Entry {
    std::string name;
    Polynomial polynomial;
    std::vector<Rational> witness_points;
};

/// h1, h3, h4, h5 with the witness points used in the Descartes argument.
std::vector<Entry> catalog();

/// Certificates for every catalog entry on (0, 1), claimed negative.
std::vector<SignCertificate> certificates();
}  // namespace lemma

/// "num/den", always with an explicit denominator.
std::string rational_string(const Rational& q);
Rational parse_rational(const std::string& s);

nlohmann::json to_json(const SignCertificate& c);

}  // namespace gamma_envelope::polycert
