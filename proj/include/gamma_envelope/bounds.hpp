#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gamma_envelope/refcore.hpp"

namespace gamma_envelope::bounds {

enum class FamilyId {
    ivady,
    qi_guo,
    qi_guo_extended,
    qi_guo_rearranged,
    lambda6,
    alzer_power,
    alzer_batir,
    qi_guo_zhang,
    batir_12,
    batir_14,
    batir_15,
    unitball,
};

/// Which value of the gamma function a family brackets.
enum class Convention { gamma_of_x_plus_1, gamma_of_x };

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
    Convention convention = Convention::gamma_of_x_plus_1;
    FamilyId family = FamilyId::qi_guo;
    double x = 0.0;
    /// Only the upper side exists; `lower` holds -infinity.
    bool one_sided = false;
    /// The family attains equality here (integers for the extended bounds,
    /// x = 1 for the upper Qi-Guo-Zhang bound).
    bool is_equality_point = false;
    /// False when caller-supplied exponents are outside the sharp range.
    bool guaranteed = true;
};

struct FamilyInfo {
    FamilyId id;
    std::string_view name;
    std::string_view domain;
    std::string_view citation;
    Convention convention;
    bool one_sided;
};

/// All families, in enumeration order.
const std::vector<FamilyInfo>& catalog();
const FamilyInfo& info(FamilyId id);
std::string_view name(FamilyId id);
/// Throws std::invalid_argument for unknown names.
FamilyId parse_family(std::string_view name);
std::string_view name(Convention c);

/// True when x lies in the family's validity domain.
bool in_domain(FamilyId id, double x);

inline constexpr double kAlphaSharp = 2.0 * (1.0 - refcore::kEulerGamma);
inline constexpr double kBetaSharp = refcore::kEulerGamma;

/// ((x^2+1)/(x+1))^alpha < Gamma(x+1) < ((x^2+1)/(x+1))^beta on (0, 1).
/// Exponents outside alpha >= 2(1-gamma), beta <= gamma clear `guaranteed`.
BoundPair theorem_bounds(double x, double alpha = kAlphaSharp, double beta = kBetaSharp);

/// Recurrence extension to x > 0: the (0,1) bracket at the fractional part
/// times prod_{i=0}^{floor(x)-1} (x - i). Integers are equality points.
BoundPair extended_bounds(double x);

/// Evaluate any catalog family at x. Throws DomainError outside the
/// family's domain, including alzer_power at exactly x = 1.
BoundPair evaluate_family(FamilyId id, double x);

struct Bracket {
    double lower;
    double upper;
};

/// (k-1)!/x^k + k!/(2x^(k+1)) < (-1)^(k+1) psi^(k)(x) < (k-1)!/x^k + k!/x^(k+1).
Bracket polygamma_bounds(int k, double x);

/// Gamma under the pair's convention, from refcore.
double reference_gamma(const BoundPair& b);

/// Strict containment of the reference value; sides that meet the reference
/// at an equality point are accepted.
bool contains_reference(const BoundPair& b);

/// The pair rescaled to bracket Gamma(x+1) (multiplying by x when the
/// family bounds Gamma(x)). Comparison across families happens on this scale.
BoundPair normalized(const BoundPair& b);

}  // namespace gamma_envelope::bounds
