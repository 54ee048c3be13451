#include "gamma_envelope/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gamma_envelope::bounds {
namespace {

using refcore::kEulerGamma;
using refcore::kPi;
using refcore::kPiSqOver6;

const double kHalfLn2Pi = 0.5 * std::log(2.0 * kPi);

[[noreturn]] void domain_failure(FamilyId id, double x) {
    std::ostringstream os;
    os << "family " << name(id) << " is not defined at x = " << x << " (domain " << info(id).domain << ")";
    throw DomainError(os.str());
}

// ln((x^2 + lambda) / (x + lambda)), accurate near the zeros at x = 0 and x = 1
double ln_base(double x, double lambda) { return std::log1p(x * (x - 1.0) / (x + lambda)); }

BoundPair make(FamilyId id, double x, double log_lower, double log_upper) {
    BoundPair b;
    b.family = id;
    b.convention = info(id).convention;
    b.x = x;
    b.lower = std::exp(log_lower);
    b.upper = std::exp(log_upper);
    return b;
}

}  // namespace

const std::vector<FamilyInfo>& catalog() {
    using C = Convention;
    static const std::vector<FamilyInfo> entries = {
        {FamilyId::ivady, "ivady", "(0,1)", "Ivady, J. Math. Inequal. (2009): (x^2+1)/(x+1) < Gamma(x+1) < (x^2+2)/(x+2)",
         C::gamma_of_x_plus_1, false},
        {FamilyId::qi_guo, "qi_guo", "(0,1)",
         "((x^2+1)/(x+1))^(2(1-gamma)) < Gamma(x+1) < ((x^2+1)/(x+1))^gamma, sharp exponents",
         C::gamma_of_x_plus_1, false},
        {FamilyId::qi_guo_extended, "qi_guo_extended", "(0,inf), equality at integers",
         "sharp (0,1) bracket at the fractional part times prod_{i<floor(x)} (x-i)", C::gamma_of_x_plus_1, false},
        {FamilyId::qi_guo_rearranged, "qi_guo_rearranged", "(0,1)",
         "(1/x)((x^2+1)/(x+1))^(2(1-gamma)) < Gamma(x) < (1/x)((x^2+1)/(x+1))^gamma", C::gamma_of_x, false},
        {FamilyId::lambda6, "lambda6", "(0,1)",
         "((x^2+6)/(x+6))^(6 gamma) < Gamma(x+1) < ((x^2+6)/(x+6))^(7(1-gamma))", C::gamma_of_x_plus_1, false},
        {FamilyId::alzer_power, "alzer_power", "(0,1) u (1,inf)",
         "Alzer, Proc. Amer. Math. Soc. (1999), Thm 2: x^(a(x-1)-gamma) < Gamma(x) < x^(b(x-1)-gamma)", C::gamma_of_x,
         false},
        {FamilyId::alzer_batir, "alzer_batir", "(0,inf)",
         "Alzer-Batir, Appl. Math. Lett. (2007): sqrt(2pi) x^x exp(-x - psi(x+a)/2), a=1/3 lower, a=0 upper",
         C::gamma_of_x, false},
        {FamilyId::qi_guo_zhang, "qi_guo_zhang", "(0,1], equality of upper side at 1",
         "x^(x[1-ln x+psi(x)])/e^x < Gamma(x) <= x^(x[1-ln x+psi(x)])/e^(x-1)", C::gamma_of_x, false},
        {FamilyId::batir_12, "batir_12", "(0,inf)",
         "Batir, Arch. Math. (2008), Cor 1.2: sqrt(2x+1) x^x exp(-[x+1/(6(x+3/8))-4/9]) < Gamma(x+1) < "
         "sqrt(pi(2x+1)) x^x exp(-[x+1/(6(x+3/8))])",
         C::gamma_of_x_plus_1, false},
        {FamilyId::batir_14, "batir_14", "(0,inf)",
         "Batir, Arch. Math. (2008), Thm 1.4: sqrt(2)(x+1/2)^(x+1/2) e^-x <= Gamma(x+1) <= "
         "e^(gamma/e^gamma)(x+1/e^gamma)^(x+1/e^gamma) e^-x",
         C::gamma_of_x_plus_1, false},
        {FamilyId::batir_15, "batir_15", "(0,inf)",
         "Batir, Arch. Math. (2008), Thm 1.5: sqrt(2e)((x+1/2)/e)^(x+1/2) <= Gamma(x+1) < "
         "sqrt(2pi)((x+1/2)/e)^(x+1/2)",
         C::gamma_of_x_plus_1, false},
        {FamilyId::unitball, "unitball", "(1/2,inf), upper only",
         "Gamma(x+1) < (2x)^x, from F(x) = ln Gamma(x+1)/(x ln 2x) increasing to 1", C::gamma_of_x_plus_1, true},
    };
    return entries;
}

const FamilyInfo& info(FamilyId id) { return catalog().at(static_cast<std::size_t>(id)); }

std::string_view name(FamilyId id) { return info(id).name; }

FamilyId parse_family(std::string_view s) {
    for (const auto& f : catalog()) {
        if (f.name == s) return f.id;
    }
    throw std::invalid_argument("unknown bound family '" + std::string(s) + "'");
}

std::string_view name(Convention c) {
    return c == Convention::gamma_of_x_plus_1 ? "gamma_of_x_plus_1" : "gamma_of_x";
}

bool in_domain(FamilyId id, double x) {
    if (!std::isfinite(x) || !(x > 0.0)) return false;
    switch (id) {
        case FamilyId::ivady:
        case FamilyId::qi_guo:
        case FamilyId::qi_guo_rearranged:
        case FamilyId::lambda6:
            return x < 1.0;
        case FamilyId::qi_guo_zhang:
            return x <= 1.0;
        case FamilyId::alzer_power:
            return x != 1.0;
        case FamilyId::unitball:
            return x > 0.5;
        case FamilyId::qi_guo_extended:
        case FamilyId::alzer_batir:
        case FamilyId::batir_12:
        case FamilyId::batir_14:
        case FamilyId::batir_15:
            return true;
    }
    return false;
}

BoundPair theorem_bounds(double x, double alpha, double beta) {
    if (!(x > 0.0 && x < 1.0)) domain_failure(FamilyId::qi_guo, x);
    const double lb = ln_base(x, 1.0);
    BoundPair b = make(FamilyId::qi_guo, x, alpha * lb, beta * lb);
    b.guaranteed = alpha >= kAlphaSharp && beta <= kBetaSharp;
    return b;
}

BoundPair extended_bounds(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) domain_failure(FamilyId::qi_guo_extended, x);
    const double whole = std::floor(x);
    const double t = x - whole;
    double ln_product = 0.0;
    for (double i = 0.0; i < whole; i += 1.0) ln_product += std::log(x - i);
    const double lb = (t == 0.0) ? 0.0 : ln_base(t, 1.0);
    BoundPair b = make(FamilyId::qi_guo_extended, x, kAlphaSharp * lb + ln_product, kBetaSharp * lb + ln_product);
    b.is_equality_point = (t == 0.0);
    return b;
}

BoundPair evaluate_family(FamilyId id, double x) {
    if (!in_domain(id, x)) domain_failure(id, x);
    const double g = kEulerGamma;
    switch (id) {
        case FamilyId::ivady: {
            BoundPair b = make(id, x, 0.0, 0.0);
            b.lower = (x * x + 1.0) / (x + 1.0);
            b.upper = (x * x + 2.0) / (x + 2.0);
            return b;
        }
        case FamilyId::qi_guo:
            return theorem_bounds(x);
        case FamilyId::qi_guo_extended:
            return extended_bounds(x);
        case FamilyId::qi_guo_rearranged: {
            const double lb = ln_base(x, 1.0);
            const double lx = std::log(x);
            return make(id, x, kAlphaSharp * lb - lx, kBetaSharp * lb - lx);
        }
        case FamilyId::lambda6: {
            const double lb = ln_base(x, 6.0);
            return make(id, x, 6.0 * g * lb, 7.0 * (1.0 - g) * lb);
        }
        case FamilyId::alzer_power: {
            const double half_gap = 0.5 * (kPiSqOver6 - g);
            const double a = x < 1.0 ? 1.0 - g : half_gap;
            const double c = x < 1.0 ? half_gap : 1.0;
            const double lx = std::log(x);
            return make(id, x, (a * (x - 1.0) - g) * lx, (c * (x - 1.0) - g) * lx);
        }
        case FamilyId::alzer_batir: {
            const double common = kHalfLn2Pi + x * std::log(x) - x;
            return make(id, x, common - 0.5 * refcore::digamma(x + 1.0 / 3.0), common - 0.5 * refcore::digamma(x));
        }
        case FamilyId::qi_guo_zhang: {
            const double lx = std::log(x);
            const double exponent = x * (1.0 - lx + refcore::digamma(x)) * lx;
            BoundPair b = make(id, x, exponent - x, exponent - (x - 1.0));
            b.is_equality_point = (x == 1.0);
            return b;
        }
        case FamilyId::batir_12: {
            const double core = x * std::log(x) - (x + 1.0 / (6.0 * (x + 3.0 / 8.0)));
            return make(id, x, 0.5 * std::log(2.0 * x + 1.0) + core + 4.0 / 9.0,
                        0.5 * std::log(kPi * (2.0 * x + 1.0)) + core);
        }
        case FamilyId::batir_14: {
            const double shift = std::exp(-g);  // 1/e^gamma
            const double lower = 0.5 * std::log(2.0) + (x + 0.5) * std::log(x + 0.5) - x;
            const double upper = g * shift + (x + shift) * std::log(x + shift) - x;
            return make(id, x, lower, upper);
        }
        case FamilyId::batir_15: {
            const double power = (x + 0.5) * (std::log(x + 0.5) - 1.0);
            return make(id, x, 0.5 * (std::log(2.0) + 1.0) + power, kHalfLn2Pi + power);
        }
        case FamilyId::unitball: {
            BoundPair b = make(id, x, 0.0, x * std::log(2.0 * x));
            b.lower = -std::numeric_limits<double>::infinity();
            b.one_sided = true;
            return b;
        }
    }
    domain_failure(id, x);
}

Bracket polygamma_bounds(int k, double x) {
    if (k < 1) throw DomainError("polygamma_bounds: order must be >= 1");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("polygamma_bounds: x must be > 0");
    double factorial_km1 = 1.0;
    for (int i = 2; i < k; ++i) factorial_km1 *= i;
    const double factorial_k = factorial_km1 * k;
    const double lead = factorial_km1 / std::pow(x, k);
    const double next = factorial_k / std::pow(x, k + 1);
    return {lead + 0.5 * next, lead + next};
}

double reference_gamma(const BoundPair& b) {
    const double arg = b.convention == Convention::gamma_of_x_plus_1 ? b.x + 1.0 : b.x;
    return std::exp(refcore::ln_gamma(arg));
}

bool contains_reference(const BoundPair& b) {
    const double g = reference_gamma(b);
    if (b.is_equality_point) {
        const double tol = 1e-12 * g;
        const bool lower_ok = b.one_sided || b.lower < g || std::fabs(b.lower - g) <= tol;
        const bool upper_ok = b.upper > g || std::fabs(b.upper - g) <= tol;
        return lower_ok && upper_ok;
    }
    return (b.one_sided || b.lower < g) && g < b.upper;
}

BoundPair normalized(const BoundPair& b) {
    if (b.convention == Convention::gamma_of_x_plus_1) return b;
    BoundPair n = b;
    n.convention = Convention::gamma_of_x_plus_1;
    if (!n.one_sided) n.lower *= b.x;
    n.upper *= b.x;
    return n;
}

}  // namespace gamma_envelope::bounds
