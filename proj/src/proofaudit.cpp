#include "gamma_envelope/proofaudit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gamma_envelope/numeric.hpp"
#include "gamma_envelope/refcore.hpp"
#include "gamma_envelope/report.hpp"

namespace gamma_envelope::proofaudit {
namespace {

using refcore::kEulerGamma;

constexpr double kLimitAtOne = 2.0 * (1.0 - kEulerGamma);
constexpr double kSingularBand = 1e-6;
constexpr double kSmallArgument = 1e-8;

// Ascending coefficients, mirrored from the exact polynomials in polycert.
constexpr std::array<double, 5> kH1 = {-3, -4, -2, 4, 1};
constexpr std::array<double, 7> kH3 = {-1, -6, -21, -16, -3, 6, 1};
constexpr std::array<double, 6> kH4 = {-1, -7, -8, -2, 5, 1};
constexpr std::array<double, 8> kH5 = {-6, -83, -198, -205, -62, 27, 34, 5};

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

double h1(double x) { return horner(kH1, x); }
double h3(double x) { return horner(kH3, x); }
double h4(double x) { return horner(kH4, x); }
double h5(double x) { return horner(kH5, x); }

// (x-1)(x^2+2x-1) - (x+1)(x^2+1) ln((x^2+1)/(x+1)); vanishes to second order at 1
double h2(double x) {
    return (x - 1.0) * (x * x + 2.0 * x - 1.0) - (x + 1.0) * (x * x + 1.0) * std::log1p(x * (x - 1.0) / (x + 1.0));
}

// (x+1)(x^2+1)
double cubic(double x) { return (x + 1.0) * (x * x + 1.0); }

void require_unit(double x, bool open_left, bool open_right, const char* what) {
    const bool ok = std::isfinite(x) && (open_left ? x > 0.0 : x >= 0.0) && (open_right ? x < 1.0 : x <= 1.0);
    if (!ok) {
        std::ostringstream os;
        os << what << ": x = " << x << " outside its domain";
        throw DomainError(os.str());
    }
}

// Result of scanning f over a grid for a strict sign.
struct SignScan {
    double extreme;  // max for negative claims, min for positive claims
    std::optional<double> violation;
    double extreme_at;
};

SignScan scan_sign(const std::function<double(double)>& f, const std::vector<double>& xs, bool negative) {
    SignScan s{negative ? -INFINITY : INFINITY, std::nullopt, xs.front()};
    for (double x : xs) {
        const double v = f(x);
        if (negative ? v > s.extreme : v < s.extreme) {
            s.extreme = v;
            s.extreme_at = x;
        }
        if (!s.violation && (negative ? !(v < 0.0) : !(v > 0.0))) s.violation = x;
    }
    return s;
}

ProofClaim sign_claim(std::string name, std::string expected, const std::function<double(double)>& f,
                      const std::vector<double>& xs, bool negative) {
    const auto s = scan_sign(f, xs, negative);
    ProofClaim c;
    c.name = std::move(name);
    c.kind = ClaimKind::sign;
    c.a = xs.front();
    c.b = xs.back();
    c.expected = std::move(expected);
    c.measured = s.extreme;
    c.verdict = s.violation ? ClaimVerdict::fail : ClaimVerdict::pass;
    c.witness = s.violation ? s.violation : std::optional<double>(s.extreme_at);
    return c;
}

// Every consecutive difference must be strictly positive (increasing) or
// strictly negative (decreasing). `measured` is the largest step against
// the claimed direction, clipped at zero.
ProofClaim monotone_claim(std::string name, std::string expected, const std::function<double(double)>& f,
                          const std::vector<double>& xs, bool increasing) {
    ProofClaim c;
    c.name = std::move(name);
    c.kind = ClaimKind::monotonicity;
    c.a = xs.front();
    c.b = xs.back();
    c.expected = std::move(expected);
    double worst = 0.0;
    double prev = f(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double v = f(xs[i]);
        const double step = increasing ? prev - v : v - prev;  // >= 0 is a violation
        if (step >= 0.0 && !c.witness) c.witness = xs[i];
        worst = std::max(worst, step);
        prev = v;
    }
    c.measured = worst;
    c.verdict = c.witness ? ClaimVerdict::fail : ClaimVerdict::pass;
    return c;
}

ProofClaim endpoint_claim(std::string name, double x, double value, double printed, int decimals) {
    ProofClaim c;
    c.name = std::move(name);
    c.kind = ClaimKind::endpoint_value;
    c.a = c.b = x;
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(decimals);
    os << printed << "...";
    c.expected = os.str();
    c.measured = value;
    c.verdict = matches_printed(value, printed, decimals) ? ClaimVerdict::pass : ClaimVerdict::fail;
    c.witness = x;
    return c;
}

ProofClaim limit_claim(std::string name, std::string expected, double x, double value, double target, double tol) {
    ProofClaim c;
    c.name = std::move(name);
    c.kind = ClaimKind::limit;
    c.a = c.b = x;
    c.expected = std::move(expected);
    c.measured = value;
    c.verdict = std::fabs(value - target) <= tol ? ClaimVerdict::pass : ClaimVerdict::fail;
    c.witness = x;
    return c;
}

}  // namespace

double ratio_R(double x) {
    if (!(x > 0.0) || !(x <= 1.0)) {
        std::ostringstream os;
        os << "ratio_R: x = " << x << " outside (0, 1]";
        throw DomainError(os.str());
    }
    if (x <= kSmallArgument) return kEulerGamma;
    if (1.0 - x < kSingularBand) {
        const double quotient = cubic(x) * refcore::digamma(x + 1.0) / (x * x + 2.0 * x - 1.0);
        return 0.5 * (kLimitAtOne + quotient);
    }
    return refcore::ln_gamma(x + 1.0) / std::log1p(x * (x - 1.0) / (x + 1.0));
}

double lemma_expr(int i, double x) {
    require_unit(x, false, false, "lemma_expr");
    switch (i) {
        case 1: return h1(x);
        case 2: return h2(x);
        case 3: return h3(x);
        case 4: return h4(x);
        case 5: return h5(x);
        default: throw DomainError("lemma_expr: index must be in 1..5, got " + std::to_string(i));
    }
}

std::string_view name(ProofFunction f) {
    switch (f) {
        case ProofFunction::f_over_g_prime: return "f_over_g_prime";
        case ProofFunction::q: return "q";
        case ProofFunction::q1: return "q1";
        case ProofFunction::q1_prime: return "q1_prime";
    }
    return "?";
}

ProofFunction parse_proof_function(std::string_view s) {
    for (auto f : {ProofFunction::f_over_g_prime, ProofFunction::q, ProofFunction::q1, ProofFunction::q1_prime}) {
        if (name(f) == s) return f;
    }
    throw std::invalid_argument("unknown proof function '" + std::string(s) + "'");
}

double proof_function(ProofFunction f, double x) {
    switch (f) {
        case ProofFunction::f_over_g_prime: {
            require_unit(x, true, true, "f_over_g_prime");
            const double bracket = (x - 1.0) * refcore::digamma(x + 1.0) - refcore::ln_gamma(x + 1.0);
            return cubic(x) * bracket / h2(x);
        }
        case ProofFunction::q: {
            require_unit(x, false, false, "q");
            return refcore::ln_gamma(x + 1.0) - (x - 1.0) * refcore::digamma(x + 1.0) -
                   cubic(x) / h1(x) * h2(x) * refcore::polygamma(1, x + 1.0);
        }
        case ProofFunction::q1: {
            require_unit(x, false, false, "q1");
            return 2.0 * h3(x) * refcore::polygamma(1, x + 1.0) + cubic(x) * h1(x) * refcore::polygamma(2, x + 1.0);
        }
        case ProofFunction::q1_prime: {
            require_unit(x, false, false, "q1_prime");
            const double inner =
                3.0 * (3.0 * x * x + 2.0 * x + 1.0) * refcore::polygamma(2, x + 1.0) + cubic(x) * refcore::polygamma(3, x + 1.0);
            return 12.0 * h4(x) * refcore::polygamma(1, x + 1.0) + h1(x) * inner;
        }
    }
    throw std::invalid_argument("proof_function: unknown function");
}

std::string_view name(ClaimKind k) {
    switch (k) {
        case ClaimKind::sign: return "sign";
        case ClaimKind::monotonicity: return "monotonicity";
        case ClaimKind::unique_zero: return "unique_zero";
        case ClaimKind::unique_minimum: return "unique_minimum";
        case ClaimKind::endpoint_value: return "endpoint_value";
        case ClaimKind::limit: return "limit";
    }
    return "?";
}

std::string_view name(ClaimVerdict v) { return v == ClaimVerdict::pass ? "pass" : "fail"; }

bool matches_printed(double value, double printed, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::trunc(value * scale) == std::round(printed * scale);
}

std::vector<ProofClaim> audit_proof(int grid_n) {
    if (grid_n < 100) throw std::invalid_argument("audit_proof: grid_n must be >= 100");
    const auto closed = numeric::closed_grid(0.0, 1.0, grid_n);
    const auto open = numeric::inset_grid(0.0, 1.0, grid_n);
    auto pf = [](ProofFunction f) { return [f](double x) { return proof_function(f, x); }; };

    std::vector<ProofClaim> claims;
    claims.push_back(sign_claim("h1_negative", "x^4+4x^3-2x^2-4x-3 < 0 on [0,1]", h1, closed, true));
    claims.push_back(sign_claim("h2_positive", "h2(x) > 0 on (0,1)", h2, open, false));
    claims.push_back(monotone_claim("h2_ratio_decreasing", "h2/((x+1)(x^2+1)) strictly decreasing on [0,1]",
                                    [](double x) { return h2(x) / cubic(x); }, closed, false));
    claims.push_back(limit_claim("h2_at_0", "h2(0) = 1", 0.0, h2(0.0), 1.0, 1e-12));
    claims.push_back(limit_claim("h2_at_1", "h2(1) = 0", 1.0, h2(1.0), 0.0, 1e-15));
    claims.push_back(sign_claim("h3_negative", "x^6+6x^5-3x^4-16x^3-21x^2-6x-1 < 0 on (0,1)", h3, closed, true));
    claims.push_back(sign_claim("h4_negative", "x^5+5x^4-2x^3-8x^2-7x-1 < 0 on (0,1)", h4, closed, true));
    claims.push_back(
        sign_claim("h5_negative", "5x^7+34x^6+27x^5-62x^4-205x^3-198x^2-83x-6 < 0 on (0,1)", h5, closed, true));

    claims.push_back(sign_claim("q1_prime_negative", "q1'(x) < 0 on [0,1]", pf(ProofFunction::q1_prime), closed, true));
    claims.push_back(monotone_claim("q1_strictly_decreasing", "q1 strictly decreasing on [0,1]", pf(ProofFunction::q1),
                                    closed, false));
    const double q1_0 = proof_function(ProofFunction::q1, 0.0);
    const double q1_1 = proof_function(ProofFunction::q1, 1.0);
    claims.push_back(endpoint_claim("q1_at_0", 0.0, q1_0, 3.922, 3));
    claims.push_back(endpoint_claim("q1_at_1", 1.0, q1_1, -45.128, 3));

    {
        ProofClaim c;
        c.name = "q1_unique_zero";
        c.kind = ClaimKind::unique_zero;
        c.a = 0.0;
        c.b = 1.0;
        c.expected = "exactly one sign change on the grid, bisection converges to 1e-12";
        int changes = 0;
        std::optional<std::size_t> bracket;
        double prev = q1_0;
        for (std::size_t i = 1; i < closed.size(); ++i) {
            const double v = proof_function(ProofFunction::q1, closed[i]);
            if (numeric::sign_of(v) != numeric::sign_of(prev)) {
                ++changes;
                if (!bracket) bracket = i;
            }
            prev = v;
        }
        std::optional<double> root;
        if (bracket) root = numeric::bisect(pf(ProofFunction::q1), closed[*bracket - 1], closed[*bracket], 1e-12);
        c.measured = changes;
        c.witness = root ? root : std::optional<double>(bracket ? closed[*bracket] : 0.0);
        c.verdict = (changes == 1 && root) ? ClaimVerdict::pass : ClaimVerdict::fail;
        claims.push_back(c);
    }
    {
        ProofClaim c;
        c.name = "q_unique_minimum";
        c.kind = ClaimKind::unique_minimum;
        c.a = open.front();
        c.b = open.back();
        c.expected = "first differences of q change sign exactly once, - to +";
        std::vector<double> values(open.size());
        for (std::size_t i = 0; i < open.size(); ++i) values[i] = proof_function(ProofFunction::q, open[i]);
        int changes = 0;
        bool down_to_up = true;
        int prev_sign = numeric::sign_of(values[1] - values[0]);
        std::size_t argmin = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i] < values[argmin]) argmin = i;
            const int s = numeric::sign_of(values[i] - values[i - 1]);
            if (s != prev_sign) {
                ++changes;
                if (!(prev_sign < 0 && s > 0)) down_to_up = false;
            }
            prev_sign = s;
        }
        c.measured = changes;
        c.witness = open[argmin];
        c.verdict = (changes == 1 && down_to_up) ? ClaimVerdict::pass : ClaimVerdict::fail;
        claims.push_back(c);
    }
    const double q0 = proof_function(ProofFunction::q, 0.0);
    claims.push_back(endpoint_claim("q_at_0", 0.0, q0, -0.028, 3));
    claims.push_back(limit_claim("q_at_1", "q(1) = 0", 1.0, proof_function(ProofFunction::q, 1.0), 0.0, 1e-10));
    claims.push_back(sign_claim("q_negative_interior", "q(x) < 0 on (0,1)", pf(ProofFunction::q), open, true));
    claims.push_back(monotone_claim("f_over_g_prime_increasing", "f'/g' strictly increasing on (0,1)",
                                    pf(ProofFunction::f_over_g_prime), open, true));

    claims.push_back(limit_claim("ratio_limit_at_0", "ratio -> gamma as x -> 0+", kSmallArgument,
                                 ratio_R(kSmallArgument), kEulerGamma, 1e-6));
    claims.push_back(limit_claim("ratio_limit_at_1", "ratio -> 2(1-gamma) as x -> 1-", 1.0 - kSmallArgument,
                                 ratio_R(1.0 - kSmallArgument), kLimitAtOne, 1e-6));
    claims.push_back(monotone_claim("ratio_strictly_increasing", "ratio strictly increasing on (0,1)", ratio_R,
                                    numeric::closed_grid(1e-4, 1.0 - 1e-4, grid_n), true));
    return claims;
}

bool all_pass(const std::vector<ProofClaim>& claims) {
    return std::all_of(claims.begin(), claims.end(), [](const ProofClaim& c) { return c.verdict == ClaimVerdict::pass; });
}

nlohmann::json to_json(const std::vector<ProofClaim>& claims) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : claims) {
        nlohmann::json j = {
            {"name", c.name},
            {"kind", name(c.kind)},
            {"interval", {c.a, c.b}},
            {"expected", c.expected},
            {"measured", c.measured},
            {"verdict", name(c.verdict)},
        };
        j["witness"] = c.witness ? nlohmann::json(*c.witness) : nlohmann::json(nullptr);
        arr.push_back(j);
    }
    return arr;
}

std::string to_markdown(const std::vector<ProofClaim>& claims) {
    report::MarkdownTable t({"claim", "expected", "measured", "verdict", "witness"});
    for (const auto& c : claims) {
        t.add_row({c.name, c.expected, report::format_double(c.measured), std::string(name(c.verdict)),
                   c.witness ? report::format_double(*c.witness) : "-"});
    }
    return t.str();
}

}  // namespace gamma_envelope::proofaudit
