#include "gamma_envelope/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gamma_envelope/numeric.hpp"
#include "gamma_envelope/proofaudit.hpp"
#include "gamma_envelope/refcore.hpp"
#include "gamma_envelope/report.hpp"

namespace gamma_envelope::analysis {
namespace {

using bounds::FamilyId;
using refcore::kEulerGamma;

constexpr double kBand = 1e-6;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kCrossoverScan = 1000;
constexpr double kCrossoverTol = 1e-10;
constexpr int kShortRun = 10;
constexpr double kNoiseUlps = 64.0;

[[noreturn]] void domain(const char* what, double x) {
    std::ostringstream os;
    os << what << ": argument " << x << " outside the domain";
    throw DomainError(os.str());
}

double require_param(double p, const char* what) {
    if (!(p > 0.0) || !std::isfinite(p)) domain(what, p);
    return p;
}

std::string fmt(double v) { return report::format_double(v); }
std::string fmt_short(double v) { return report::format_short(v); }

std::string join_short(const std::vector<double>& xs) {
    if (xs.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt_short(xs[i]);
    }
    return out;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

// ---- functions under study ------------------------------------------------

double ratio_global(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) domain("ratio_R", x);
    if (x <= 1.0) return proofaudit::ratio_R(x);
    if (x - 1.0 < kBand) {
        const double quotient = (x + 1.0) * (x * x + 1.0) * refcore::digamma(x + 1.0) / (x * x + 2.0 * x - 1.0);
        return 0.5 * (2.0 * (1.0 - kEulerGamma) + quotient);
    }
    return refcore::ln_gamma(x + 1.0) / std::log1p(x * (x - 1.0) / (x + 1.0));
}

double lambda_ratio(double lambda, double x) {
    require_param(lambda, "lambda_ratio lambda");
    if (!(x > 0.0) || !(x < 1.0)) domain("lambda_ratio", x);
    return refcore::ln_gamma(x + 1.0) / std::log1p(x * (x - 1.0) / (x + lambda));
}

double tau_ratio(double tau, double x) {
    require_param(tau, "tau_ratio tau");
    if (!(x > 0.0) || !std::isfinite(x)) domain("tau_ratio", x);
    const double limit = -(1.0 + tau) * kEulerGamma;
    if (x == 1.0) return limit;
    if (std::fabs(x - 1.0) < kBand) {
        const double denominator_slope = 2.0 * x / (x * x + tau) - 1.0 / (x + tau);
        return 0.5 * (limit + refcore::digamma(x) / denominator_slope);
    }
    return refcore::ln_gamma(x) / std::log1p(x * (x - 1.0) / (x + tau));
}

double h_cm(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) domain("h_cm", x);
    if (x == 1.0) return 2.0;
    const double num = (x > 0.5 && x < 2.0) ? std::log1p(x - 1.0) : std::log(x);
    return num / std::log1p(x * (x - 1.0) / (1.0 + x));
}

double F_unitball(double x) {
    if (!(x > 0.5) || !std::isfinite(x)) domain("F_unitball", x);
    return refcore::ln_gamma(x + 1.0) / (x * std::log(2.0 * x));
}

Function resolve(std::string_view id) {
    const auto open = id.find('(');
    if (open != std::string_view::npos) {
        if (id.back() != ')') throw std::invalid_argument("malformed function id '" + std::string(id) + "'");
        const auto head = id.substr(0, open);
        const auto arg = id.substr(open + 1, id.size() - open - 2);
        double p = 0.0;
        const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), p);
        if (res.ec != std::errc() || res.ptr != arg.data() + arg.size())
            throw std::invalid_argument("bad parameter in function id '" + std::string(id) + "'");
        require_param(p, "function parameter");
        if (head == "lambda_ratio") return [p](double x) { return lambda_ratio(p, x); };
        if (head == "tau_ratio") return [p](double x) { return tau_ratio(p, x); };
        throw std::invalid_argument("unknown function id '" + std::string(id) + "'");
    }
    if (id == "ratio_R") return ratio_global;
    if (id == "F_unitball") return F_unitball;
    if (id == "h_cm") return h_cm;
    try {
        const auto pf = proofaudit::parse_proof_function(id);
        return [pf](double x) { return proofaudit::proof_function(pf, x); };
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("unknown function id '" + std::string(id) + "'");
    }
}

std::vector<std::string> registered_functions() {
    return {"ratio_R", "lambda_ratio(L)", "tau_ratio(T)", "F_unitball", "h_cm", "f_over_g_prime", "q", "q1", "q1_prime"};
}

// ---- monotonicity ---------------------------------------------------------

std::string_view name(Direction d) { return d == Direction::increasing ? "increasing" : "decreasing"; }

Direction parse_direction(std::string_view s) {
    if (s == "increasing") return Direction::increasing;
    if (s == "decreasing") return Direction::decreasing;
    throw std::invalid_argument("direction must be increasing or decreasing");
}

std::string_view name(Verdict v) { return v == Verdict::consistent ? "consistent" : "violated"; }

MonotonicityReport check_monotone(std::string_view function_id, double a, double b, Direction direction, int grid_n) {
    return check_monotone(resolve(function_id), std::string(function_id), a, b, direction, grid_n);
}

MonotonicityReport check_monotone(const Function& f, std::string function_id, double a, double b, Direction direction,
                                  int grid_n) {
    if (!(a < b)) throw std::invalid_argument("check_monotone: need a < b");
    if (grid_n < 3) throw std::invalid_argument("check_monotone: grid_n must be >= 3");
    MonotonicityReport r;
    r.function_id = std::move(function_id);
    r.a = a;
    r.b = b;
    r.grid_n = grid_n;
    r.direction = direction;
    r.min_abs_diff = INFINITY;
    const auto xs = numeric::inset_grid(a, b, grid_n);
    double prev = f(xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double v = f(xs[i]);
        const double d = v - prev;
        r.min_abs_diff = std::min(r.min_abs_diff, std::fabs(d));
        const bool ok = direction == Direction::increasing ? d > 0.0 : d < 0.0;
        if (!ok) r.strict_violations.push_back({xs[i], d});
        prev = v;
    }
    r.verdict = r.strict_violations.empty() ? Verdict::consistent : Verdict::violated;
    return r;
}

MonotonicityReport check_concave(const Function& f, std::string function_id, double a, double b, int grid_n) {
    if (!(a < b)) throw std::invalid_argument("check_concave: need a < b");
    if (grid_n < 3) throw std::invalid_argument("check_concave: grid_n must be >= 3");
    MonotonicityReport r;
    r.function_id = std::move(function_id);
    r.a = a;
    r.b = b;
    r.grid_n = grid_n;
    r.direction = Direction::decreasing;  // of the first differences
    r.min_abs_diff = INFINITY;
    const auto xs = numeric::inset_grid(a, b, grid_n);
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = f(xs[i]);
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double d2 = v[i + 1] - 2.0 * v[i] + v[i - 1];
        r.min_abs_diff = std::min(r.min_abs_diff, std::fabs(d2));
        if (!(d2 < 0.0)) r.strict_violations.push_back({xs[i], d2});
    }
    r.verdict = r.strict_violations.empty() ? Verdict::consistent : Verdict::violated;
    return r;
}

// ---- open problem ---------------------------------------------------------

std::string_view name(LambdaClass c) {
    switch (c) {
        case LambdaClass::increasing: return "increasing";
        case LambdaClass::decreasing: return "decreasing";
        case LambdaClass::non_monotone: return "non_monotone";
        case LambdaClass::indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

LambdaRow classify_row(double lambda, int grid_n) {
    const auto xs = numeric::inset_grid(0.0, 1.0, grid_n);
    int changes = 0;
    int prev_sign = 0;
    int run = 0;
    int longest_up = 0, longest_down = 0;
    bool all_up = true, all_down = true;
    double prev = lambda_ratio(lambda, xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double v = lambda_ratio(lambda, xs[i]);
        const int s = numeric::sign_of(v - prev);
        prev = v;
        if (s != 1) all_up = false;
        if (s != -1) all_down = false;
        if (i > 1 && s != prev_sign) {
            ++changes;
            run = 0;
        }
        ++run;
        if (s == 1) longest_up = std::max(longest_up, run);
        if (s == -1) longest_down = std::max(longest_down, run);
        prev_sign = s;
    }
    LambdaClass cls = LambdaClass::indeterminate;
    if (all_up) {
        cls = LambdaClass::increasing;
    } else if (all_down) {
        cls = LambdaClass::decreasing;
    } else if (longest_up > kShortRun && longest_down > kShortRun) {
        cls = LambdaClass::non_monotone;
    }
    return {lambda, cls, changes};
}

}  // namespace

LambdaClass classify_lambda(double lambda, int grid_n) {
    require_param(lambda, "classify_lambda");
    if (grid_n < 3) throw std::invalid_argument("classify_lambda: grid_n must be >= 3");
    return classify_row(lambda, grid_n).cls;
}

LambdaSearch search_lambda_thresholds(int grid_n, double lambda_tol) {
    if (grid_n < 1000) throw std::invalid_argument("search_lambda_thresholds: grid_n must be >= 1000");
    if (!(lambda_tol > 0.0)) throw std::invalid_argument("search_lambda_thresholds: lambda_tol must be > 0");
    LambdaSearch s;
    s.grid_n = grid_n;
    s.lambda_tol = lambda_tol;
    for (int k = 0; k <= 50; ++k) s.table.push_back(classify_row(1.0 + k / 10.0, grid_n));

    auto is = [grid_n](double lambda, LambdaClass c) { return classify_row(lambda, grid_n).cls == c; };

    s.lambda_inc_max = s.inc_lo = s.inc_hi = kNaN;
    for (std::size_t k = 1; k < s.table.size(); ++k) {
        if (s.table[0].cls != LambdaClass::increasing) break;
        if (s.table[k].cls != LambdaClass::increasing) {
            double lo = s.table[k - 1].lambda, hi = s.table[k].lambda;
            while (hi - lo > lambda_tol) {
                const double mid = 0.5 * (lo + hi);
                (is(mid, LambdaClass::increasing) ? lo : hi) = mid;
            }
            s.inc_lo = lo;
            s.inc_hi = hi;
            s.lambda_inc_max = lo;
            break;
        }
    }

    s.lambda_dec_min = s.dec_lo = s.dec_hi = kNaN;
    for (std::size_t k = s.table.size() - 1; k-- > 0;) {
        if (s.table.back().cls != LambdaClass::decreasing) break;
        if (s.table[k].cls != LambdaClass::decreasing) {
            double lo = s.table[k].lambda, hi = s.table[k + 1].lambda;
            while (hi - lo > lambda_tol) {
                const double mid = 0.5 * (lo + hi);
                (is(mid, LambdaClass::decreasing) ? hi : lo) = mid;
            }
            s.dec_lo = lo;
            s.dec_hi = hi;
            s.lambda_dec_min = hi;
            break;
        }
    }
    return s;
}

// ---- complete monotonicity ------------------------------------------------

CMReport cm_probe(std::string_view function_id, double a, double b, int max_order, double step) {
    return cm_probe(resolve(function_id), std::string(function_id), a, b, max_order, step);
}

CMReport cm_probe(const Function& f, std::string function_id, double a, double b, int max_order, double step) {
    if (max_order < 0 || max_order > 8) throw std::invalid_argument("cm_probe: max_order must be in 0..8");
    if (!(step > 0.0)) throw std::invalid_argument("cm_probe: step must be > 0");
    if (!(a > 0.0)) throw DomainError("cm_probe: a must be > 0");
    if (!(a + max_order * step <= b)) throw DomainError("cm_probe: difference stencil exceeds [a, b]");

    CMReport r;
    r.function_id = std::move(function_id);
    r.a = a;
    r.b = b;
    r.max_order = max_order;
    r.step = step;

    std::vector<double> xs;
    for (long i = 0;; ++i) {
        const double x = a + static_cast<double>(i) * step;
        if (x > b) break;
        xs.push_back(x);
    }
    std::vector<double> fx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
    const std::size_t points = xs.size() - static_cast<std::size_t>(max_order);
    r.points = points;

    std::vector<double> diff = fx;
    for (int n = 0; n <= max_order; ++n) {
        if (n > 0) {
            for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
            diff.pop_back();
        }
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < points; ++i) {
            double scale = 0.0;
            for (int k = 0; k <= n; ++k) scale = std::max(scale, std::fabs(fx[i + k]));
            const double tol = std::ldexp(1e-12, n) * scale;
            const double value = sign * diff[i];
            if (value < -tol) r.violations.push_back({xs[i], n, value, tol});
        }
    }
    r.verdict = r.violations.empty() ? Verdict::consistent : Verdict::violated;
    return r;
}

// ---- family comparison ----------------------------------------------------

std::string_view name(Side s) { return s == Side::lower ? "lower" : "upper"; }

Side parse_side(std::string_view s) {
    if (s == "lower") return Side::lower;
    if (s == "upper") return Side::upper;
    throw std::invalid_argument("side must be lower or upper");
}

double side_value(FamilyId id, Side side, double x) {
    const auto p = bounds::normalized(bounds::evaluate_family(id, x));
    if (side == Side::lower && p.one_sided)
        throw std::invalid_argument(std::string(bounds::name(id)) + " has no lower bound");
    return side == Side::lower ? p.lower : p.upper;
}

namespace {

void require_valid(FamilyId id, Side side, double lo, double hi) {
    if (side == Side::lower && bounds::info(id).one_sided)
        throw std::invalid_argument(std::string(bounds::name(id)) + " has no lower bound");
    const double e = (hi - lo) * 1e-6;
    if (!bounds::in_domain(id, lo + e) || !bounds::in_domain(id, hi - e))
        throw std::invalid_argument(std::string(bounds::name(id)) + " is not valid on the requested interval");
}

// NaN where the family cannot be evaluated (alzer_power at exactly 1).
double side_value_or_nan(FamilyId id, Side side, double x) {
    try {
        return side_value(id, side, x);
    } catch (const DomainError&) {
        return kNaN;
    }
}

bool better(Side side, double u, double v) { return side == Side::lower ? u > v : u < v; }

}  // namespace

std::vector<double> find_crossover(FamilyId family_a, FamilyId family_b, Side side, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("find_crossover: need lo < hi");
    require_valid(family_a, side, lo, hi);
    require_valid(family_b, side, lo, hi);
    // Differences within a few ulps are rounding noise between equal formulas.
    auto gap = [=](double x) {
        const double u = side_value_or_nan(family_a, side, x);
        const double v = side_value_or_nan(family_b, side, x);
        const double d = u - v;
        return std::fabs(d) <= kNoiseUlps * std::numeric_limits<double>::epsilon() * std::max(std::fabs(u), std::fabs(v)) ? 0.0 : d;
    };
    std::vector<double> out;
    int prev_sign = 0;
    double prev_x = 0.0;
    for (double x : numeric::inset_grid(lo, hi, kCrossoverScan)) {
        const int s = numeric::sign_of(gap(x));  // NaN gives 0 and is skipped
        if (s == 0) continue;
        if (prev_sign != 0 && s != prev_sign) {
            if (auto root = numeric::bisect(gap, prev_x, x, kCrossoverTol)) out.push_back(*root);
        }
        prev_sign = s;
        prev_x = x;
    }
    return out;
}

std::string_view name(FindingVerdict v) {
    switch (v) {
        case FindingVerdict::pass: return "pass";
        case FindingVerdict::fail: return "fail";
        case FindingVerdict::flagged: return "flagged";
    }
    return "?";
}

namespace {

constexpr double kSmallX = 1e-3;

struct Pairing {
    FamilyId a, b;
    Side side;
    std::vector<double> crossings;
    bool a_wins_mid;
    bool a_wins_small;
};

Pairing pair_up(FamilyId a, FamilyId b, Side side) {
    Pairing p{a, b, side, find_crossover(a, b, side, 0.0, 1.0), false, false};
    p.a_wins_mid = better(side, side_value(a, side, 0.5), side_value(b, side, 0.5));
    p.a_wins_small = better(side, side_value(a, side, kSmallX), side_value(b, side, kSmallX));
    return p;
}

std::string describe(const Pairing& p) {
    std::ostringstream os;
    os << name(p.side) << ": crossovers " << join_short(p.crossings) << "; " << bounds::name(p.a)
       << (p.a_wins_small ? " tighter" : " looser") << " at x=" << kSmallX;
    return os.str();
}

bool dominates(const Pairing& p) {
    // No crossover and the first family tighter somewhere means tighter everywhere.
    return p.crossings.empty() && p.a_wins_mid;
}

ComparisonFinding finding(std::string id, std::string claim, std::vector<FamilyId> families, bool ok,
                      const std::vector<const Pairing*>& evidence) {
    ComparisonFinding f{std::move(id), std::move(claim), std::move(families), ok ? FindingVerdict::pass : FindingVerdict::fail,
                    ""};
    for (std::size_t i = 0; i < evidence.size(); ++i) {
        if (i) f.detail += " | ";
        f.detail += describe(*evidence[i]);
    }
    return f;
}

}  // namespace

std::vector<ComparisonFinding> comparison_findings() {
    using F = FamilyId;
    const auto L = Side::lower;
    const auto U = Side::upper;

    const auto qg_iv_l = pair_up(F::qi_guo, F::ivady, L);
    const auto qg_iv_u = pair_up(F::qi_guo, F::ivady, U);
    const auto re_al_l = pair_up(F::qi_guo_rearranged, F::alzer_power, L);
    const auto re_al_u = pair_up(F::qi_guo_rearranged, F::alzer_power, U);
    const auto re_ab_l = pair_up(F::qi_guo_rearranged, F::alzer_batir, L);
    const auto re_ab_u = pair_up(F::qi_guo_rearranged, F::alzer_batir, U);
    const auto re_qz_l = pair_up(F::qi_guo_rearranged, F::qi_guo_zhang, L);
    const auto re_qz_u = pair_up(F::qi_guo_rearranged, F::qi_guo_zhang, U);
    const auto qg_14_l = pair_up(F::qi_guo, F::batir_14, L);
    const auto qg_14_u = pair_up(F::qi_guo, F::batir_14, U);
    const auto qg_15_l = pair_up(F::qi_guo, F::batir_15, L);
    const auto qg_15_u = pair_up(F::qi_guo, F::batir_15, U);
    const auto qg_12_l = pair_up(F::qi_guo, F::batir_12, L);
    const auto qg_12_u = pair_up(F::qi_guo, F::batir_12, U);

    std::vector<ComparisonFinding> out;
    out.push_back(finding("qi_guo_lower_refines_ivady", "qi_guo lower bound refines ivady lower bound on (0,1)", {F::qi_guo, F::ivady},
                          dominates(qg_iv_l), {&qg_iv_l}));
    {
        auto f = finding("qi_guo_upper_vs_ivady", "qi_guo upper bound refines ivady upper bound on (0,1) (reported, not asserted)",
                         {F::qi_guo, F::ivady}, true, {&qg_iv_u});
        f.verdict = FindingVerdict::flagged;
        out.push_back(f);
    }
    out.push_back(finding("rearranged_alzer_power_not_nested", "rearranged and alzer_power bounds are not included in each other on (0,1)",
                          {F::qi_guo_rearranged, F::alzer_power},
                          !re_al_l.crossings.empty() || !re_al_u.crossings.empty(), {&re_al_l, &re_al_u}));
    out.push_back(finding("rearranged_beats_alzer_power_small_x", "rearranged bounds beat alzer_power for small x (both sides)",
                          {F::qi_guo_rearranged, F::alzer_power}, re_al_l.a_wins_small && re_al_u.a_wins_small,
                          {&re_al_l, &re_al_u}));
    out.push_back(finding("rearranged_improves_alzer_batir", "rearranged bounds improve alzer_batir on (0,1) (both sides)",
                          {F::qi_guo_rearranged, F::alzer_batir}, dominates(re_ab_l) && dominates(re_ab_u),
                          {&re_ab_l, &re_ab_u}));
    out.push_back(finding("rearranged_lower_refines_qi_guo_zhang", "rearranged lower bound refines qi_guo_zhang lower bound on (0,1)",
                          {F::qi_guo_rearranged, F::qi_guo_zhang}, dominates(re_qz_l), {&re_qz_l}));
    out.push_back(finding("rearranged_qi_guo_zhang_upper_not_nested", "rearranged and qi_guo_zhang upper bounds are not contained in each other",
                          {F::qi_guo_rearranged, F::qi_guo_zhang}, !re_qz_u.crossings.empty(), {&re_qz_u}));
    out.push_back(finding("rearranged_upper_beats_qi_guo_zhang_small_x", "rearranged upper bound beats qi_guo_zhang upper bound for small x",
                          {F::qi_guo_rearranged, F::qi_guo_zhang}, re_qz_u.a_wins_small, {&re_qz_u}));
    out.push_back(finding("qi_guo_batir_14_not_nested", "qi_guo and batir_14 bounds do not include each other on (0,1) (each side)",
                          {F::qi_guo, F::batir_14}, !qg_14_l.crossings.empty() && !qg_14_u.crossings.empty(),
                          {&qg_14_l, &qg_14_u}));
    out.push_back(finding("qi_guo_upper_beats_batir_15", "qi_guo upper bound is better than batir_15 upper bound on (0,1)",
                          {F::qi_guo, F::batir_15}, dominates(qg_15_u), {&qg_15_u}));
    out.push_back(finding("qi_guo_batir_15_lower_not_nested", "qi_guo and batir_15 lower bounds are not included in each other on (0,1)",
                          {F::qi_guo, F::batir_15}, !qg_15_l.crossings.empty(), {&qg_15_l}));
    out.push_back(finding("qi_guo_lower_improves_batir_12", "qi_guo lower bound improves batir_12 lower bound on (0,1)",
                          {F::qi_guo, F::batir_12}, dominates(qg_12_l), {&qg_12_l}));
    {
        auto f = finding("qi_guo_batir_12_upper_not_nested",
                         "upper bounds do not contain each other (statement names one family twice; read as qi_guo vs "
                         "batir_12, reported, not asserted)",
                         {F::qi_guo, F::batir_12}, true, {&qg_12_u});
        f.verdict = FindingVerdict::flagged;
        out.push_back(f);
    }
    return out;
}

bool all_pass(const std::vector<ComparisonFinding>& findings) {
    return std::none_of(findings.begin(), findings.end(),
                        [](const ComparisonFinding& f) { return f.verdict == FindingVerdict::fail; });
}

ComparisonReport compare_families(Side side, double a, double b, int grid_n, std::vector<FamilyId> families) {
    if (families.empty()) throw std::invalid_argument("compare_families: empty family list");
    if (!(a < b)) throw std::invalid_argument("compare_families: need a < b");
    if (grid_n < 3) throw std::invalid_argument("compare_families: grid_n must be >= 3");
    for (auto id : families) require_valid(id, side, a, b);

    ComparisonReport r;
    r.side = side;
    r.a = a;
    r.b = b;
    r.families = families;
    r.grid = numeric::inset_grid(a, b, grid_n);
    r.values.assign(families.size(), std::vector<double>(r.grid.size()));
    for (std::size_t i = 0; i < families.size(); ++i)
        for (std::size_t j = 0; j < r.grid.size(); ++j) r.values[i][j] = side_value_or_nan(families[i], side, r.grid[j]);

    for (std::size_t j = 0; j < r.grid.size(); ++j) {
        std::size_t best = families.size();
        for (std::size_t i = 0; i < families.size(); ++i) {
            const double v = r.values[i][j];
            if (std::isnan(v)) continue;
            if (best == families.size() || better(side, v, r.values[best][j])) best = i;
        }
        r.winner_per_point.push_back(families[best == families.size() ? 0 : best]);
    }

    for (std::size_t i = 0; i < families.size(); ++i)
        for (std::size_t k = i + 1; k < families.size(); ++k)
            for (double x : find_crossover(families[i], families[k], side, a, b))
                r.crossovers.push_back({families[i], families[k], x});

    auto included = [&](const ComparisonFinding& f) {
        return std::all_of(f.families.begin(), f.families.end(), [&](FamilyId id) {
            return std::find(families.begin(), families.end(), id) != families.end();
        });
    };
    for (auto& f : comparison_findings())
        if (included(f)) r.comparison_findings.push_back(std::move(f));
    return r;
}

// ---- serialization --------------------------------------------------------

nlohmann::json to_json(const MonotonicityReport& r) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& s : r.strict_violations) v.push_back({{"x", s.x}, {"diff", s.diff}});
    return {{"function_id", r.function_id},
            {"interval", {r.a, r.b}},
            {"grid_n", r.grid_n},
            {"direction", name(r.direction)},
            {"strict_violations", v},
            {"min_abs_diff", finite_or_null(r.min_abs_diff)},
            {"verdict", name(r.verdict)}};
}

nlohmann::json to_json(const CMReport& r) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& c : r.violations)
        v.push_back({{"x", c.x}, {"order", c.order}, {"value", c.value}, {"tolerance", c.tolerance}});
    return {{"function_id", r.function_id},
            {"interval", {r.a, r.b}},
            {"max_order", r.max_order},
            {"step", r.step},
            {"points", r.points},
            {"violations", v},
            {"verdict", name(r.verdict)}};
}

nlohmann::json to_json(const LambdaSearch& r) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& row : r.table)
        table.push_back({{"lambda", row.lambda}, {"class", name(row.cls)}, {"sign_changes", row.sign_changes}});
    return {{"note", "numerical estimates for an open problem"},
            {"grid_n", r.grid_n},
            {"lambda_tol", r.lambda_tol},
            {"lambda_inc_max", finite_or_null(r.lambda_inc_max)},
            {"inc_bracket", {finite_or_null(r.inc_lo), finite_or_null(r.inc_hi)}},
            {"lambda_dec_min", finite_or_null(r.lambda_dec_min)},
            {"dec_bracket", {finite_or_null(r.dec_lo), finite_or_null(r.dec_hi)}},
            {"classification", table}};
}

nlohmann::json to_json(const std::vector<ComparisonFinding>& findings) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : findings) {
        nlohmann::json fams = nlohmann::json::array();
        for (auto id : f.families) fams.push_back(bounds::name(id));
        arr.push_back({{"id", f.id}, {"claim", f.claim}, {"families", fams}, {"verdict", name(f.verdict)},
                       {"detail", f.detail}});
    }
    return arr;
}

nlohmann::json to_json(const ComparisonReport& r) {
    nlohmann::json fams = nlohmann::json::array();
    for (auto id : r.families) fams.push_back(bounds::name(id));
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t j = 0; j < r.grid.size(); ++j) {
        nlohmann::json vals = nlohmann::json::object();
        for (std::size_t i = 0; i < r.families.size(); ++i)
            vals[std::string(bounds::name(r.families[i]))] = finite_or_null(r.values[i][j]);
        points.push_back({{"x", r.grid[j]}, {"values", vals}, {"winner", bounds::name(r.winner_per_point[j])}});
    }
    nlohmann::json cross = nlohmann::json::array();
    for (const auto& c : r.crossovers)
        cross.push_back({{"family_a", bounds::name(c.a)}, {"family_b", bounds::name(c.b)}, {"x", c.x}});
    return {{"side", name(r.side)},           {"interval", {r.a, r.b}}, {"families", fams},
            {"points", points},               {"crossovers", cross},    {"comparison_findings", to_json(r.comparison_findings)}};
}

std::string to_csv(const MonotonicityReport& r) {
    report::CsvWriter w({"function_id", "a", "b", "grid_n", "direction", "violations", "min_abs_diff", "verdict"});
    w.add_row({r.function_id, fmt(r.a), fmt(r.b), std::to_string(r.grid_n), std::string(name(r.direction)),
               std::to_string(r.strict_violations.size()), fmt(r.min_abs_diff), std::string(name(r.verdict))});
    return w.str();
}

std::string to_csv(const CMReport& r) {
    report::CsvWriter w({"function_id", "a", "b", "max_order", "step", "points", "violations", "verdict"});
    w.add_row({r.function_id, fmt(r.a), fmt(r.b), std::to_string(r.max_order), fmt(r.step), std::to_string(r.points),
               std::to_string(r.violations.size()), std::string(name(r.verdict))});
    return w.str();
}

std::string to_csv(const LambdaSearch& r) {
    report::CsvWriter w({"lambda", "class", "sign_changes"});
    for (const auto& row : r.table) w.add_row({fmt(row.lambda), std::string(name(row.cls)), std::to_string(row.sign_changes)});
    return w.str();
}

std::string to_csv(const ComparisonReport& r) {
    std::vector<std::string> header{"x"};
    for (auto id : r.families) header.emplace_back(bounds::name(id));
    header.emplace_back("winner");
    report::CsvWriter w(header);
    for (std::size_t j = 0; j < r.grid.size(); ++j) {
        std::vector<std::string> row{fmt(r.grid[j])};
        for (std::size_t i = 0; i < r.families.size(); ++i) row.push_back(fmt(r.values[i][j]));
        row.emplace_back(bounds::name(r.winner_per_point[j]));
        w.add_row(std::move(row));
    }
    return w.str();
}

std::string to_markdown(const MonotonicityReport& r) {
    report::MarkdownTable t({"function", "interval", "grid_n", "direction", "violations", "min_abs_diff", "verdict"});
    t.add_row({r.function_id, "(" + fmt_short(r.a) + ", " + fmt_short(r.b) + ")", std::to_string(r.grid_n),
               std::string(name(r.direction)), std::to_string(r.strict_violations.size()), fmt_short(r.min_abs_diff),
               std::string(name(r.verdict))});
    return t.str();
}

std::string to_markdown(const CMReport& r) {
    report::MarkdownTable t({"function", "interval", "max_order", "step", "points", "violations", "verdict"});
    t.add_row({r.function_id, "(" + fmt_short(r.a) + ", " + fmt_short(r.b) + ")", std::to_string(r.max_order),
               fmt_short(r.step), std::to_string(r.points), std::to_string(r.violations.size()),
               std::string(name(r.verdict))});
    return t.str();
}

std::string to_markdown(const LambdaSearch& r) {
    std::ostringstream os;
    os << "Numerical estimates (open problem), grid_n = " << r.grid_n << ", tolerance " << fmt_short(r.lambda_tol)
       << "\n\n";
    report::MarkdownTable est({"threshold", "estimate", "bracket"});
    est.add_row({"largest increasing lambda", fmt_short(r.lambda_inc_max),
                 "[" + fmt_short(r.inc_lo) + ", " + fmt_short(r.inc_hi) + "]"});
    est.add_row({"smallest decreasing lambda", fmt_short(r.lambda_dec_min),
                 "[" + fmt_short(r.dec_lo) + ", " + fmt_short(r.dec_hi) + "]"});
    os << est.str() << "\n";
    report::MarkdownTable t({"lambda", "class", "sign_changes"});
    for (const auto& row : r.table)
        t.add_row({fmt_short(row.lambda), std::string(name(row.cls)), std::to_string(row.sign_changes)});
    os << t.str();
    return os.str();
}

std::string to_markdown(const std::vector<ComparisonFinding>& findings) {
    report::MarkdownTable t({"id", "claim", "verdict", "detail"});
    for (const auto& f : findings) t.add_row({f.id, f.claim, std::string(name(f.verdict)), f.detail});
    return t.str();
}

std::string to_markdown(const ComparisonReport& r) {
    std::ostringstream os;
    os << "Side: " << name(r.side) << ", interval (" << fmt_short(r.a) << ", " << fmt_short(r.b) << "), "
       << r.grid.size() << " points\n\n";
    report::MarkdownTable wins({"family", "points won"});
    for (auto id : r.families) {
        const auto n = std::count(r.winner_per_point.begin(), r.winner_per_point.end(), id);
        wins.add_row({std::string(bounds::name(id)), std::to_string(n)});
    }
    os << wins.str() << "\n";
    report::MarkdownTable cross({"family_a", "family_b", "crossover"});
    for (const auto& c : r.crossovers)
        cross.add_row({std::string(bounds::name(c.a)), std::string(bounds::name(c.b)), fmt_short(c.x)});
    os << cross.str();
    if (!r.comparison_findings.empty()) os << "\n" << to_markdown(r.comparison_findings);
    return os.str();
}

}  // namespace gamma_envelope::analysis
