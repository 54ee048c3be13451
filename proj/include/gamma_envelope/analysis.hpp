#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gamma_envelope/bounds.hpp"
#include "json.hpp"

namespace gamma_envelope::analysis {

using Function = std::function<double(double)>;

// ---- functions under study ------------------------------------------------

/// ln Gamma(x+1) / ln((x^2+1)/(x+1)) on (0, inf). Agrees with
/// proofaudit::ratio_R on (0, 1]; the value at 1 is 2(1 - gamma) and the same
/// averaged L'Hospital band is used on both sides of 1.
double ratio_global(double x);

/// ln Gamma(x+1) / (ln(x^2+lambda) - ln(x+lambda)), lambda > 0, 0 < x < 1.
double lambda_ratio(double lambda, double x);

/// ln Gamma(x) / (ln(x^2+tau) - ln(x+tau)), tau > 0, x > 0.
/// -(1+tau) gamma at x = 1, banded within 1e-6 of 1.
double tau_ratio(double tau, double x);

/// ln x / (ln(1+x^2) - ln(1+x)); 2 at x = 1.
double h_cm(double x);

/// ln Gamma(x+1) / (x ln(2x)), x > 1/2.
double F_unitball(double x);

/// Looks up a function by id. Accepted ids: ratio_R, F_unitball, h_cm,
/// f_over_g_prime, q, q1, q1_prime, and the parametrised forms
/// lambda_ratio(L) and tau_ratio(T). Throws std::invalid_argument otherwise.
Function resolve(std::string_view id);
std::vector<std::string> registered_functions();

// ---- monotonicity ---------------------------------------------------------

enum class Direction { increasing, decreasing };
enum class Verdict { consistent, violated };

std::string_view name(Direction d);
Direction parse_direction(std::string_view s);
std::string_view name(Verdict v);

struct StepViolation {
    double x;
    double diff;
};

struct MonotonicityReport {
    std::string function_id;
    double a = 0.0;
    double b = 0.0;
    int grid_n = 0;
    Direction direction = Direction::increasing;
    std::vector<StepViolation> strict_violations;
    double min_abs_diff = 0.0;
    Verdict verdict = Verdict::consistent;
};

/// grid_n points on [a+e, b-e], e = (b-a)*1e-6; each consecutive difference
/// must be strictly in `direction`.
MonotonicityReport check_monotone(std::string_view function_id, double a, double b, Direction direction, int grid_n);
MonotonicityReport check_monotone(const Function& f, std::string function_id, double a, double b, Direction direction,
                                  int grid_n);

/// Second differences on the same inset grid, all strictly negative.
MonotonicityReport check_concave(const Function& f, std::string function_id, double a, double b, int grid_n);

// ---- open problem: lambda thresholds --------------------------------------

enum class LambdaClass { increasing, decreasing, non_monotone, indeterminate };
std::string_view name(LambdaClass c);

/// Sign analysis of consecutive differences of lambda_ratio(lambda, .) on
/// the inset (0,1) grid. Mixed signs count as non_monotone only when each
/// sign has a run longer than 10 points; otherwise indeterminate.
LambdaClass classify_lambda(double lambda, int grid_n);

struct LambdaRow {
    double lambda;
    LambdaClass cls;
    int sign_changes;
};

struct LambdaSearch {
    int grid_n = 0;
    double lambda_tol = 0.0;
    /// Largest lambda classified increasing; bracket [inc_lo, inc_hi].
    double lambda_inc_max = 0.0;
    double inc_lo = 0.0, inc_hi = 0.0;
    /// Smallest lambda classified decreasing; bracket [dec_lo, dec_hi].
    double lambda_dec_min = 0.0;
    double dec_lo = 0.0, dec_hi = 0.0;
    /// Coarse sweep 1.0, 1.1, ..., 6.0.
    std::vector<LambdaRow> table;
};

/// Numerical estimates only. Throws std::invalid_argument for grid_n < 1000
/// or lambda_tol <= 0.
LambdaSearch search_lambda_thresholds(int grid_n, double lambda_tol);

// ---- complete monotonicity ------------------------------------------------

struct CMViolation {
    double x;
    int order;
    double value;  // (-1)^n Delta^n f(x)
    double tolerance;
};

struct CMReport {
    std::string function_id;
    double a = 0.0;
    double b = 0.0;
    int max_order = 0;
    double step = 0.0;
    std::size_t points = 0;
    std::vector<CMViolation> violations;
    Verdict verdict = Verdict::consistent;
};

/// Forward differences of step `step` at x = a, a+step, ... while the
/// stencil x + max_order*step stays <= b. Order n fails when
/// (-1)^n Delta^n f(x) < -2^n * 1e-12 * max|f| over the stencil.
CMReport cm_probe(std::string_view function_id, double a, double b, int max_order, double step);
CMReport cm_probe(const Function& f, std::string function_id, double a, double b, int max_order, double step);

// ---- family comparison ----------------------------------------------------

enum class Side { lower, upper };
std::string_view name(Side s);
Side parse_side(std::string_view s);

/// Bound of family `id` on `side`, rescaled to bracket Gamma(x+1).
double side_value(bounds::FamilyId id, Side side, double x);

/// Sign changes of side_value(a) - side_value(b) on a 1000-point inset scan
/// of [lo, hi], each refined by bisection to 1e-10.
std::vector<double> find_crossover(bounds::FamilyId family_a, bounds::FamilyId family_b, Side side, double lo,
                                   double hi);

struct Crossover {
    bounds::FamilyId a;
    bounds::FamilyId b;
    double x;
};

enum class FindingVerdict { pass, fail, flagged };
std::string_view name(FindingVerdict v);

struct ComparisonFinding {
    std::string id;     // e.g. "rearranged_improves_alzer_batir"
    std::string claim;  // predicate in words
    std::vector<bounds::FamilyId> families;
    FindingVerdict verdict = FindingVerdict::fail;
    std::string detail;
};

/// Every published comparison statement between the families, evaluated on (0,1).
std::vector<ComparisonFinding> comparison_findings();

struct ComparisonReport {
    Side side = Side::lower;
    double a = 0.0;
    double b = 0.0;
    std::vector<bounds::FamilyId> families;
    std::vector<double> grid;
    /// values[i][j]: family i at grid[j]; NaN where the family is not valid.
    std::vector<std::vector<double>> values;
    std::vector<bounds::FamilyId> winner_per_point;
    std::vector<Crossover> crossovers;
    /// Findings whose families all appear in `families`.
    std::vector<ComparisonFinding> comparison_findings;
};

/// Throws std::invalid_argument on an empty family list or a < b violated.
ComparisonReport compare_families(Side side, double a, double b, int grid_n, std::vector<bounds::FamilyId> families);

bool all_pass(const std::vector<ComparisonFinding>& findings);

// ---- serialization --------------------------------------------------------

nlohmann::json to_json(const MonotonicityReport& r);
nlohmann::json to_json(const CMReport& r);
nlohmann::json to_json(const LambdaSearch& r);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const std::vector<ComparisonFinding>& findings);

std::string to_csv(const MonotonicityReport& r);
std::string to_csv(const CMReport& r);
std::string to_csv(const LambdaSearch& r);
/// Columns: x, one column per family, winner.
std::string to_csv(const ComparisonReport& r);

std::string to_markdown(const MonotonicityReport& r);
std::string to_markdown(const CMReport& r);
std::string to_markdown(const LambdaSearch& r);
std::string to_markdown(const ComparisonReport& r);
std::string to_markdown(const std::vector<ComparisonFinding>& findings);

}  // namespace gamma_envelope::analysis
