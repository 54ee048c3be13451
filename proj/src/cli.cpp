#include "gamma_envelope/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gamma_envelope/analysis.hpp"
#include "gamma_envelope/bounds.hpp"
#include "gamma_envelope/numeric.hpp"
#include "gamma_envelope/polycert.hpp"
#include "gamma_envelope/proofaudit.hpp"
#include "gamma_envelope/report.hpp"

namespace gamma_envelope::cli {
namespace {

using bounds::FamilyId;
using nlohmann::json;

struct Options {
    int grid = 0;  // 0: command default
    std::vector<double> interval;
    std::string format = "markdown";
    std::string out;
    std::vector<std::string> families;
    std::optional<double> x;
    std::string side = "both";
    std::string function;
    std::string direction = "increasing";
    std::vector<double> taus;
    std::optional<double> lambda;
    std::optional<double> alpha;
    std::optional<double> beta;
    double lambda_tol = 1e-4;
    int max_order = 6;
    double step = 0.01;
};

struct Result {
    std::string text;
    bool ok = true;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

int grid_or(const Options& o, int fallback) {
    const int n = o.grid == 0 ? fallback : o.grid;
    if (n < 100) throw UsageError("--grid must be at least 100");
    return n;
}

std::pair<double, double> interval_or(const Options& o, double a, double b) {
    if (o.interval.empty()) return {a, b};
    if (!(o.interval[0] < o.interval[1])) throw UsageError("--interval needs A < B");
    return {o.interval[0], o.interval[1]};
}

std::string fmt(double v) { return report::format_double(v); }
std::string fmt_short(double v) { return report::format_short(v); }
std::string cell(const Options& o, double v) { return o.format == "csv" ? fmt(v) : fmt_short(v); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Tabular output shared by csv and markdown.
std::string table(const Options& o, const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows) {
    if (o.format == "csv") {
        report::CsvWriter w(header);
        for (const auto& r : rows) w.add_row(r);
        return w.str();
    }
    report::MarkdownTable t(header);
    for (const auto& r : rows) t.add_row(r);
    return t.str();
}

// Concatenate single-row summary tables under one header.
std::string stack(const std::vector<std::string>& parts, std::size_t header_lines) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == 0) {
            out += parts[i];
            continue;
        }
        std::size_t pos = 0;
        for (std::size_t k = 0; k < header_lines; ++k) pos = parts[i].find('\n', pos) + 1;
        out += parts[i].substr(pos);
    }
    return out;
}

Result monotone_reports(const Options& o, const std::vector<analysis::MonotonicityReport>& reports) {
    Result r;
    for (const auto& m : reports) r.ok = r.ok && m.verdict == analysis::Verdict::consistent;
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& m : reports) arr.push_back(analysis::to_json(m));
        r.text = dump(reports.size() == 1 ? arr[0] : arr);
        return r;
    }
    std::vector<std::string> parts;
    for (const auto& m : reports) parts.push_back(o.format == "csv" ? analysis::to_csv(m) : analysis::to_markdown(m));
    r.text = stack(parts, o.format == "csv" ? 1 : 2);
    return r;
}

// ---- sub-commands ---------------------------------------------------------

Result cmd_bounds(const Options& o) {
    if (o.families.size() > 1) throw UsageError("bounds takes a single --family");
    const FamilyId id = o.families.empty() ? FamilyId::qi_guo : bounds::parse_family(o.families[0]);
    const bool custom = o.alpha || o.beta;
    if (custom && id != FamilyId::qi_guo) throw UsageError("--alpha/--beta apply to the qi_guo family only");
    auto eval = [&](double x) {
        if (custom) return bounds::theorem_bounds(x, o.alpha.value_or(bounds::kAlphaSharp), o.beta.value_or(bounds::kBetaSharp));
        return bounds::evaluate_family(id, x);
    };

    std::vector<double> xs;
    if (o.x) {
        xs.push_back(*o.x);
    } else {
        const double lo = bounds::in_domain(id, 0.25) ? 0.0 : 0.5;
        const double hi = bounds::in_domain(id, 5.0) ? 20.0 : 1.0;
        const auto [a, b] = interval_or(o, lo, hi);
        xs = numeric::inset_grid(a, b, grid_or(o, 10000));
    }

    Result r;
    std::vector<std::vector<std::string>> rows;
    json arr = json::array();
    for (double x : xs) {
        bounds::BoundPair p;
        try {
            p = eval(x);
        } catch (const DomainError&) {
            if (o.x) throw;
            continue;  // isolated excluded point, e.g. alzer_power at 1
        }
        const double ref = bounds::reference_gamma(p);
        const bool inside = bounds::contains_reference(p);
        r.ok = r.ok && inside;
        rows.push_back({cell(o, x), cell(o, p.lower), cell(o, p.upper), cell(o, ref), inside ? "yes" : "no"});
        arr.push_back({{"x", x},
                       {"lower", std::isfinite(p.lower) ? json(p.lower) : json(nullptr)},
                       {"upper", p.upper},
                       {"reference", ref},
                       {"contained", inside}});
    }
    if (o.format == "json") {
        r.text = dump({{"family", bounds::name(id)},
                       {"convention", bounds::name(bounds::info(id).convention)},
                       {"alpha", o.alpha ? json(*o.alpha) : json(nullptr)},
                       {"beta", o.beta ? json(*o.beta) : json(nullptr)},
                       {"points", arr},
                       {"all_contained", r.ok}});
    } else {
        r.text = table(o, {"x", "lower", "upper", "reference", "contained"}, rows);
    }
    return r;
}

std::vector<FamilyId> default_families(analysis::Side side, double a, double b) {
    std::vector<FamilyId> out;
    const double e = (b - a) * 1e-6;
    for (const auto& f : bounds::catalog()) {
        if (side == analysis::Side::lower && f.one_sided) continue;
        // coincides with qi_guo below 1
        if (f.id == FamilyId::qi_guo_extended && b <= 1.0) continue;
        if (bounds::in_domain(f.id, a + e) && bounds::in_domain(f.id, b - e)) out.push_back(f.id);
    }
    return out;
}

Result cmd_compare(const Options& o) {
    const auto [a, b] = interval_or(o, 0.0, 1.0);
    const int n = grid_or(o, 10000);
    std::vector<analysis::Side> sides;
    if (o.side == "both") {
        sides = {analysis::Side::lower, analysis::Side::upper};
    } else {
        sides = {analysis::parse_side(o.side)};
    }

    std::vector<analysis::ComparisonReport> reports;
    for (auto side : sides) {
        std::vector<FamilyId> fams;
        for (const auto& s : o.families) {
            const auto id = bounds::parse_family(s);
            if (!(side == analysis::Side::lower && bounds::info(id).one_sided)) fams.push_back(id);
        }
        if (o.families.empty()) fams = default_families(side, a, b);
        if (fams.empty()) throw UsageError("no family is valid for the requested side and interval");
        reports.push_back(analysis::compare_families(side, a, b, n, fams));
    }

    // Findings once, across sides.
    std::vector<analysis::ComparisonFinding> findings;
    for (auto& rep : reports) {
        for (auto& f : rep.comparison_findings) {
            const bool seen = std::any_of(findings.begin(), findings.end(), [&](const auto& g) { return g.id == f.id; });
            if (!seen) findings.push_back(f);
        }
        rep.comparison_findings.clear();
    }

    Result r;
    r.ok = analysis::all_pass(findings);
    if (o.format == "json") {
        json sides_json = json::array();
        for (const auto& rep : reports) sides_json.push_back(analysis::to_json(rep));
        r.text = dump({{"reports", sides_json}, {"comparison_findings", analysis::to_json(findings)}});
    } else if (o.format == "csv") {
        std::vector<std::string> header{"x"};
        for (const auto& rep : reports)
            for (auto id : rep.families) header.push_back(std::string(bounds::name(id)) + "_" + std::string(analysis::name(rep.side)));
        for (const auto& rep : reports) header.push_back("winner_" + std::string(analysis::name(rep.side)));
        report::CsvWriter w(header);
        const auto& grid = reports.front().grid;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            std::vector<std::string> row{fmt(grid[j])};
            for (const auto& rep : reports)
                for (std::size_t i = 0; i < rep.families.size(); ++i) row.push_back(fmt(rep.values[i][j]));
            for (const auto& rep : reports) row.emplace_back(bounds::name(rep.winner_per_point[j]));
            w.add_row(std::move(row));
        }
        r.text = w.str();
    } else {
        for (const auto& rep : reports) r.text += "## " + std::string(analysis::name(rep.side)) + " bounds\n\n" + analysis::to_markdown(rep) + "\n";
        r.text += "## Comparison findings\n\n" + (findings.empty() ? std::string("none for these families\n") : analysis::to_markdown(findings));
    }
    return r;
}

Result cmd_audit(const Options& o) {
    const auto claims = proofaudit::audit_proof(grid_or(o, 10000));
    Result r;
    r.ok = proofaudit::all_pass(claims);
    if (o.format == "json") {
        r.text = dump(proofaudit::to_json(claims));
    } else if (o.format == "markdown") {
        r.text = proofaudit::to_markdown(claims);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& c : claims)
            rows.push_back({c.name, std::string(proofaudit::name(c.kind)), fmt(c.a), fmt(c.b), c.expected, fmt(c.measured),
                            std::string(proofaudit::name(c.verdict)), c.witness ? fmt(*c.witness) : ""});
        r.text = table(o, {"claim", "kind", "a", "b", "expected", "measured", "verdict", "witness"}, rows);
    }
    return r;
}

Result cmd_lemma2(const Options& o) {
    const auto certs = polycert::lemma::certificates();
    const auto catalog = polycert::lemma::catalog();
    const auto xs = numeric::inset_grid(0.0, 1.0, grid_or(o, 10000));
    double h2_min = INFINITY;
    double h2_min_at = xs.front();
    for (double x : xs) {
        const double v = proofaudit::lemma_expr(2, x);
        if (v < h2_min) {
            h2_min = v;
            h2_min_at = x;
        }
    }
    const double h2_0 = proofaudit::lemma_expr(2, 0.0);
    const bool h2_ok = h2_min > 0.0 && std::fabs(h2_0 - 1.0) <= 1e-12;

    Result r;
    r.ok = h2_ok;
    for (const auto& c : certs) r.ok = r.ok && c.verdict == polycert::Verdict::certified;

    if (o.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < certs.size(); ++i) {
            json j = polycert::to_json(certs[i]);
            j["name"] = catalog[i].name;
            arr.push_back(j);
        }
        r.text = dump({{"certificates", arr},
                       {"h2", {{"expression", "(x-1)(x^2+2x-1) - (x+1)(x^2+1) ln((x^2+1)/(x+1))"},
                               {"grid_n", xs.size()},
                               {"min", h2_min},
                               {"min_at", h2_min_at},
                               {"value_at_0", h2_0},
                               {"verdict", h2_ok ? "pass" : "fail"}}}});
        return r;
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto& c = certs[i];
        std::string values;
        for (const auto& ev : c.endpoint_values) {
            if (!values.empty()) values += "; ";
            values += "h(" + ev.point.get_str() + ")=" + ev.value.get_str();
        }
        rows.push_back({catalog[i].name, c.polynomial.to_string(), "(" + c.a.get_str() + ", " + c.b.get_str() + ")",
                        polycert::to_string(c.claimed_sign), std::to_string(c.descartes_bound),
                        std::to_string(c.sturm_root_count), values, polycert::to_string(c.verdict)});
    }
    rows.push_back({"h2", "numeric, " + std::to_string(xs.size()) + " points", "(0, 1)", "positive", "-", "-",
                    "h(0)=" + fmt_short(h2_0) + "; min " + fmt_short(h2_min) + " at " + fmt_short(h2_min_at),
                    h2_ok ? "pass" : "fail"});
    r.text = table(o, {"name", "polynomial", "interval", "sign", "descartes_bound", "sturm_roots", "values", "verdict"}, rows);
    return r;
}

std::string with_param(const char* head, double p) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), p);
    return std::string(head) + "(" + std::string(buf, res.ptr) + ")";
}

Result cmd_monotone(const Options& o) {
    if (o.lambda && !o.taus.empty()) throw UsageError("--lambda and --tau are exclusive");
    if (o.taus.size() > 1) throw UsageError("monotone takes a single --tau");
    std::string id = o.function.empty() ? "ratio_R" : o.function;
    if (o.lambda) id = with_param("lambda_ratio", *o.lambda);
    if (!o.taus.empty()) id = with_param("tau_ratio", o.taus[0]);
    const auto [a, b] = interval_or(o, 0.0, 1.0);
    const auto dir = analysis::parse_direction(o.direction);
    return monotone_reports(o, {analysis::check_monotone(id, a, b, dir, grid_or(o, 10000))});
}

Result cmd_cm(const Options& o) {
    const std::string id = o.function.empty() ? "h_cm" : o.function;
    const auto [a, b] = interval_or(o, 0.1, 50.0);
    const auto rep = analysis::cm_probe(id, a, b, o.max_order, o.step);
    Result r;
    r.ok = rep.verdict == analysis::Verdict::consistent;
    if (o.format == "json") {
        r.text = dump(analysis::to_json(rep));
    } else {
        r.text = o.format == "csv" ? analysis::to_csv(rep) : analysis::to_markdown(rep);
    }
    return r;
}

Result cmd_ratio_global(const Options& o) {
    const auto [a, b] = interval_or(o, 0.0, 50.0);
    return monotone_reports(o, {analysis::check_monotone("ratio_R", a, b, analysis::Direction::increasing, grid_or(o, 10000))});
}

Result cmd_tau(const Options& o) {
    const auto [a, b] = interval_or(o, 1e-3, 50.0);
    const std::vector<double> taus = o.taus.empty() ? std::vector<double>{0.5, 1.0, 2.0, 6.0} : o.taus;
    std::vector<analysis::MonotonicityReport> reports;
    for (double t : taus)
        reports.push_back(analysis::check_monotone(with_param("tau_ratio", t), a, b, analysis::Direction::increasing,
                                                   grid_or(o, 10000)));
    return monotone_reports(o, reports);
}

Result cmd_lambda(const Options& o) {
    const auto s = analysis::search_lambda_thresholds(grid_or(o, 10000), o.lambda_tol);
    Result r;
    r.ok = std::isfinite(s.lambda_inc_max) && std::isfinite(s.lambda_dec_min) && s.lambda_inc_max > 1.0 &&
           s.lambda_inc_max <= s.lambda_dec_min && s.lambda_dec_min < 6.0;
    if (o.format == "json") {
        r.text = dump(analysis::to_json(s));
    } else {
        r.text = o.format == "csv" ? analysis::to_csv(s) : analysis::to_markdown(s);
    }
    return r;
}

Result cmd_polygamma(const Options& o) {
    const auto [a, b] = interval_or(o, 0.01, 100.0);
    if (!(a > 0.0)) throw UsageError("--interval must lie in (0, inf)");
    const auto xs = numeric::log_grid(a, b, grid_or(o, 2000));
    Result r;
    std::vector<std::vector<std::string>> rows;
    json arr = json::array();
    for (int k = 1; k <= 3; ++k) {
        int violations = 0;
        double lower_gap = INFINITY, upper_gap = INFINITY;
        for (double x : xs) {
            const double v = (k % 2 == 1 ? 1.0 : -1.0) * refcore::polygamma(k, x);
            const auto br = bounds::polygamma_bounds(k, x);
            if (!(br.lower < v && v < br.upper)) ++violations;
            lower_gap = std::min(lower_gap, (v - br.lower) / v);
            upper_gap = std::min(upper_gap, (br.upper - v) / v);
        }
        r.ok = r.ok && violations == 0;
        rows.push_back({std::to_string(k), std::to_string(xs.size()), std::to_string(violations), cell(o, lower_gap),
                        cell(o, upper_gap), violations == 0 ? "pass" : "fail"});
        arr.push_back({{"k", k},
                       {"points", xs.size()},
                       {"violations", violations},
                       {"min_relative_gap_lower", lower_gap},
                       {"min_relative_gap_upper", upper_gap}});
    }
    if (o.format == "json") {
        r.text = dump({{"interval", {a, b}}, {"orders", arr}});
    } else {
        r.text = table(o, {"k", "points", "violations", "min_gap_lower", "min_gap_upper", "verdict"}, rows);
    }
    return r;
}

void add_common(CLI::App* app, Options& o) {
    app->add_option("--grid", o.grid, "Grid size N (>= 100)");
    app->add_option("--interval", o.interval, "Interval A B")->expected(2);
    app->add_option("--format", o.format, "csv, json or markdown")->check(CLI::IsMember({"csv", "json", "markdown"}));
    app->add_option("--out", o.out, "Write the report to PATH");
}

bool write_report(const Options& o, const std::string& text, std::ostream& out, std::ostream& err) {
    if (o.out.empty()) {
        out << text;
        return static_cast<bool>(out);
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open " << o.out << " for writing\n";
        return false;
    }
    f << text;
    f.close();
    if (!f) {
        err << "error: failed writing " << o.out << "\n";
        return false;
    }
    return true;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Elementary bounds for the gamma function: evaluation, proof audit and comparisons", "gamma-envelope"};
    app.require_subcommand(1);

    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a bound family and check it contains Gamma");
    add_common(bounds_cmd, o);
    bounds_cmd->add_option("--family", o.families, "Family id")->expected(1);
    bounds_cmd->add_option("--x", o.x, "Single point");
    bounds_cmd->add_option("--alpha", o.alpha, "Lower exponent override (qi_guo)");
    bounds_cmd->add_option("--beta", o.beta, "Upper exponent override (qi_guo)");

    auto* compare_cmd = app.add_subcommand("compare", "Compare bound families, crossovers and published comparison statements");
    add_common(compare_cmd, o);
    compare_cmd->add_option("--family", o.families, "Family ids (repeatable)");
    compare_cmd->add_option("--side", o.side, "lower, upper or both")->check(CLI::IsMember({"lower", "upper", "both"}));

    auto* audit_cmd = app.add_subcommand("audit", "Audit every claim of the monotonicity proof");
    add_common(audit_cmd, o);

    auto* lemma_cmd = app.add_subcommand("lemma2", "Exact sign certificates for the auxiliary polynomials");
    add_common(lemma_cmd, o);

    auto* mono_cmd = app.add_subcommand("monotone", "Grid check of strict monotonicity");
    add_common(mono_cmd, o);
    mono_cmd->add_option("--function", o.function, "Function id");
    mono_cmd->add_option("--direction", o.direction, "increasing or decreasing")
        ->check(CLI::IsMember({"increasing", "decreasing"}));
    mono_cmd->add_option("--lambda", o.lambda, "Use lambda_ratio(L)");
    mono_cmd->add_option("--tau", o.taus, "Use tau_ratio(T)")->expected(1);

    auto* conj_cmd = app.add_subcommand("conjecture", "Falsification probes for the open conjectures");
    conj_cmd->require_subcommand(1);
    auto* cm_cmd = conj_cmd->add_subcommand("cm", "Complete monotonicity probe by forward differences");
    add_common(cm_cmd, o);
    cm_cmd->add_option("--function", o.function, "Function id");
    cm_cmd->add_option("--max-order", o.max_order, "Highest difference order (<= 8)");
    cm_cmd->add_option("--step", o.step, "Difference step H");
    auto* rg_cmd = conj_cmd->add_subcommand("ratio-global", "Monotonicity of the ratio beyond (0,1)");
    add_common(rg_cmd, o);
    auto* tau_cmd = conj_cmd->add_subcommand("tau", "Monotonicity of the tau ratio");
    add_common(tau_cmd, o);
    tau_cmd->add_option("--tau", o.taus, "Values of tau (repeatable)");

    auto* lambda_cmd = app.add_subcommand("openproblem-lambda", "Estimate the lambda thresholds");
    add_common(lambda_cmd, o);
    lambda_cmd->add_option("--lambda-tol", o.lambda_tol, "Bracket width T");

    auto* pg_cmd = app.add_subcommand("polygamma-check", "Polygamma sandwich on a log-spaced grid");
    add_common(pg_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Result result;
    try {
        if (*bounds_cmd) result = cmd_bounds(o);
        else if (*compare_cmd) result = cmd_compare(o);
        else if (*audit_cmd) result = cmd_audit(o);
        else if (*lemma_cmd) result = cmd_lemma2(o);
        else if (*mono_cmd) result = cmd_monotone(o);
        else if (*cm_cmd) result = cmd_cm(o);
        else if (*rg_cmd) result = cmd_ratio_global(o);
        else if (*tau_cmd) result = cmd_tau(o);
        else if (*lambda_cmd) result = cmd_lambda(o);
        else if (*pg_cmd) result = cmd_polygamma(o);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (!write_report(o, result.text, out, err)) return 2;
    return result.ok ? 0 : 1;
}

}  // namespace gamma_envelope::cli
