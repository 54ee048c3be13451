#include "doctest.h"

#include <cmath>
#include <random>

#include "gamma_envelope/numeric.hpp"
#include "gamma_envelope/polycert.hpp"
#include "gamma_envelope/proofaudit.hpp"
#include "gamma_envelope/refcore.hpp"

using namespace gamma_envelope;
using namespace gamma_envelope::proofaudit;

namespace {

constexpr double kGamma = refcore::kEulerGamma;
constexpr double kLimitAtOne = 2.0 * (1.0 - kGamma);

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

double central(ProofFunction f, double x, double h) {
    return (proof_function(f, x + h) - proof_function(f, x - h)) / (2.0 * h);
}

struct Anchor {
    double x, q, q1, q1_prime, fg, ratio;
};

// mpmath at 40 digits, direct formulas.
const Anchor kAnchors[] = {
    {0.25, -0.055728230755951444, -2.5848030413112043, -34.566243869839422, 0.65643698776814637, 0.6046793239747412},
    {0.5, -0.025557028165523654, -13.330993010537723, -51.147506450115532, 0.88657946527903897, 0.66246822240413258},
    {0.75, -0.0044762565630762334, -27.906940110733515, -64.68241981259711, 1.3921442514559842, 0.74474631724391819},
};

}  // namespace

TEST_CASE("proof functions against mpmath") {
    for (const auto& a : kAnchors) {
        CAPTURE(a.x);
        CHECK(rel(proof_function(ProofFunction::q, a.x), a.q) < 1e-11);
        CHECK(rel(proof_function(ProofFunction::q1, a.x), a.q1) < 1e-12);
        CHECK(rel(proof_function(ProofFunction::q1_prime, a.x), a.q1_prime) < 1e-12);
        CHECK(rel(proof_function(ProofFunction::f_over_g_prime, a.x), a.fg) < 1e-11);
        CHECK(rel(ratio_R(a.x), a.ratio) < 1e-13);
    }
}

TEST_CASE("endpoint anchors as printed") {
    const double q1_0 = proof_function(ProofFunction::q1, 0.0);
    const double q1_1 = proof_function(ProofFunction::q1, 1.0);
    const double q0 = proof_function(ProofFunction::q, 0.0);
    // -2 psi'(1) - 3 psi''(1) and 80(1 - pi^2/6) - 16 psi''(2)
    CHECK(q1_0 == doctest::Approx(-2.0 * refcore::kPiSqOver6 + 6.0 * 1.2020569031595942).epsilon(1e-14));
    CHECK(q1_1 == doctest::Approx(80.0 * (1.0 - refcore::kPiSqOver6) - 16.0 * refcore::polygamma(2, 2.0)).epsilon(1e-13));
    CHECK(q0 == doctest::Approx((refcore::kPiSqOver6 - 3.0 * kGamma) / 3.0).epsilon(1e-13));
    CHECK(std::fabs(proof_function(ProofFunction::q, 1.0)) <= 1e-15);
    CHECK(matches_printed(q1_0, 3.922, 3));
    CHECK(matches_printed(q1_1, -45.128, 3));
    CHECK(matches_printed(q0, -0.028, 3));
    CHECK(std::round(q1_0 * 1e4) / 1e4 == 3.9225);
    CHECK(std::round(q1_1 * 1e4) / 1e4 == -45.1289);
    CHECK(std::round(q0 * 1e5) / 1e5 == -0.0289);
}

TEST_CASE("matches_printed truncates toward zero") {
    CHECK(matches_printed(3.9229, 3.922, 3));
    CHECK_FALSE(matches_printed(3.9219, 3.922, 3));
    CHECK(matches_printed(-45.1289, -45.128, 3));
    CHECK_FALSE(matches_printed(-45.1279, -45.128, 3));
}

TEST_CASE("lemma expressions") {
    CHECK(lemma_expr(2, 0.0) == 1.0);
    CHECK(lemma_expr(2, 1.0) == 0.0);
    CHECK(lemma_expr(1, 1.0) == -4.0);
    CHECK(lemma_expr(2, 0.5) == doctest::Approx(-0.125 - 1.875 * std::log(5.0 / 6.0)).epsilon(1e-15));
    CHECK_THROWS_AS(lemma_expr(0, 0.5), DomainError);
    CHECK_THROWS_AS(lemma_expr(6, 0.5), DomainError);
    CHECK_THROWS_AS(lemma_expr(1, -0.1), DomainError);
    CHECK_THROWS_AS(lemma_expr(1, 1.5), DomainError);
}

TEST_CASE("polynomial expressions agree with polycert evaluation") {
    const auto entries = polycert::lemma::catalog();
    const int index[] = {1, 3, 4, 5};
    REQUIRE(entries.size() == 4);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        for (double x : numeric::closed_grid(0.0, 1.0, 1001)) {
            const double v = lemma_expr(index[k], x);
            const double d = entries[k].polynomial.evaluate(x);
            CHECK(std::fabs(v - d) <= std::fabs(std::nextafter(d, 2 * d) - d));
            // exact rational value, rounding error of Horner bounded by a few ulps
            const double exact = entries[k].polynomial.evaluate(polycert::Rational(x)).get_d();
            CHECK(std::fabs(v - exact) <= 8.0 * std::fabs(std::nextafter(exact, 2 * exact) - exact));
        }
    }
}

TEST_CASE("h2 ratio derivative identity") {
    // d/dx [h2 / ((x+1)(x^2+1))] = -(x-1) h1 / ((x+1)^2 (x^2+1)^2); the ratio falls from 1 to 0
    auto ratio = [](double x) { return lemma_expr(2, x) / ((x + 1.0) * (x * x + 1.0)); };
    const double h = 1e-6;
    for (double x : numeric::closed_grid(0.001, 0.999, 500)) {
        CAPTURE(x);
        const double fd = (ratio(x + h) - ratio(x - h)) / (2.0 * h);
        const double c = (x + 1.0) * (x * x + 1.0);
        const double identity = -(x - 1.0) * lemma_expr(1, x) / (c * c);
        CHECK(rel(fd, identity) < 1e-4);
        CHECK(fd < 0.0);
    }
}

TEST_CASE("finite-difference identities of the proof functions") {
    const double h = 1e-5;
    for (double x : numeric::closed_grid(0.02, 0.98, 97)) {
        CAPTURE(x);
        CHECK(rel(central(ProofFunction::q1, x, h), proof_function(ProofFunction::q1_prime, x)) < 1e-6);
        const double h1 = lemma_expr(1, x);
        const double q_prime = -lemma_expr(2, x) * proof_function(ProofFunction::q1, x) / (h1 * h1);
        CHECK(std::fabs(central(ProofFunction::q, x, h) - q_prime) < 1e-7);
    }
}

TEST_CASE("ratio_R limits, band and sandwich") {
    CHECK(ratio_R(1e-9) == kGamma);
    CHECK(ratio_R(1.0) == doctest::Approx(kLimitAtOne).epsilon(1e-12));
    CHECK(std::fabs(ratio_R(1.0 - 1e-8) - kLimitAtOne) < 1e-6);
    CHECK(std::fabs(ratio_R(1e-6) - kGamma) < 1e-5);
    // the band joins the direct formula without a visible step
    CHECK(std::fabs(ratio_R(1.0 - 0.99e-6) - ratio_R(1.0 - 1.01e-6)) < 1e-7);
    for (double x : numeric::inset_grid(0.0, 1.0, 10000)) {
        const double r = ratio_R(x);
        CHECK(r > kGamma);
        CHECK(r < kLimitAtOne);
    }
    CHECK_THROWS_AS(ratio_R(0.0), DomainError);
    CHECK_THROWS_AS(ratio_R(1.0 + 1e-12), DomainError);
    CHECK_THROWS_AS(ratio_R(NAN), DomainError);
}

TEST_CASE("f'/g' and ratio increase on a fine grid") {
    auto xs = numeric::inset_grid(0.0, 1.0, 10000);
    double prev = proof_function(ProofFunction::f_over_g_prime, xs[0]);
    int bad = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double v = proof_function(ProofFunction::f_over_g_prime, xs[i]);
        if (!(v > prev)) ++bad;
        prev = v;
    }
    CHECK(bad == 0);
    // endpoints of f'/g' match the ratio limits
    CHECK(proof_function(ProofFunction::f_over_g_prime, 1e-6) == doctest::Approx(kGamma).epsilon(1e-4));
    CHECK(proof_function(ProofFunction::f_over_g_prime, 1.0 - 1e-6) > 2.5);
}

TEST_CASE("proof function domains and names") {
    CHECK_THROWS_AS(proof_function(ProofFunction::f_over_g_prime, 0.0), DomainError);
    CHECK_THROWS_AS(proof_function(ProofFunction::f_over_g_prime, 1.0), DomainError);
    CHECK_THROWS_AS(proof_function(ProofFunction::q, 1.01), DomainError);
    CHECK_NOTHROW(proof_function(ProofFunction::q1, 0.0));
    for (auto f : {ProofFunction::f_over_g_prime, ProofFunction::q, ProofFunction::q1, ProofFunction::q1_prime}) {
        CHECK(parse_proof_function(name(f)) == f);
    }
    CHECK_THROWS_AS(parse_proof_function("q2"), std::invalid_argument);
}

TEST_CASE("audit_proof") {
    CHECK_THROWS_AS(audit_proof(99), std::invalid_argument);
    const auto claims = audit_proof(10000);
    CHECK(all_pass(claims));
    auto find = [&](const char* n) -> const ProofClaim& {
        for (const auto& c : claims)
            if (c.name == n) return c;
        FAIL("missing claim " << n);
        return claims.front();
    };
    CHECK(find("q1_strictly_decreasing").measured == 0.0);
    const auto& zero = find("q1_unique_zero");
    REQUIRE(zero.witness);
    CHECK(*zero.witness > 0.0);
    CHECK(*zero.witness < 1.0);
    CHECK(std::fabs(proof_function(ProofFunction::q1, *zero.witness)) < 1e-9);
    CHECK(find("q_negative_interior").measured < 0.0);
    // the minimum of q sits at the zero of q1
    CHECK(std::fabs(*find("q_unique_minimum").witness - *zero.witness) < 2e-4);
    for (const auto& c : claims) {
        if (c.verdict == ClaimVerdict::fail) CHECK(c.witness.has_value());
    }

    const auto j = to_json(claims);
    REQUIRE(j.size() == claims.size());
    CHECK(j[0]["verdict"] == "pass");
    CHECK(j[0]["interval"].size() == 2);
    const auto md = to_markdown(claims);
    CHECK(md.rfind("| claim | expected | measured | verdict | witness |", 0) == 0);
    CHECK(std::count(md.begin(), md.end(), '\n') == static_cast<long>(claims.size()) + 2);
}

TEST_CASE("audit is stable under grid refinement") {
    CHECK(all_pass(audit_proof(100)));
    CHECK(all_pass(audit_proof(20000)));
}
