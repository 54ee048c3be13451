#include "doctest.h"

#include <cmath>
#include <random>

#include "gamma_envelope/refcore.hpp"

using namespace gamma_envelope;
using namespace gamma_envelope::refcore;

namespace {

struct Reference {
    double x, ln_gamma, psi, psi1, psi2, psi3;
};

// 40-digit mpmath evaluations (loggamma, psi(n, x)) at the exact double
// nearest each listed argument, rounded to 20 digits.
const Reference kReference[] = {
    {0.001, 6.9071788853838536617, -1000.5755719318102797, 1000001.6425331958273, -2000000002.3976321648, 6000000000006.4686145},
    {0.01, 4.5994798780420217016, -100.56088545786867242, 10001.621213528312804, -2000002.3403986769596, 600000006.25106182292},
    {0.1, 2.252712651734205902, -10.423754940411076232, 101.4332991507927477, -2001.8614573783436732, 60004.512876790253384},
    {0.3, 1.0957979948180755606, -3.5025242222001331249, 12.245364546107731301, -75.272536588726038917, 743.14176465504977709},
    {0.5, 0.57236494292470008707, -1.9635100260214234794, 4.9348022005446793094, -16.828796644234319996, 97.409091034002437236},
    {0.999, 0.00057803853289138023817, -0.57886180210864542792, 1.6473414317770505536, -2.4106202092316710716, 6.5188868301870958272},
    {0.9999999, 5.7721574684441928263e-8, -0.57721582939495147942, 1.6449343072596394116, -2.404114455713252887, 6.4939418908940505892},
    {1.0000001, -5.772155829918507097e-8, -0.57721550040813810031, 1.6449338264368781339, -2.4041131569253723963, 6.4939369136408257577},
    {1.5, -0.12078223763524522235, 0.036489973978576520559, 0.93480220054467930942, -0.8287966442343199956, 1.4090910340024372364},
    {1.9999999, -4.2278430309861298194e-8, 0.42278427060505839635, 0.64493410725960956168, -0.40411385571313325765, 0.49393949089345195077},
    {2.0000001, 4.2278436665324979232e-8, 0.4227843995918716981, 0.64493402643684834039, -0.40411375692525285628, 0.49393931364022735589},
    {2.5, 0.28468287047291915963, 0.70315664064524318723, 0.49035775610023486497, -0.236204051641727403, 0.22390584881725205126},
    {3.7, 1.4280723266653881292, 1.1671535393615114409, 0.31003785767003830216, -0.095395308728554033483, 0.058279217956563614119},
    {9.5, 11.689333420797268483, 2.1977378764029495332, 0.11099728846909903237, -0.012307845807709337531, 0.0027267288350372494836},
    {10.5, 13.940625219403763633, 2.3030010342976863753, 0.099916956059126733204, -0.0099751442477151692853, 0.0019900862371443542479},
    {123.25, 468.61448295051664423, 4.8101525319648188803, 0.0081465944560802649872, -0.000066366634199026555555, 1.0813121485166036476e-6},
    {1e4, 82099.717496442377273, 9.2102903711428494036, 0.00010000500016666666633, -1.0001000049999999833e-8, 2.0003000199999999e-12},
    {1e6, 12815504.56914761166, 13.815510057964190771, 1.0000005000001666667e-6, -1.0000010000005e-12, 2.000003000002e-18},
};

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("ln_gamma closed forms") {
    CHECK(ln_gamma(1.0) == 0.0);
    CHECK(ln_gamma(2.0) == 0.0);
    CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
    // Gamma(3.5) = 2.5 * 1.5 * Gamma(1.5), Gamma(1.5) = sqrt(pi)/2
    const double gamma_3_5 = 2.5 * 1.5 * std::sqrt(kPi) / 2.0;
    CHECK(std::exp(ln_gamma(3.5)) == doctest::Approx(3.3233509704478426).epsilon(1e-14));
    CHECK(ln_gamma(3.5) == doctest::Approx(std::log(gamma_3_5)).epsilon(1e-13));
}

TEST_CASE("refcore against high-precision references") {
    for (const auto& r : kReference) {
        CAPTURE(doctest::toString(r.x));
        CHECK(rel_err(ln_gamma(r.x), r.ln_gamma) <= 1e-12);
        CHECK(std::fabs(digamma(r.x) - r.psi) <= 1e-12 * std::max(1.0, std::fabs(r.psi)));
        CHECK(rel_err(polygamma(1, r.x), r.psi1) <= 1e-10);
        CHECK(rel_err(polygamma(2, r.x), r.psi2) <= 1e-10);
        CHECK(rel_err(polygamma(3, r.x), r.psi3) <= 1e-10);
    }
}

TEST_CASE("digamma and polygamma anchors") {
    const double g = kEulerGamma;
    CHECK(digamma(1.0) == doctest::Approx(-g).epsilon(1e-15));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - g).epsilon(1e-15));
    CHECK(digamma(0.5) == doctest::Approx(-g - 2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(polygamma(1, 1.0) == doctest::Approx(kPiSqOver6).epsilon(1e-14));
    CHECK(polygamma(1, 2.0) == doctest::Approx(kPiSqOver6 - 1.0).epsilon(1e-13));
    CHECK(polygamma(2, 2.0) == doctest::Approx(polygamma(2, 1.0) + 2.0).epsilon(1e-13));
    // -psi''(1) = 2 zeta(3), zeta(3) by direct summation with an integral tail
    double zeta3 = 0.0;
    for (int n = 100000; n >= 1; --n) zeta3 += 1.0 / (double(n) * n * n);
    zeta3 += 1.0 / (2.0 * 100000.5 * 100000.5);
    CHECK(-polygamma(2, 1.0) == doctest::Approx(2.0 * zeta3).epsilon(1e-12));
}

TEST_CASE("constants") {
    const auto& c = constants();
    CHECK(c.euler_gamma > 0.577215664);
    CHECK(c.euler_gamma < 0.577215665);
    CHECK(c.alpha_sharp == 2.0 * (1.0 - c.euler_gamma));
    CHECK(c.beta_sharp == c.euler_gamma);
    CHECK(c.beta_sharp == doctest::Approx(0.5772157).epsilon(1e-7));
    CHECK(c.alpha_sharp == doctest::Approx(0.8455687).epsilon(1e-7));
    // printed digits are truncated
    CHECK(std::floor(c.alzer_alpha * 1e5) == 42278.0);
    CHECK(std::floor(c.alzer_beta * 1e5) == 53385.0);
    CHECK(std::fabs(c.euler_gamma + digamma(1.0)) <= 1e-12);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(-1.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(std::nan("")), DomainError);
    CHECK_THROWS_AS(ln_gamma(INFINITY), DomainError);
    CHECK_THROWS_AS(digamma(0.0), DomainError);
    CHECK_THROWS_AS(polygamma(4, 1.0), DomainError);
    CHECK_THROWS_AS(polygamma(0, 1.0), DomainError);
    CHECK_THROWS_AS(polygamma(1, -2.0), DomainError);
}

TEST_CASE("recurrence and derivative properties on random samples") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> dist(0.5, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng);
        CAPTURE(x);
        const double lhs = ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x);
        CHECK(std::fabs(lhs) <= 1e-11 * (1.0 + std::fabs(ln_gamma(x + 1.0))));
        CHECK(std::fabs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-11);
        const double h = 1e-5;
        const double fd = (digamma(x + h) - digamma(x - h)) / (2.0 * h);
        CHECK(std::fabs(fd - polygamma(1, x)) <= 1e-6);
    }
}

TEST_CASE("polygamma sandwich on a log-spaced grid") {
    const int n = 2000;
    for (int k = 1; k <= 3; ++k) {
        const double fk1 = (k == 3) ? 2.0 : 1.0;  // (k-1)!
        const double fk = fk1 * k;                // k!
        for (int i = 0; i < n; ++i) {
            const double x = std::pow(10.0, -2.0 + 4.0 * i / (n - 1));
            const double v = (k % 2 == 1 ? 1.0 : -1.0) * polygamma(k, x);
            const double lo = fk1 / std::pow(x, k) + fk / (2.0 * std::pow(x, k + 1));
            const double hi = fk1 / std::pow(x, k) + fk / std::pow(x, k + 1);
            CAPTURE(k);
            CAPTURE(x);
            CHECK(lo < v);
            CHECK(v < hi);
        }
    }
}
