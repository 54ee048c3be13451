#include "gamma_envelope/refcore.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace gamma_envelope::refcore {
namespace {

// B_2, B_4, ..., B_24
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};

// zeta(k) - 1 for k = 2..40
constexpr std::array<double, 39> kZetaMinusOne = {
    6.4493406684822643647e-1,  2.020569031595942854e-1,
    8.2323233711138191516e-2,  3.6927755143369926331e-2,
    1.7343061984449139715e-2,  8.3492773819228268398e-3,
    4.0773561979443393787e-3,  2.0083928260822144179e-3,
    9.9457512781808533715e-4,  4.941886041194645587e-4,
    2.4608655330804829864e-4,  1.2271334757848914675e-4,
    6.1248135058704829259e-5,  3.0588236307020493552e-5,
    1.5282259408651871733e-5,  7.6371976378997622736e-6,
    3.8172932649998398565e-6,  1.9082127165539389257e-6,
    9.5396203387279611315e-7,  4.7693298678780646312e-7,
    2.3845050272773299e-7,     1.1921992596531107307e-7,
    5.9608189051259479612e-8,  2.9803503514652280186e-8,
    1.4901554828365041235e-8,  7.450711789835429492e-9,
    3.7253340247884570548e-9,  1.8626597235130490064e-9,
    9.3132743241966818287e-10, 4.656629065033784073e-10,
    2.328311833676505492e-10,  1.1641550172700519776e-10,
    5.8207720879027008892e-11, 2.9103850444970996869e-11,
    1.4551921891041984236e-11, 7.2759598350574810145e-12,
    3.6379795473786511902e-12, 1.8189896503070659476e-12,
    9.0949478402638892825e-13,
};

constexpr double kShiftTarget = 10.0;
constexpr double kHalfLn2Pi = 0.91893853320467274178;

void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream os;
        os << fn << ": argument must be finite and > 0, got " << x;
        throw DomainError(os.str());
    }
}

// ln Gamma(2 + t), |t| <= 0.5
double ln_gamma_about_two(double t) {
    const double u = -t;
    double tail = 0.0;
    for (std::size_t i = kZetaMinusOne.size(); i-- > 0;) {
        const double k = static_cast<double>(i + 2);
        tail = kZetaMinusOne[i] / k + u * tail;
    }
    return (1.0 - kEulerGamma) * t + u * u * tail;
}

double stirling_ln_gamma(double y) {
    const double inv = 1.0 / y;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (std::size_t j = 0; j < 10; ++j) {
        const double n = 2.0 * static_cast<double>(j + 1);
        series += kBernoulli[j] / (n * (n - 1.0)) * p;
        p *= inv2;
    }
    return (y - 0.5) * std::log(y) - y + kHalfLn2Pi + series;
}

double stirling_digamma(double y) {
    const double inv2 = 1.0 / (y * y);
    double series = 0.0;
    double p = inv2;
    for (std::size_t j = 0; j < 10; ++j) {
        const double n = 2.0 * static_cast<double>(j + 1);
        series += kBernoulli[j] / n * p;
        p *= inv2;
    }
    return std::log(y) - 0.5 / y - series;
}

// (-1)^(k+1) psi^(k)(y), positive for all y > 0
double stirling_polygamma_abs(int k, double y) {
    double factorial_km1 = 1.0;
    for (int i = 2; i < k; ++i) factorial_km1 *= i;
    const double factorial_k = factorial_km1 * k;
    double result = factorial_km1 / std::pow(y, k) + factorial_k / (2.0 * std::pow(y, k + 1));
    const double inv2 = 1.0 / (y * y);
    double p = inv2 / std::pow(y, k);  // y^-(2j+k) for j = 1
    for (std::size_t j = 0; j < 10; ++j) {
        const int two_j = 2 * static_cast<int>(j + 1);
        // (2j + k - 1)! / (2j)!
        double ratio = 1.0;
        for (int m = two_j + 1; m <= two_j + k - 1; ++m) ratio *= m;
        result += kBernoulli[j] * ratio * p;
        p *= inv2;
    }
    return result;
}

}  // namespace

const Constants& constants() {
    static const Constants c = [] {
        const double check = -digamma(1.0);
        if (std::fabs(check - kEulerGamma) > 1e-12) {
            std::fprintf(stderr, "gamma_envelope: Euler constant self-check failed (%.17g vs %.17g)\n",
                         check, kEulerGamma);
            std::abort();
        }
        Constants k{};
        k.euler_gamma = kEulerGamma;
        k.pi_sq_over_6 = kPiSqOver6;
        k.alpha_sharp = 2.0 * (1.0 - kEulerGamma);
        k.beta_sharp = kEulerGamma;
        k.alzer_alpha = 1.0 - kEulerGamma;
        k.alzer_beta = 0.5 * (kPiSqOver6 - kEulerGamma);
        return k;
    }();
    return c;
}

double ln_gamma(double x) {
    require_positive(x, "ln_gamma");
    if (x > 2.5) {
        if (x >= kShiftTarget) return stirling_ln_gamma(x);
        double y = x;
        double product = 1.0;
        while (y < kShiftTarget) {
            product *= y;
            y += 1.0;
        }
        return stirling_ln_gamma(y) - std::log(product);
    }
    // Subtractions below are exact, and ln Gamma(1 + t) = ln Gamma(2 + t) - log1p(t)
    // keeps the relative error small near the zero at x = 1.
    if (x >= 1.5) return ln_gamma_about_two(x - 2.0);
    if (x >= 0.5) {
        const double t = x - 1.0;
        return ln_gamma_about_two(t) - std::log1p(t);
    }
    return ln_gamma_about_two(x) - std::log1p(x) - std::log(x);
}

double digamma(double x) {
    require_positive(x, "digamma");
    double acc = 0.0;
    double y = x;
    while (y < kShiftTarget) {
        acc -= 1.0 / y;
        y += 1.0;
    }
    return stirling_digamma(y) + acc;
}

double polygamma(int k, double x) {
    if (k < 1 || k > 3) {
        throw DomainError("polygamma: order must be 1, 2 or 3, got " + std::to_string(k));
    }
    require_positive(x, "polygamma");
    double factorial_k = 1.0;
    for (int i = 2; i <= k; ++i) factorial_k *= i;
    // (-1)^(k+1) psi^(k)(x) = (-1)^(k+1) psi^(k)(x+1) + k!/x^(k+1)
    double acc = 0.0;
    double y = x;
    while (y < kShiftTarget) {
        acc += factorial_k / std::pow(y, k + 1);
        y += 1.0;
    }
    const double magnitude = stirling_polygamma_abs(k, y) + acc;
    return (k % 2 == 1) ? magnitude : -magnitude;
}

}  // namespace gamma_envelope::refcore
