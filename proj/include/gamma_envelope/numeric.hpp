#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gamma_envelope::numeric {

/// n equally spaced points covering [a, b], endpoints included.
inline std::vector<double> closed_grid(double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("closed_grid: need at least two points");
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * (static_cast<double>(i) / (n - 1));
    xs.back() = b;
    return xs;
}

/// n equally spaced points on [a + e, b - e] with e = (b - a) * 1e-6, the
/// inset used for every open-interval check.
inline std::vector<double> inset_grid(double a, double b, int n) {
    const double e = (b - a) * 1e-6;
    return closed_grid(a + e, b - e, n);
}

/// n logarithmically spaced points covering [a, b], a > 0.
inline std::vector<double> log_grid(double a, double b, int n) {
    if (!(a > 0.0)) throw std::invalid_argument("log_grid: a must be positive");
    std::vector<double> xs = closed_grid(std::log(a), std::log(b), n);
    for (auto& x : xs) x = std::exp(x);
    xs.front() = a;
    xs.back() = b;
    return xs;
}

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Bisection on a bracket with f(lo) and f(hi) of opposite strict signs.
/// Returns the midpoint once the bracket is narrower than `tol`, or nullopt
/// if the bracket is invalid or the iteration cap is hit.
inline std::optional<double> bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
                                    int max_iter = 200) {
    int s_lo = sign_of(f(lo));
    const int s_hi = sign_of(f(hi));
    if (s_lo == 0) return lo;
    if (s_hi == 0) return hi;
    if (s_lo == s_hi) return std::nullopt;
    for (int it = 0; it < max_iter; ++it) {
        if (hi - lo <= tol) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;  // bracket at double resolution
        const int s = sign_of(f(mid));
        if (s == 0) return mid;
        if (s == s_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::nullopt;
}

}  // namespace gamma_envelope::numeric
