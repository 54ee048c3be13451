#include "gamma_envelope/polycert.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gamma_envelope::polycert {
namespace {

// Rational-coefficient polynomial used for Sturm chains, ascending, trimmed.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    if (p.empty()) p.push_back(0);
}

bool is_zero(const QPoly& p) { return p.size() == 1 && p[0] == 0; }

QPoly to_qpoly(const Polynomial& p) {
    QPoly q;
    q.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) q.emplace_back(c);
    return q;
}

QPoly derivative(const QPoly& p) {
    if (p.size() <= 1) return {Rational(0)};
    QPoly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    trim(d);
    return d;
}

Rational evaluate(const QPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Polynomial long division over Q: num = quot * den + rem.
void divide(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem) {
    if (is_zero(den)) throw std::invalid_argument("polynomial division by zero");
    rem = num;
    const std::size_t dd = den.size() - 1;
    if (num.size() - 1 < dd) {
        quot = {Rational(0)};
        return;
    }
    quot.assign(num.size() - dd, Rational(0));
    const Rational& lead = den.back();
    for (std::size_t k = rem.size(); k-- > dd;) {
        if (rem[k] == 0) continue;
        const Rational factor = rem[k] / lead;
        quot[k - dd] = factor;
        for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= factor * den[j];
    }
    rem.resize(dd == 0 ? 1 : dd);
    trim(rem);
    trim(quot);
}

QPoly gcd(QPoly a, QPoly b) {
    while (!is_zero(b)) {
        QPoly q, r;
        divide(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
    return a;
}

QPoly square_free_part(const QPoly& p) {
    const QPoly g = gcd(p, derivative(p));
    QPoly q, r;
    divide(p, g, q, r);
    return q;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain{p, derivative(p)};
    while (!is_zero(chain.back())) {
        QPoly q, r;
        divide(chain[chain.size() - 2], chain.back(), q, r);
        if (is_zero(r)) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    if (is_zero(chain.back())) chain.pop_back();
    return chain;
}

int variations(const std::vector<QPoly>& chain, const Rational& x) {
    int changes = 0;
    int previous = 0;
    for (const auto& p : chain) {
        const int s = sgn(evaluate(p, x));
        if (s == 0) continue;
        if (previous != 0 && s != previous) ++changes;
        previous = s;
    }
    return changes;
}

const Rational& shrink_step() {
    static const Rational step(1, 1000000);
    return step;
}

bool matches(int s, Sign claimed) { return claimed == Sign::negative ? s < 0 : s > 0; }

}  // namespace

Polynomial::Polynomial() : coefficients_{Integer(0)} {}

Polynomial::Polynomial(std::vector<Integer> ascending) : coefficients_(std::move(ascending)) {
    while (coefficients_.size() > 1 && coefficients_.back() == 0) coefficients_.pop_back();
    if (coefficients_.empty()) coefficients_.emplace_back(0);
}

Polynomial::Polynomial(std::initializer_list<long> ascending)
    : Polynomial(std::vector<Integer>(ascending.begin(), ascending.end())) {}

Rational Polynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::evaluate(double x) const {
    double acc = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coefficients_.size() <= 1) return Polynomial();
    std::vector<Integer> d(coefficients_.size() - 1);
    for (std::size_t i = 1; i < coefficients_.size(); ++i) d[i - 1] = coefficients_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coefficients_.size(); k-- > 0;) {
        const Integer& c = coefficients_[k];
        if (c == 0) continue;
        const Integer mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (mag != 1 || k == 0) os << mag.get_str();
        if (k >= 1) os << "x";
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os.str();
}

std::string to_string(Sign s) { return s == Sign::negative ? "negative" : "positive"; }
std::string to_string(Verdict v) { return v == Verdict::certified ? "certified" : "refuted"; }

int sign_changes(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("sign_changes: zero polynomial");
    int changes = 0;
    int previous = 0;
    for (const auto& c : p.coefficients()) {
        const int s = sgn(c);
        if (s == 0) continue;
        if (previous != 0 && s != previous) ++changes;
        previous = s;
    }
    return changes;
}

namespace {

struct SturmResult {
    int count;
    std::optional<std::string> adjustment;
};

SturmResult sturm_count_detail(const Polynomial& p, Rational a, Rational b) {
    if (p.is_zero()) throw std::invalid_argument("sturm_root_count: zero polynomial");
    if (!(a < b)) throw std::invalid_argument("sturm_root_count: require a < b");
    std::optional<std::string> adjustment;
    if (p.evaluate(a) == 0) {
        a += shrink_step();
        adjustment = "left endpoint is a root; interval start moved to " + rational_string(a);
    }
    if (p.evaluate(b) == 0) {
        b -= shrink_step();
        const std::string note = "right endpoint is a root; interval end moved to " + rational_string(b);
        adjustment = adjustment ? *adjustment + "; " + note : note;
    }
    if (!(a < b)) return {0, adjustment};
    const auto chain = sturm_chain(square_free_part(to_qpoly(p)));
    return {variations(chain, a) - variations(chain, b), adjustment};
}

}  // namespace

int sturm_root_count(const Polynomial& p, const Rational& a, const Rational& b) {
    return sturm_count_detail(p, a, b).count;
}

SignCertificate certify_sign(const Polynomial& p, const Rational& a, const Rational& b, Sign claimed,
                             std::span<const Rational> witness_points) {
    if (!(a < b)) throw std::invalid_argument("certify_sign: require a < b");
    SignCertificate cert;
    cert.polynomial = p;
    cert.a = a;
    cert.b = b;
    cert.claimed_sign = claimed;
    cert.descartes_bound = p.is_zero() ? 0 : sign_changes(p);

    if (p.is_zero()) {
        cert.endpoint_values = {{a, 0}, {b, 0}};
        cert.verdict = Verdict::refuted;
        return cert;
    }

    const Rational mid = (a + b) / 2;
    auto record = [&](const Rational& x) {
        const bool seen = std::any_of(cert.endpoint_values.begin(), cert.endpoint_values.end(),
                                      [&](const EndpointValue& e) { return e.point == x; });
        if (!seen) cert.endpoint_values.push_back({x, p.evaluate(x)});
    };
    record(a);
    record(mid);
    record(b);
    for (const auto& w : witness_points) record(w);

    const auto sturm = sturm_count_detail(p, a, b);
    cert.sturm_root_count = sturm.count;
    cert.adjustment = sturm.adjustment;

    const int sa = sgn(p.evaluate(a));
    const int sb = sgn(p.evaluate(b));
    const int sm = sgn(p.evaluate(mid));
    const bool ends_ok = (sa == 0 || matches(sa, claimed)) && (sb == 0 || matches(sb, claimed));
    cert.verdict = (sturm.count == 0 && ends_ok && matches(sm, claimed)) ? Verdict::certified : Verdict::refuted;

    const bool sign_at_zero = matches(sgn(p.evaluate(Rational(0))), claimed);
    const bool opposite_beyond = std::any_of(witness_points.begin(), witness_points.end(), [&](const Rational& w) {
        const int s = sgn(p.evaluate(w));
        return w > b && s != 0 && !matches(s, claimed);
    });
    cert.descartes_argument = a >= 0 && cert.descartes_bound == 1 && sign_at_zero && opposite_beyond;
    return cert;
}

namespace lemma {

Polynomial h1() { return Polynomial{-3, -4, -2, 4, 1}; }
Polynomial h3() { return Polynomial{-1, -6, -21, -16, -3, 6, 1}; }
Polynomial h4() { return Polynomial{-1, -7, -8, -2, 5, 1}; }
Polynomial h5() { return Polynomial{-6, -83, -198, -205, -62, 27, 34, 5}; }

std::vector<Entry> catalog() {
    return {
        {"h1", h1(), {Rational(1), Rational(2)}},
        {"h3", h3(), {Rational(1), Rational(3)}},
        {"h4", h4(), {Rational(1), Rational(2)}},
        {"h5", h5(), {Rational(1), Rational(2)}},
    };
}

std::vector<SignCertificate> certificates() {
    std::vector<SignCertificate> out;
    for (const auto& e : catalog()) {
        out.push_back(certify_sign(e.polynomial, Rational(0), Rational(1), Sign::negative, e.witness_points));
    }
    return out;
}

}  // namespace lemma

std::string rational_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: malformed '" + s + "'");
    q.canonicalize();
    return q;
}

nlohmann::json to_json(const SignCertificate& c) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& k : c.polynomial.coefficients()) {
        if (k.fits_slong_p()) {
            coeffs.push_back(k.get_si());
        } else {
            coeffs.push_back(k.get_str());
        }
    }
    nlohmann::json values = nlohmann::json::array();
    for (const auto& e : c.endpoint_values) {
        values.push_back({{"point", rational_string(e.point)}, {"value", rational_string(e.value)}});
    }
    nlohmann::json j = {
        {"polynomial", {{"coefficients", coeffs}, {"text", c.polynomial.to_string()}}},
        {"interval", {rational_string(c.a), rational_string(c.b)}},
        {"claimed_sign", to_string(c.claimed_sign)},
        {"descartes_bound", c.descartes_bound},
        {"endpoint_values", values},
        {"sturm_root_count", c.sturm_root_count},
        {"descartes_argument", c.descartes_argument},
        {"verdict", to_string(c.verdict)},
    };
    if (c.adjustment) j["adjustment"] = *c.adjustment;
    return j;
}

}  // namespace gamma_envelope::polycert
