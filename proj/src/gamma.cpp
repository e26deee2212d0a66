#include "dunkl/gamma.hpp"

#include <cmath>
#include <sstream>

namespace dunkl {

namespace {

// Splits arg > 0 as base + m with base in (0,1], m >= 0, and returns
// (base, pochhammer(base, m)) so that Gamma(arg) = poch * Gamma(base).
std::pair<Rational, Rational> reduce_gamma_arg(const Rational& arg) {
    if (sgn(arg) <= 0)
        throw Error("Gamma argument " + to_string(arg) + " is not positive");
    long m = floor_long(arg);
    Rational base = arg - m;
    if (base == 0) {  // integer argument: base 1, shift m-1
        base = 1;
        m -= 1;
    }
    return {base, pochhammer(base, static_cast<unsigned long>(m))};
}

// Splits a rational exponent e into (integer part, fractional part in [0,1)).
std::pair<long, Rational> split_exponent(const Rational& e) {
    long fl = floor_long(e);
    return {fl, e - fl};
}

double pow2_double(const Rational& e) { return std::exp2(to_double(e)); }

} // namespace

void GammaValue::insert(const GammaKey& k, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GammaValue GammaValue::of_rational(const Rational& q) {
    GammaValue v;
    v.insert({Rational(1), Rational(0)}, q);
    return v;
}

GammaValue GammaValue::gamma(const Rational& arg) {
    return term(Rational(1), Rational(0), arg);
}

GammaValue GammaValue::term(const Rational& coeff, const Rational& e2, const Rational& arg) {
    GammaValue v;
    if (coeff == 0) return v;
    auto [base, poch] = reduce_gamma_arg(arg);
    auto [ip, fp] = split_exponent(e2);
    v.insert({base, fp}, coeff * poch * pow2(ip));
    return v;
}

GammaValue& GammaValue::operator+=(const GammaValue& o) {
    for (const auto& [k, c] : o.terms_) insert(k, c);
    return *this;
}

GammaValue& GammaValue::operator-=(const GammaValue& o) {
    for (const auto& [k, c] : o.terms_) insert(k, -c);
    return *this;
}

GammaValue operator*(const Rational& s, GammaValue v) {
    if (s == 0) return GammaValue();
    for (auto& [k, c] : v.terms_) c *= s;
    return v;
}

GammaValue GammaValue::times_pow2(const Rational& e) const {
    GammaValue out;
    for (const auto& [k, c] : terms_) {
        auto [ip, fp] = split_exponent(k.frac2 + e);
        out.insert({k.base, fp}, c * pow2(ip));
    }
    return out;
}

std::optional<Rational> GammaValue::ratio_to(const GammaValue& other) const {
    if (terms_.size() != 1 || other.terms_.size() != 1) return std::nullopt;
    const auto& a = *terms_.begin();
    const auto& b = *other.terms_.begin();
    if (!(a.first == b.first)) return std::nullopt;
    return a.second / b.second;
}

double GammaValue::value() const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_)
        acc += to_double(c) * pow2_double(k.frac2) * std::tgamma(to_double(k.base));
    return acc;
}

std::string GammaValue::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")";
        if (k.frac2 != 0) os << "*2^(" << to_string(k.frac2) << ")";
        os << "*Gamma(" << to_string(k.base) << ")";
    }
    return os.str();
}

void GammaProduct::insert(const GammaProductKey& k, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GammaProduct GammaProduct::product(const GammaValue& fx, const GammaValue& fy) {
    GammaProduct out;
    for (const auto& [kx, cx] : fx.terms()) {
        for (const auto& [ky, cy] : fy.terms()) {
            Rational e = kx.frac2 + ky.frac2;
            long fl = floor_long(e);
            out.insert({kx.base, ky.base, e - fl}, cx * cy * pow2(fl));
        }
    }
    return out;
}

GammaProduct GammaProduct::term(const Rational& coeff, const Rational& e2,
                                const Rational& arg_x, const Rational& arg_y) {
    GammaProduct out;
    if (coeff == 0) return out;
    auto [bx, px] = reduce_gamma_arg(arg_x);
    auto [by, py] = reduce_gamma_arg(arg_y);
    long fl = floor_long(e2);
    out.insert({bx, by, e2 - fl}, coeff * px * py * pow2(fl));
    return out;
}

GammaProduct& GammaProduct::operator+=(const GammaProduct& o) {
    for (const auto& [k, c] : o.terms_) insert(k, c);
    return *this;
}

GammaProduct& GammaProduct::operator-=(const GammaProduct& o) {
    for (const auto& [k, c] : o.terms_) insert(k, -c);
    return *this;
}

GammaProduct operator*(const Rational& s, GammaProduct v) {
    if (s == 0) return GammaProduct();
    for (auto& [k, c] : v.terms_) c *= s;
    return v;
}

std::optional<Rational> GammaProduct::ratio_to(const GammaProduct& other) const {
    if (terms_.size() != 1 || other.terms_.size() != 1) return std::nullopt;
    const auto& a = *terms_.begin();
    const auto& b = *other.terms_.begin();
    if (!(a.first == b.first)) return std::nullopt;
    return a.second / b.second;
}

double GammaProduct::value() const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_)
        acc += to_double(c) * pow2_double(k.frac2) * std::tgamma(to_double(k.base_x)) *
               std::tgamma(to_double(k.base_y));
    return acc;
}

std::string GammaProduct::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")";
        if (k.frac2 != 0) os << "*2^(" << to_string(k.frac2) << ")";
        os << "*Gamma(" << to_string(k.base_x) << ")*Gamma(" << to_string(k.base_y) << ")";
    }
    return os.str();
}

GammaValue gaussian_moment(long p, const Rational& mu, const Rational& omega) {
    if (sgn(omega) <= 0)
        throw Error("gaussian_moment requires omega > 0, got " + to_string(omega));
    if (((p % 2) + 2) % 2 == 1) return GammaValue::zero();  // odd integrand
    Rational s = (Rational(p) + 2 * mu + 1) / 2;
    if (sgn(s) <= 0)
        throw DivergentMoment("divergent moment: p=" + std::to_string(p) +
                                  ", mu=" + to_string(mu),
                              p);
    // omega^{-s}
    if (is_integer(s)) {
        long si = to_long(s);
        Rational w(1);
        for (long i = 0; i < si; ++i) w *= omega;
        return GammaValue::term(1 / w, Rational(0), s);
    }
    if (auto t = log2_exact(omega)) {
        return GammaValue::term(Rational(1), Rational(-*t) * s, s);
    }
    throw UnsupportedScale("cannot represent " + to_string(omega) + "^(-" + to_string(s) +
                           ") exactly");
}

} // namespace dunkl
