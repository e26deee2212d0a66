#include "dunkl/rational.hpp"

#include <cmath>
#include <limits>

namespace dunkl {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd_u128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr i128 kSmallMax = std::numeric_limits<long long>::max();

// Reduces n/d (d > 0 after sign normalization) and stores it when it fits
// inline; returns false when promotion is required.
bool reduce_fits(i128 n, i128 d, long long& rn, long long& rd) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) {
        rn = 0;
        rd = 1;
        return true;
    }
    u128 g = gcd_u128(uabs(n), static_cast<u128>(d));
    u128 un = uabs(n) / g;
    u128 ud = static_cast<u128>(d) / g;
    if (un > static_cast<u128>(kSmallMax) || ud > static_cast<u128>(kSmallMax)) return false;
    rn = n < 0 ? -static_cast<long long>(un) : static_cast<long long>(un);
    rd = static_cast<long long>(ud);
    return true;
}

mpq_class mpq_from_i128(i128 n, i128 d) {
    auto to_mpz = [](i128 v) {
        bool neg = v < 0;
        u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
        Integer hi(static_cast<unsigned long>(u >> 64));
        Integer lo(static_cast<unsigned long>(u & 0xffffffffffffffffull));
        Integer out = (hi << 64) + lo;
        return neg ? Integer(-out) : out;
    };
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    return q;
}

} // namespace

Rational::Rational(long n, long d) {
    if (d == 0) throw Error("rational with zero denominator");
    long long rn, rd;
    if (reduce_fits(n, d, rn, rd)) {
        n_ = rn;
        d_ = rd;
    } else {
        assign(mpq_from_i128(n, d));
    }
}

Rational::Rational(const Integer& z) {
    if (z.fits_slong_p()) {
        n_ = z.get_si();
        d_ = 1;
    } else {
        big_ = std::make_unique<mpq_class>(z);
    }
}

Rational& Rational::operator=(const Rational& o) {
    if (this == &o) return *this;
    n_ = o.n_;
    d_ = o.d_;
    big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    return *this;
}

void Rational::assign(const mpq_class& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        n_ = q.get_num().get_si();
        d_ = q.get_den().get_si();
        big_ = nullptr;
    } else {
        big_ = std::make_unique<mpq_class>(q);
    }
}

void Rational::demote() {
    if (big_ && big_->get_num().fits_slong_p() && big_->get_den().fits_slong_p()) {
        n_ = big_->get_num().get_si();
        d_ = big_->get_den().get_si();
        big_ = nullptr;
    }
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpq_set_si(q.get_mpq_t(), static_cast<long>(n_), 1);
    mpq_class d;
    mpq_set_si(d.get_mpq_t(), static_cast<long>(d_), 1);
    q /= d;
    return q;
}

void Rational::promote_op(const Rational& o, void (*op)(mpq_t, const mpq_t, const mpq_t)) {
    mpq_class a = to_mpq();
    mpq_class b = o.to_mpq();
    mpq_class r;
    op(r.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    assign(r);
    demote();
}

Rational& Rational::operator+=(const Rational& o) {
    if (is_small() && o.is_small()) {
        i128 n = static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_;
        i128 d = static_cast<i128>(d_) * o.d_;
        long long rn, rd;
        if (reduce_fits(n, d, rn, rd)) {
            n_ = rn;
            d_ = rd;
            return *this;
        }
        assign(mpq_from_i128(n, d));
        return *this;
    }
    promote_op(o, mpq_add);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (is_small() && o.is_small()) {
        i128 n = static_cast<i128>(n_) * o.d_ - static_cast<i128>(o.n_) * d_;
        i128 d = static_cast<i128>(d_) * o.d_;
        long long rn, rd;
        if (reduce_fits(n, d, rn, rd)) {
            n_ = rn;
            d_ = rd;
            return *this;
        }
        assign(mpq_from_i128(n, d));
        return *this;
    }
    promote_op(o, mpq_sub);
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    if (is_small() && o.is_small()) {
        i128 n = static_cast<i128>(n_) * o.n_;
        i128 d = static_cast<i128>(d_) * o.d_;
        long long rn, rd;
        if (reduce_fits(n, d, rn, rd)) {
            n_ = rn;
            d_ = rd;
            return *this;
        }
        assign(mpq_from_i128(n, d));
        return *this;
    }
    promote_op(o, mpq_mul);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw Error("rational division by zero");
    if (is_small() && o.is_small()) {
        i128 n = static_cast<i128>(n_) * o.d_;
        i128 d = static_cast<i128>(d_) * o.n_;
        long long rn, rd;
        if (reduce_fits(n, d, rn, rd)) {
            n_ = rn;
            d_ = rd;
            return *this;
        }
        assign(mpq_from_i128(n, d));
        return *this;
    }
    promote_op(o, mpq_div);
    return *this;
}

Rational Rational::operator-() const {
    Rational r(*this);
    if (r.is_small()) {
        r.n_ = -r.n_;
    } else {
        mpq_neg(r.big_->get_mpq_t(), r.big_->get_mpq_t());
    }
    return r;
}

bool operator==(const Rational& a, const Rational& b) {
    if (a.is_small() != b.is_small()) return false;  // canonical across states
    if (a.is_small()) return a.n_ == b.n_ && a.d_ == b.d_;
    return *a.big_ == *b.big_;
}

int Rational::cmp(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
        i128 lhs = static_cast<i128>(a.n_) * b.d_;
        i128 rhs = static_cast<i128>(b.n_) * a.d_;
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    return mpq_cmp(a.to_mpq().get_mpq_t(), b.to_mpq().get_mpq_t());
}

int Rational::sign() const {
    if (is_small()) return n_ < 0 ? -1 : (n_ > 0 ? 1 : 0);
    return mpq_sgn(big_->get_mpq_t());
}

Integer Rational::num() const {
    if (big_) return big_->get_num();
    return Integer(static_cast<long>(n_));
}

Integer Rational::den() const {
    if (big_) return big_->get_den();
    return Integer(static_cast<long>(d_));
}

bool Rational::is_integer() const {
    return is_small() ? d_ == 1 : big_->get_den() == 1;
}

double Rational::to_double() const {
    if (is_small()) return static_cast<double>(n_) / static_cast<double>(d_);
    return big_->get_d();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    for (char c : text) {
        if (c != '/' && c != '-' && c != '+' && !(c >= '0' && c <= '9'))
            throw ParseError("invalid rational literal '" + text + "'");
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw ParseError("invalid rational literal '" + text + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(q);
}

std::string to_string(const Rational& q) {
    Integer d = q.den();
    if (d == 1) return q.num().get_str();
    return q.num().get_str() + "/" + d.get_str();
}

long to_long(const Rational& q) {
    if (!q.is_integer()) throw Error("rational " + to_string(q) + " is not an integer");
    Integer n = q.num();
    if (!n.fits_slong_p()) throw Error("integer out of machine range");
    return n.get_si();
}

long floor_long(const Rational& q) {
    Integer f;
    mpq_class m = q.to_mpq();
    mpz_fdiv_q(f.get_mpz_t(), m.get_num().get_mpz_t(), m.get_den().get_mpz_t());
    if (!f.fits_slong_p()) throw Error("floor out of range");
    return f.get_si();
}

Rational pochhammer(const Rational& z, unsigned long m) {
    Rational acc(1);
    Rational term(z);
    for (unsigned long i = 0; i < m; ++i) {
        acc *= term;
        term += 1;
    }
    return acc;
}

Rational factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

std::optional<long> log2_exact(const Rational& q) {
    if (q.sign() <= 0) return std::nullopt;
    Integer num = q.num();
    Integer den = q.den();
    auto pow_of_two = [](const Integer& n) -> std::optional<long> {
        if (sgn(n) <= 0) return std::nullopt;
        size_t bit = mpz_scan1(n.get_mpz_t(), 0);
        if (mpz_sizeinbase(n.get_mpz_t(), 2) != bit + 1) return std::nullopt;
        return static_cast<long>(bit);
    };
    auto a = pow_of_two(num);
    auto b = pow_of_two(den);
    if (!a || !b) return std::nullopt;
    return *a - *b;
}

Rational pow2(long t) {
    if (t >= -62 && t <= 62) {
        long long v = 1ll << (t >= 0 ? t : -t);
        return t >= 0 ? Rational(v) : Rational(1, static_cast<long>(v));
    }
    mpq_class q(1);
    if (t >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(t));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-t));
    return Rational(q);
}

} // namespace dunkl
