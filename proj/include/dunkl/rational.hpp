#ifndef DUNKL_RATIONAL_HPP
#define DUNKL_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "dunkl/errors.hpp"

namespace dunkl {

using Integer = mpz_class;

/// Exact rational numbers.  Values that fit in a canonical int64/int64
/// fraction stay inline (no heap traffic, the common case in operator
/// algebra); anything larger is promoted to a GMP rational.  The
/// representation is canonical in both states -- lowest terms, positive
/// denominator, and the big state is used only for values that do not fit
/// inline -- so equality is structural.
class Rational {
public:
    Rational() = default;
    Rational(long n) : n_(n) {}                 // NOLINT: implicit by design
    Rational(int n) : n_(n) {}                  // NOLINT
    Rational(long long n) : n_(n) {}            // NOLINT
    Rational(long n, long d);
    explicit Rational(const Integer& z);
    explicit Rational(const mpq_class& q) { assign(q); }

    Rational(const Rational& o) { *this = o; }
    Rational(Rational&& o) noexcept = default;
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&& o) noexcept = default;

    bool is_small() const { return big_ == nullptr; }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }
    static int cmp(const Rational& a, const Rational& b);

    int sign() const;
    Integer num() const;
    Integer den() const;
    bool is_integer() const;
    double to_double() const;
    mpq_class to_mpq() const;

private:
    void assign(const mpq_class& q);
    void promote_op(const Rational& o, void (*op)(mpq_t, const mpq_t, const mpq_t));
    void demote();

    long long n_ = 0;
    long long d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

inline int sgn(const Rational& q) { return q.sign(); }

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

/// Parses "p/q" or "p".  No floats accepted anywhere at the boundary.
Rational parse_rational(const std::string& text);

/// Renders as "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.to_double(); }

inline bool is_integer(const Rational& q) { return q.is_integer(); }

/// Requires an integer value that fits in long.
long to_long(const Rational& q);

/// Largest integer <= q.
long floor_long(const Rational& q);

/// Rising factorial z (z+1) ... (z+m-1); 1 for m = 0.
Rational pochhammer(const Rational& z, unsigned long m);

Rational factorial(unsigned long n);

/// Exact base-2 logarithm when q = 2^t for integer t.
std::optional<long> log2_exact(const Rational& q);

/// 2^t as an exact rational (t may be negative).
Rational pow2(long t);

} // namespace dunkl

#endif
