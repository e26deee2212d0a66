#ifndef DUNKL_GAMMA_HPP
#define DUNKL_GAMMA_HPP

#include <map>
#include <string>
#include <utility>

#include "dunkl/rational.hpp"

namespace dunkl {

// Exact Gamma-class values.  A term is
//
//     coeff * 2^frac2 * Gamma(base),     base in (0,1],  frac2 in [0,1),
//
// where integer powers of two are folded into the rational coefficient and
// Gamma arguments are reduced to the canonical window via
// Gamma(z+1) = z Gamma(z).  The fractional power of two carries the exact
// scale omega^{-(p+2mu+1)/2} of Gaussian moments with omega = 2.

struct GammaKey {
    Rational base;
    Rational frac2;
    bool operator<(const GammaKey& o) const {
        if (base != o.base) return base < o.base;
        return frac2 < o.frac2;
    }
    bool operator==(const GammaKey& o) const {
        return base == o.base && frac2 == o.frac2;
    }
};

class GammaValue {
public:
    GammaValue() = default;

    static GammaValue zero() { return GammaValue(); }

    /// q, represented as q * Gamma(1).
    static GammaValue of_rational(const Rational& q);

    /// Gamma(arg) for rational arg > 0, canonicalized.
    static GammaValue gamma(const Rational& arg);

    /// coeff * 2^e2 * Gamma(arg), the general canonical constructor.
    static GammaValue term(const Rational& coeff, const Rational& e2, const Rational& arg);

    GammaValue& operator+=(const GammaValue& o);
    GammaValue& operator-=(const GammaValue& o);
    friend GammaValue operator+(GammaValue a, const GammaValue& b) { return a += b; }
    friend GammaValue operator-(GammaValue a, const GammaValue& b) { return a -= b; }
    friend GammaValue operator*(const Rational& s, GammaValue v);

    /// Multiplies every term by 2^e with rational e.
    GammaValue times_pow2(const Rational& e) const;

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const GammaValue& o) const { return terms_ == o.terms_; }
    bool operator!=(const GammaValue& o) const { return !(*this == o); }

    /// Exact ratio this / other when both are single terms on a common
    /// Gamma base (and commensurate scale); nullopt otherwise.
    std::optional<Rational> ratio_to(const GammaValue& other) const;

    double value() const;
    std::string str() const;

    const std::map<GammaKey, Rational>& terms() const { return terms_; }

private:
    void insert(const GammaKey& k, const Rational& c);
    std::map<GammaKey, Rational> terms_;
};

/// Exact 2D analogue: coeff * 2^frac2 * Gamma(base_x) Gamma(base_y).
struct GammaProductKey {
    Rational base_x;
    Rational base_y;
    Rational frac2;
    bool operator<(const GammaProductKey& o) const {
        if (base_x != o.base_x) return base_x < o.base_x;
        if (base_y != o.base_y) return base_y < o.base_y;
        return frac2 < o.frac2;
    }
    bool operator==(const GammaProductKey& o) const {
        return base_x == o.base_x && base_y == o.base_y && frac2 == o.frac2;
    }
};

class GammaProduct {
public:
    GammaProduct() = default;
    static GammaProduct zero() { return GammaProduct(); }

    /// Product of two one-dimensional Gamma values (x-factor, y-factor).
    static GammaProduct product(const GammaValue& fx, const GammaValue& fy);

    /// coeff * 2^e2 * Gamma(arg_x) Gamma(arg_y), canonicalized.
    static GammaProduct term(const Rational& coeff, const Rational& e2,
                             const Rational& arg_x, const Rational& arg_y);

    GammaProduct& operator+=(const GammaProduct& o);
    GammaProduct& operator-=(const GammaProduct& o);
    friend GammaProduct operator+(GammaProduct a, const GammaProduct& b) { return a += b; }
    friend GammaProduct operator-(GammaProduct a, const GammaProduct& b) { return a -= b; }
    friend GammaProduct operator*(const Rational& s, GammaProduct v);

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const GammaProduct& o) const { return terms_ == o.terms_; }
    bool operator!=(const GammaProduct& o) const { return !(*this == o); }

    std::optional<Rational> ratio_to(const GammaProduct& other) const;

    double value() const;
    std::string str() const;

    const std::map<GammaProductKey, Rational>& terms() const { return terms_; }

private:
    void insert(const GammaProductKey& k, const Rational& c);
    std::map<GammaProductKey, Rational> terms_;
};

/// Exact moment  integral x^p |x|^{2 mu} e^{-omega x^2} dx  over the real line.
/// Zero for odd p; for even p equals omega^{-(p+2mu+1)/2} Gamma((p+2mu+1)/2).
/// Requires omega > 0 and, for even p, p + 2mu + 1 > 0.
GammaValue gaussian_moment(long p, const Rational& mu, const Rational& omega);

} // namespace dunkl

#endif
