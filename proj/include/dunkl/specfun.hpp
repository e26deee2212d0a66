#ifndef DUNKL_SPECFUN_HPP
#define DUNKL_SPECFUN_HPP

#include <vector>

#include "dunkl/rational.hpp"

namespace dunkl {

/// Dense exact polynomial in one formal variable (the caller knows whether
/// that variable is x, x^2, rho^2, ...).
class ExactPolynomial {
public:
    ExactPolynomial() : coeffs_{Rational(0)} {}
    explicit ExactPolynomial(std::vector<Rational> coeffs);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const Rational& coeff(std::size_t k) const { return coeffs_.at(k); }
    const Rational& leading() const { return coeffs_.back(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational eval_exact(const Rational& t) const;
    double eval(double t) const;

    bool operator==(const ExactPolynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<Rational> coeffs_;  // degree-indexed; leading coeff nonzero
};

/// Laguerre polynomial L_n^{(alpha)} by the three-term recurrence.
ExactPolynomial laguerre(unsigned n, const Rational& alpha);

/// Jacobi polynomial P_n^{(alpha,beta)}; requires alpha, beta > -1.
ExactPolynomial jacobi(unsigned n, const Rational& alpha, const Rational& beta);

/// Generalized Hermite polynomial split into parity and Laguerre core:
/// H^gamma_{2m+p}(x) is proportional to x^p L_m^{(gamma+p-1/2)}(x^2).
/// Returns (p, L_m); requires gamma + 1/2 > 0.  The square of the omitted
/// normalization prefactor is m! / Gamma(2m+p+gamma+1/2).
struct GeneralizedHermite {
    int parity;             // 0 or 1
    ExactPolynomial core;   // polynomial in x^2
};
GeneralizedHermite generalized_hermite(unsigned n, const Rational& gamma);

} // namespace dunkl

#endif
