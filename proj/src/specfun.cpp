#include "dunkl/specfun.hpp"

#include "dunkl/errors.hpp"

namespace dunkl {

ExactPolynomial::ExactPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Rational(0));
}

Rational ExactPolynomial::eval_exact(const Rational& t) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double ExactPolynomial::eval(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + to_double(*it);
    return acc;
}

namespace {

ExactPolynomial poly_add(const ExactPolynomial& a, const ExactPolynomial& b,
                         const Rational& sb) {
    std::vector<Rational> c(std::max(a.coeffs().size(), b.coeffs().size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] = a.coeff(i);
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] += sb * b.coeff(i);
    return ExactPolynomial(std::move(c));
}

// (u + v t) * p
ExactPolynomial poly_affine_mul(const Rational& u, const Rational& v,
                                const ExactPolynomial& p) {
    std::vector<Rational> c(p.coeffs().size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        c[i] += u * p.coeff(i);
        c[i + 1] += v * p.coeff(i);
    }
    return ExactPolynomial(std::move(c));
}

} // namespace

ExactPolynomial laguerre(unsigned n, const Rational& alpha) {
    ExactPolynomial prev({Rational(1)});
    if (n == 0) return prev;
    ExactPolynomial cur({alpha + 1, Rational(-1)});
    for (unsigned k = 1; k < n; ++k) {
        // (k+1) L_{k+1} = (2k+1+alpha - t) L_k - (k+alpha) L_{k-1}
        Rational kk(static_cast<long>(k));
        ExactPolynomial next = poly_affine_mul(2 * kk + 1 + alpha, Rational(-1), cur);
        next = poly_add(next, prev, -(kk + alpha));
        next = ExactPolynomial([&] {
            std::vector<Rational> c = next.coeffs();
            for (auto& x : c) x /= kk + 1;
            return c;
        }());
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

ExactPolynomial jacobi(unsigned n, const Rational& alpha, const Rational& beta) {
    if (alpha <= -1 || beta <= -1)
        throw Error("jacobi requires alpha, beta > -1");
    ExactPolynomial prev({Rational(1)});
    if (n == 0) return prev;
    ExactPolynomial cur({(alpha - beta) / 2, (alpha + beta + 2) / 2});
    for (unsigned k = 1; k < n; ++k) {
        // standard three-term recurrence for P_{k+1}
        Rational kk(static_cast<long>(k));
        Rational a1 = 2 * (kk + 1) * (kk + alpha + beta + 1) * (2 * kk + alpha + beta);
        Rational a2 = (2 * kk + alpha + beta + 1) * (alpha * alpha - beta * beta);
        Rational a3 =
            (2 * kk + alpha + beta) * (2 * kk + alpha + beta + 1) * (2 * kk + alpha + beta + 2);
        Rational a4 = 2 * (kk + alpha) * (kk + beta) * (2 * kk + alpha + beta + 2);
        ExactPolynomial next = poly_affine_mul(a2 / a1, a3 / a1, cur);
        next = poly_add(next, prev, -a4 / a1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

GeneralizedHermite generalized_hermite(unsigned n, const Rational& gamma) {
    if (gamma + Rational(1, 2) <= 0)
        throw Error("generalized Hermite requires gamma + 1/2 > 0");
    unsigned m = n / 2;
    int p = static_cast<int>(n % 2);
    return {p, laguerre(m, gamma + p - Rational(1, 2))};
}

} // namespace dunkl
