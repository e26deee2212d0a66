#ifndef DUNKL_OPERATORS_HPP
#define DUNKL_OPERATORS_HPP

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dunkl/params.hpp"
#include "dunkl/series.hpp"

namespace dunkl {

class ApplyCache;

/// Composable exact linear map on Series: an immutable expression tree over
/// the primitives
///   Identity, Scalar, MulMonomial(a,b), Derivative(axis), Reflect(axis),
///   Sum(children), Product(children)  -- products compose right-to-left.
/// Trees are applied as-is; no normal form is ever computed.  Equality of
/// operators is decided extensionally by the verify module.
class LinearOperator {
public:
    enum class Kind { Identity, Scalar, Monomial, Derivative, Reflect, Sum, Product };

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        Kind kind;
        Rational scalar;               // Scalar
        long a = 0, b = 0;             // Monomial exponents
        Axis axis = Axis::X;           // Derivative / Reflect
        std::vector<NodePtr> children; // Sum / Product
        std::uint64_t id;              // stable per-node identity for caching
    };

    LinearOperator() : LinearOperator(identity()) {}

    static LinearOperator identity();
    static LinearOperator scalar(const Rational& s);
    static LinearOperator monomial(long a, long b);
    static LinearOperator derivative(Axis axis);
    static LinearOperator reflect(Axis axis);

    friend LinearOperator operator+(const LinearOperator& A, const LinearOperator& B);
    friend LinearOperator operator-(const LinearOperator& A, const LinearOperator& B);
    /// Composition A after B.
    friend LinearOperator operator*(const LinearOperator& A, const LinearOperator& B);
    friend LinearOperator operator*(const Rational& s, const LinearOperator& A);
    LinearOperator operator-() const { return Rational(-1) * *this; }

    LinearOperator pow(unsigned n) const;

    Series apply(const Series& f, ApplyCache* cache = nullptr) const;

    /// Per-axis exponent-shift bandwidth (wx, wy), from the tree: every
    /// Derivative counts 1, MulMonomial counts |a| resp. |b|, products add,
    /// sums take the maximum.
    std::pair<long, long> bandwidth() const;

    std::string describe() const;

    const NodePtr& root() const { return root_; }

private:
    explicit LinearOperator(NodePtr n) : root_(std::move(n)) {}
    NodePtr root_;
};

LinearOperator commutator(const LinearOperator& A, const LinearOperator& B);
LinearOperator anticommutator(const LinearOperator& A, const LinearOperator& B);

/// Memoizes applications node-by-node on single monomials; application to a
/// general series distributes by linearity over its terms.  One cache serves
/// one fixed probe profile; never share across profiles or threads.
class ApplyCache {
public:
    explicit ApplyCache(AxisProfile px, AxisProfile py) : px_(px), py_(py) {}
    const AxisProfile& profile_x() const { return px_; }
    const AxisProfile& profile_y() const { return py_; }

    /// Internal hook used by LinearOperator::apply.
    const Series& lookup_or_apply(const LinearOperator::Node& n, long p, long q);

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
            return std::hash<std::uint64_t>()(k.first * 0x9e3779b97f4a7c15ull ^ k.second);
        }
    };
    AxisProfile px_, py_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Series, KeyHash> map_;
};

// --- operator catalog -------------------------------------------------------

/// Dunkl derivative D = d/dx + (mu/x)(1 - R).
LinearOperator dunkl_derivative(Axis axis, const Rational& mu);

/// Square of the Dunkl derivative in closed form:
/// d^2 + (2mu/x) d - (mu/x^2)(1 - R).
LinearOperator dunkl_laplacian_1d(Axis axis, const Rational& mu);

/// One-dimensional singular Dunkl oscillator
/// H = -1/2 D^2 + x^2/2 + (alpha + beta R)/(2x^2).  Validates conditions.
LinearOperator hamiltonian_singular_1d(Axis axis, const AxisParams& p);

/// Two-dimensional singular Dunkl oscillator (sum of two 1D ones).
LinearOperator hamiltonian_singular_2d(const ModelParams& p);

/// x part of the 2:1 anisotropic model: H_x = -1/2 D_x^2 + 2x^2.
LinearOperator hamiltonian_aniso_x(const Rational& mu_x);

/// Full 2:1 anisotropic Hamiltonian; y axis singular, x axis frequency 2.
LinearOperator hamiltonian_anisotropic(const ModelParams& p);

/// Special case I: mu_x = 0 (plain second derivative in x).
LinearOperator hamiltonian_case_one(const ModelParams& p);

/// Special case II: plain x oscillator of frequency 2 plus an ordinary
/// (non-singular) Dunkl oscillator in y.
LinearOperator hamiltonian_case_two(const Rational& mu_y);

/// su(1,1) ladder pair (A_dag, A) for one axis:
/// A_dag = (a_dag)^2 - (alpha+beta R)/(2x^2), A = a^2 - (alpha+beta R)/(2x^2),
/// with a = (x + D)/sqrt2; the squares are exactly rational.
std::pair<LinearOperator, LinearOperator> ladder_su11(Axis axis, const AxisParams& p);

/// Rescaled sl_{-1}(2) ladder pair for the anisotropic x axis:
/// ct = c/sqrt2 = x + D/2 and ct_dag = x - D/2 (exact rational coefficients).
/// Identities are checked in the equivalent rescaled form.
std::pair<LinearOperator, LinearOperator> ladder_slm12_rescaled(const Rational& mu_x);

/// Rescaled standard-oscillator pair for case II, gt = g/sqrt2 = x + d/2.
std::pair<LinearOperator, LinearOperator> ladder_g_rescaled();

/// Rescaled parabose pair for case II, ht = sqrt2 h = y + D_y.
std::pair<LinearOperator, LinearOperator> ladder_h_rescaled(const Rational& mu_y);

/// Ladder-basis symmetries of the singular model:
/// B0 = Hx - Hy, B+ = Ax_dag Ay, B- = Ax Ay_dag.
struct LadderBasis {
    LinearOperator B0, Bp, Bm;
};
LadderBasis symmetry_ladder_basis(const ModelParams& p);

/// Separation symmetries K1 = B0, K2 (angular), K3 = [K1, K2].
struct KSymmetries {
    LinearOperator K1, K2, K3;
};
KSymmetries symmetry_K(const ModelParams& p);

/// Anisotropic symmetries, stored rescaled: Ftp = F+/sqrt2 = ct_dag Ay,
/// Ftm = F-/sqrt2 = ct Ay_dag, and F1 = Ftp + Ftm (equal to the paper
/// normalization (F+ + F-)/sqrt2, hence exactly rational).
struct FSymmetries {
    LinearOperator F0, Ftp, Ftm, F1;
};
FSymmetries symmetry_F(const ModelParams& p);

/// Case II ladder symmetries.  T+ = g_dag h and T- = g h_dag carry no net
/// sqrt2 factor, so they are stored exactly as defined.
struct TSymmetries {
    LinearOperator T0, Tp, Tm;
};
TSymmetries symmetry_T(const Rational& mu_y);

/// su(1,1) Casimir C = H^2 - A_dag A - 2H for one axis.
LinearOperator casimir_su11(Axis axis, const AxisParams& p);

/// Invariant Q = C + (mu - beta) R, a multiple of the identity.
LinearOperator invariant_Q_su11(Axis axis, const AxisParams& p);

/// sl_{-1}(2) Casimir Q = c_dag c R - H R + R, built with c_dag c = 2 ct_dag ct
/// so the operator equals the unrescaled one exactly.
LinearOperator casimir_slm12(const Rational& mu_x);

/// Structure constants of the cubic algebra:
/// u1 = xi_x Rx + xi_y Ry - H^2 - w_x - w_y,
/// u2 = H (xi_y Ry - xi_x Rx + w_x - w_y),
/// with xi = 2(mu - beta) and w = 2(mu^2 + alpha - 3/4).
std::pair<LinearOperator, LinearOperator> cubic_structure_u(const ModelParams& p);

/// Hahn-algebra structure constants gamma1, gamma2, gamma3.
struct HahnStructure {
    LinearOperator g1, g2, g3;
};
HahnStructure hahn_structure(const ModelParams& p);

/// Hahn Casimir Q = 8{K1^2,K2} + (64+g1)K1^2 - 16K2^2 + K3^2 + 2 g2 K1
/// + 2 g3 K2 (the unique normalization of this form commuting with K1 and
/// K2), together with the value operator
/// z1 H^2 - z2 Rx - z3 Ry + z4 Rx Ry + z5 (z1 itself operator-valued),
/// which equals Q + g3 + 4 exactly.
std::pair<LinearOperator, LinearOperator> hahn_casimir_pair(const ModelParams& p);

/// Named operator catalog for the CLI describe facility.
std::map<std::string, LinearOperator> operator_catalog(const ModelParams& p,
                                                       const std::string& model);

} // namespace dunkl

#endif
