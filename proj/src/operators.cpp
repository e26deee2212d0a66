#include "dunkl/operators.hpp"

#include <atomic>
#include <sstream>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

std::atomic<std::uint64_t> g_node_counter{1};

LinearOperator::NodePtr make_node(LinearOperator::Node n) {
    n.id = g_node_counter.fetch_add(1, std::memory_order_relaxed);
    return std::make_shared<const LinearOperator::Node>(std::move(n));
}

using Kind = LinearOperator::Kind;

} // namespace

LinearOperator LinearOperator::identity() {
    static LinearOperator op{make_node({Kind::Identity, Rational(1), 0, 0, Axis::X, {}, 0})};
    return op;
}

LinearOperator LinearOperator::scalar(const Rational& s) {
    return LinearOperator{make_node({Kind::Scalar, s, 0, 0, Axis::X, {}, 0})};
}

LinearOperator LinearOperator::monomial(long a, long b) {
    return LinearOperator{make_node({Kind::Monomial, Rational(1), a, b, Axis::X, {}, 0})};
}

LinearOperator LinearOperator::derivative(Axis axis) {
    return LinearOperator{make_node({Kind::Derivative, Rational(1), 0, 0, axis, {}, 0})};
}

LinearOperator LinearOperator::reflect(Axis axis) {
    return LinearOperator{make_node({Kind::Reflect, Rational(1), 0, 0, axis, {}, 0})};
}

LinearOperator operator+(const LinearOperator& A, const LinearOperator& B) {
    std::vector<LinearOperator::NodePtr> kids;
    auto absorb = [&kids](const LinearOperator::NodePtr& n) {
        if (n->kind == Kind::Sum)
            kids.insert(kids.end(), n->children.begin(), n->children.end());
        else
            kids.push_back(n);
    };
    absorb(A.root());
    absorb(B.root());
    return LinearOperator{make_node({Kind::Sum, Rational(0), 0, 0, Axis::X, std::move(kids), 0})};
}

LinearOperator operator-(const LinearOperator& A, const LinearOperator& B) {
    return A + (Rational(-1) * B);
}

LinearOperator operator*(const LinearOperator& A, const LinearOperator& B) {
    std::vector<LinearOperator::NodePtr> kids;
    auto absorb = [&kids](const LinearOperator::NodePtr& n) {
        if (n->kind == Kind::Product)
            kids.insert(kids.end(), n->children.begin(), n->children.end());
        else
            kids.push_back(n);
    };
    absorb(A.root());
    absorb(B.root());
    return LinearOperator{
        make_node({Kind::Product, Rational(0), 0, 0, Axis::X, std::move(kids), 0})};
}

LinearOperator operator*(const Rational& s, const LinearOperator& A) {
    return LinearOperator::scalar(s) * A;
}

LinearOperator LinearOperator::pow(unsigned n) const {
    if (n == 0) return identity();
    LinearOperator acc = *this;
    for (unsigned i = 1; i < n; ++i) acc = acc * *this;
    return acc;
}

LinearOperator commutator(const LinearOperator& A, const LinearOperator& B) {
    return A * B - B * A;
}

LinearOperator anticommutator(const LinearOperator& A, const LinearOperator& B) {
    return A * B + B * A;
}

namespace detail {

std::uint64_t pack_pq(long p, long q) {
    constexpr std::uint64_t off = 1ull << 31;
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p + off)) << 32) |
           static_cast<std::uint32_t>(q + off);
}

Series apply_node(const LinearOperator::Node& n, const Series& f, ApplyCache* cache);

// Applies a node to a single monomial through the cache; application to
// general series distributes over terms by linearity.
const Series& apply_cached_monomial(const LinearOperator::Node& n, long p, long q,
                                    ApplyCache& cache);

Series apply_via_cache(const LinearOperator::Node& n, const Series& f, ApplyCache& cache) {
    SeriesBuilder acc;
    f.for_each([&](long p, long q, const Rational& c) {
        acc.add_scaled(c, apply_cached_monomial(n, p, q, cache));
    });
    return acc.build(f.profile_x(), f.profile_y());
}

Series apply_node(const LinearOperator::Node& n, const Series& f, ApplyCache* cache) {
    switch (n.kind) {
        case Kind::Identity:
            return f;
        case Kind::Scalar:
            return n.scalar * f;
        case Kind::Monomial:
            return f.shifted(n.a, n.b);
        case Kind::Derivative:
            return f.derivative(n.axis);
        case Kind::Reflect:
            return f.reflected(n.axis);
        case Kind::Sum: {
            SeriesBuilder acc;
            for (const auto& child : n.children) {
                if (cache)
                    acc.add(apply_via_cache(*child, f, *cache));
                else
                    acc.add(apply_node(*child, f, nullptr));
            }
            return acc.build(f.profile_x(), f.profile_y());
        }
        case Kind::Product: {
            Series acc = f;
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
                if (cache)
                    acc = apply_via_cache(**it, acc, *cache);
                else
                    acc = apply_node(**it, acc, nullptr);
            }
            return acc;
        }
    }
    throw Error("unreachable operator kind");
}

} // namespace detail

const Series& ApplyCache::lookup_or_apply(const LinearOperator::Node& n, long p, long q) {
    auto key = std::make_pair(n.id, detail::pack_pq(p, q));
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    Series mono = Series::monomial(p, q, px_, py_);
    Series image = detail::apply_node(n, mono, this);
    return map_.emplace(key, std::move(image)).first->second;
}

namespace detail {

const Series& apply_cached_monomial(const LinearOperator::Node& n, long p, long q,
                                    ApplyCache& cache) {
    return cache.lookup_or_apply(n, p, q);
}

} // namespace detail

Series LinearOperator::apply(const Series& f, ApplyCache* cache) const {
    if (cache && (cache->profile_x() != f.profile_x() || cache->profile_y() != f.profile_y()))
        throw ProfileMismatch("apply cache bound to a different profile");
    return detail::apply_node(*root_, f, cache);
}

std::pair<long, long> LinearOperator::bandwidth() const {
    struct Walk {
        static std::pair<long, long> go(const Node& n) {
            switch (n.kind) {
                case Kind::Identity:
                case Kind::Scalar:
                case Kind::Reflect:
                    return {0, 0};
                case Kind::Monomial:
                    return {std::labs(n.a), std::labs(n.b)};
                case Kind::Derivative:
                    return n.axis == Axis::X ? std::pair<long, long>{1, 0}
                                             : std::pair<long, long>{0, 1};
                case Kind::Sum: {
                    long wx = 0, wy = 0;
                    for (const auto& c : n.children) {
                        auto [cx, cy] = go(*c);
                        wx = std::max(wx, cx);
                        wy = std::max(wy, cy);
                    }
                    return {wx, wy};
                }
                case Kind::Product: {
                    long wx = 0, wy = 0;
                    for (const auto& c : n.children) {
                        auto [cx, cy] = go(*c);
                        wx += cx;
                        wy += cy;
                    }
                    return {wx, wy};
                }
            }
            return {0, 0};
        }
    };
    return Walk::go(*root_);
}

namespace {

void describe_node(const LinearOperator::Node& n, std::ostream& os, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    switch (n.kind) {
        case Kind::Identity:
            os << pad << "I\n";
            return;
        case Kind::Scalar:
            os << pad << "scalar " << to_string(n.scalar) << "\n";
            return;
        case Kind::Monomial:
            os << pad << "x^" << n.a << " y^" << n.b << "\n";
            return;
        case Kind::Derivative:
            os << pad << (n.axis == Axis::X ? "d/dx" : "d/dy") << "\n";
            return;
        case Kind::Reflect:
            os << pad << (n.axis == Axis::X ? "Rx" : "Ry") << "\n";
            return;
        case Kind::Sum:
            os << pad << "sum\n";
            for (const auto& c : n.children) describe_node(*c, os, indent + 1);
            return;
        case Kind::Product:
            os << pad << "compose (right to left)\n";
            for (const auto& c : n.children) describe_node(*c, os, indent + 1);
            return;
    }
}

} // namespace

std::string LinearOperator::describe() const {
    std::ostringstream os;
    describe_node(*root_, os, 0);
    return os.str();
}

// --- catalog ----------------------------------------------------------------

namespace {

const Rational kHalf(1, 2);

LinearOperator D(Axis a) { return LinearOperator::derivative(a); }
LinearOperator R(Axis a) { return LinearOperator::reflect(a); }
LinearOperator M(long p, long q) { return LinearOperator::monomial(p, q); }
LinearOperator I() { return LinearOperator::identity(); }

LinearOperator inv_sq_coupling(Axis axis, const Rational& alpha, const Rational& beta) {
    // (alpha + beta R) / (2 x^2)
    LinearOperator x2inv = axis == Axis::X ? M(-2, 0) : M(0, -2);
    return (alpha / 2) * x2inv + (beta / 2) * (x2inv * R(axis));
}

} // namespace

LinearOperator dunkl_derivative(Axis axis, const Rational& mu) {
    LinearOperator xinv = axis == Axis::X ? M(-1, 0) : M(0, -1);
    return D(axis) + mu * (xinv * (I() - R(axis)));
}

LinearOperator dunkl_laplacian_1d(Axis axis, const Rational& mu) {
    LinearOperator xinv = axis == Axis::X ? M(-1, 0) : M(0, -1);
    LinearOperator x2inv = axis == Axis::X ? M(-2, 0) : M(0, -2);
    return D(axis) * D(axis) + (2 * mu) * (xinv * D(axis)) - mu * (x2inv * (I() - R(axis)));
}

LinearOperator hamiltonian_singular_1d(Axis axis, const AxisParams& p) {
    p.validate(axis == Axis::X ? "_x" : "_y");
    LinearOperator dd = dunkl_derivative(axis, p.mu);
    LinearOperator x2 = axis == Axis::X ? M(2, 0) : M(0, 2);
    return Rational(-1, 2) * (dd * dd) + kHalf * x2 + inv_sq_coupling(axis, p.alpha(), p.beta());
}

LinearOperator hamiltonian_singular_2d(const ModelParams& p) {
    return hamiltonian_singular_1d(Axis::X, p.x) + hamiltonian_singular_1d(Axis::Y, p.y);
}

LinearOperator hamiltonian_aniso_x(const Rational& mu_x) {
    LinearOperator dd = dunkl_derivative(Axis::X, mu_x);
    return Rational(-1, 2) * (dd * dd) + Rational(2) * M(2, 0);
}

LinearOperator hamiltonian_anisotropic(const ModelParams& p) {
    p.validate_anisotropic();
    return hamiltonian_aniso_x(p.x.mu) + hamiltonian_singular_1d(Axis::Y, p.y);
}

LinearOperator hamiltonian_case_one(const ModelParams& p) {
    p.validate_case_one();
    return Rational(-1, 2) * (D(Axis::X) * D(Axis::X)) + Rational(2) * M(2, 0) +
           hamiltonian_singular_1d(Axis::Y, p.y);
}

LinearOperator hamiltonian_case_two(const Rational& mu_y) {
    if (mu_y <= Rational(-1, 2))
        throw ConditionViolation("condition mu_y + 1/2 > 0 violated: mu_y = " + to_string(mu_y));
    LinearOperator ddy = dunkl_derivative(Axis::Y, mu_y);
    return Rational(-1, 2) * (D(Axis::X) * D(Axis::X)) + Rational(2) * M(2, 0) +
           Rational(-1, 2) * (ddy * ddy) + kHalf * M(0, 2);
}

std::pair<LinearOperator, LinearOperator> ladder_su11(Axis axis, const AxisParams& p) {
    LinearOperator dd = dunkl_derivative(axis, p.mu);
    LinearOperator x = axis == Axis::X ? M(1, 0) : M(0, 1);
    LinearOperator coupling = inv_sq_coupling(axis, p.alpha(), p.beta());
    // (a_dag)^2 = ((x - D)/sqrt2)^2 = (x - D)^2 / 2, exactly rational
    LinearOperator adag2 = kHalf * ((x - dd) * (x - dd));
    LinearOperator a2 = kHalf * ((x + dd) * (x + dd));
    return {adag2 - coupling, a2 - coupling};
}

std::pair<LinearOperator, LinearOperator> ladder_slm12_rescaled(const Rational& mu_x) {
    LinearOperator dd = dunkl_derivative(Axis::X, mu_x);
    return {M(1, 0) - kHalf * dd, M(1, 0) + kHalf * dd};
}

std::pair<LinearOperator, LinearOperator> ladder_g_rescaled() {
    return {M(1, 0) - kHalf * D(Axis::X), M(1, 0) + kHalf * D(Axis::X)};
}

std::pair<LinearOperator, LinearOperator> ladder_h_rescaled(const Rational& mu_y) {
    LinearOperator dd = dunkl_derivative(Axis::Y, mu_y);
    return {M(0, 1) - dd, M(0, 1) + dd};
}

LadderBasis symmetry_ladder_basis(const ModelParams& p) {
    auto [axd, ax] = ladder_su11(Axis::X, p.x);
    auto [ayd, ay] = ladder_su11(Axis::Y, p.y);
    LinearOperator hx = hamiltonian_singular_1d(Axis::X, p.x);
    LinearOperator hy = hamiltonian_singular_1d(Axis::Y, p.y);
    return {hx - hy, axd * ay, ax * ayd};
}

KSymmetries symmetry_K(const ModelParams& p) {
    p.validate_singular();
    LinearOperator J = M(1, 0) * dunkl_derivative(Axis::Y, p.y.mu) -
                       M(0, 1) * dunkl_derivative(Axis::X, p.x.mu);
    LinearOperator K2 = J * J - p.x.alpha() * M(-2, 2) - p.x.beta() * (M(-2, 2) * R(Axis::X)) -
                        p.y.alpha() * M(2, -2) - p.y.beta() * (M(2, -2) * R(Axis::Y)) -
                        kHalf * I();
    LinearOperator K1 = symmetry_ladder_basis(p).B0;
    return {K1, K2, commutator(K1, K2)};
}

FSymmetries symmetry_F(const ModelParams& p) {
    p.validate_anisotropic();
    auto [ctd, ct] = ladder_slm12_rescaled(p.x.mu);
    auto [ayd, ay] = ladder_su11(Axis::Y, p.y);
    LinearOperator F0 = hamiltonian_aniso_x(p.x.mu) - hamiltonian_singular_1d(Axis::Y, p.y);
    LinearOperator Ftp = ctd * ay;
    LinearOperator Ftm = ct * ayd;
    return {F0, Ftp, Ftm, Ftp + Ftm};
}

TSymmetries symmetry_T(const Rational& mu_y) {
    auto [gtd, gt] = ladder_g_rescaled();
    auto [htd, ht] = ladder_h_rescaled(mu_y);
    LinearOperator hx = Rational(-1, 2) * (D(Axis::X) * D(Axis::X)) + Rational(2) * M(2, 0);
    LinearOperator ddy = dunkl_derivative(Axis::Y, mu_y);
    LinearOperator hy = Rational(-1, 2) * (ddy * ddy) + kHalf * M(0, 2);
    // T+ = g_dag h = (sqrt2 gt_dag)(ht/sqrt2): the sqrt2 factors cancel, so
    // the stored operators equal the defining ones exactly.
    return {hx - hy, gtd * ht, gt * htd};
}

LinearOperator casimir_su11(Axis axis, const AxisParams& p) {
    auto [adag, a] = ladder_su11(axis, p);
    LinearOperator h = hamiltonian_singular_1d(axis, p);
    return h * h - adag * a - Rational(2) * h;
}

LinearOperator invariant_Q_su11(Axis axis, const AxisParams& p) {
    return casimir_su11(axis, p) + (p.mu - p.beta()) * R(axis);
}

LinearOperator casimir_slm12(const Rational& mu_x) {
    auto [ctd, ct] = ladder_slm12_rescaled(mu_x);
    LinearOperator h = hamiltonian_aniso_x(mu_x);
    // c_dag c = 2 ct_dag ct restores the unrescaled product
    return Rational(2) * (ctd * ct * R(Axis::X)) - h * R(Axis::X) + R(Axis::X);
}

namespace {

Rational xi(const AxisParams& p) { return 2 * (p.mu - p.beta()); }
Rational w_const(const AxisParams& p) {
    return 2 * (p.mu * p.mu + p.alpha() - Rational(3, 4));
}

} // namespace

std::pair<LinearOperator, LinearOperator> cubic_structure_u(const ModelParams& p) {
    LinearOperator H = hamiltonian_singular_2d(p);
    LinearOperator u1 = xi(p.x) * R(Axis::X) + xi(p.y) * R(Axis::Y) - H * H -
                        (w_const(p.x) + w_const(p.y)) * I();
    LinearOperator u2 = H * (xi(p.y) * R(Axis::Y) - xi(p.x) * R(Axis::X) +
                             (w_const(p.x) - w_const(p.y)) * I());
    return {u1, u2};
}

HahnStructure hahn_structure(const ModelParams& p) {
    LinearOperator H = hamiltonian_singular_2d(p);
    LinearOperator RxRy = R(Axis::X) * R(Axis::Y);
    LinearOperator g1 =
        Rational(-8) * (2 * p.x.beta() * R(Axis::X) + 2 * p.y.beta() * R(Axis::Y) +
                        (4 * p.x.mu * p.y.mu) * RxRy + (w_const(p.x) + w_const(p.y)) * I());
    LinearOperator g2 = Rational(8) * (H * (xi(p.y) * R(Axis::Y) - xi(p.x) * R(Axis::X) +
                                            (w_const(p.x) - w_const(p.y)) * I()));
    LinearOperator g3 = Rational(16) * (p.x.mu * R(Axis::X) + p.y.mu * R(Axis::Y) +
                                        (2 * p.x.mu * p.y.mu) * RxRy) -
                        Rational(8) * (H * H);
    return {g1, g2, g3};
}

std::pair<LinearOperator, LinearOperator> hahn_casimir_pair(const ModelParams& p) {
    auto [K1, K2, K3] = symmetry_K(p);
    auto [g1, g2, g3] = hahn_structure(p);
    LinearOperator K1sq = K1 * K1;
    // Central normalization: the coefficients must be (64+g1) K1^2 and
    // 2 g3 K2, otherwise [Q,K1] = -16 K3 and [Q,K2] = -8 {K1,K3} (checked
    // exactly by the test suite).
    LinearOperator Q = Rational(8) * anticommutator(K1sq, K2) +
                       (Rational(64) * I() + g1) * K1sq - Rational(16) * (K2 * K2) + K3 * K3 +
                       Rational(2) * (g2 * K1) + (Rational(2) * g3) * K2;

    const Rational mx = p.x.mu, my = p.y.mu;
    const Rational ax = p.x.alpha(), ay = p.y.alpha();
    const Rational bx = p.x.beta(), by = p.y.beta();
    LinearOperator RxRy = R(Axis::X) * R(Axis::Y);
    LinearOperator z1 =
        Rational(16) * ((mx * mx + my * my + ax + ay + 2) * I() + (bx - 2 * mx) * R(Axis::X) +
                        (by - 2 * my) * R(Axis::Y) - (2 * mx * my) * RxRy);
    Rational z2 = 64 * ((bx - 2 * mx) * (my * my + ay - Rational(3, 4)) - mx + mx * ay);
    Rational z3 = 64 * ((by - 2 * my) * (mx * mx + ax - Rational(3, 4)) - my + my * ax);
    Rational z4 = 64 * (bx * my + by * mx - bx * by);
    Rational z5 = 64 * (mx * mx + my * my - ax * (my * my + ay - Rational(3, 4)) -
                        ay * (mx * mx - Rational(3, 4)) - Rational(1, 2));
    LinearOperator H = hamiltonian_singular_2d(p);
    LinearOperator value = z1 * (H * H) - z2 * R(Axis::X) - z3 * R(Axis::Y) + z4 * RxRy +
                           LinearOperator::scalar(z5);
    return {Q, value};
}

std::map<std::string, LinearOperator> operator_catalog(const ModelParams& p,
                                                       const std::string& model) {
    std::map<std::string, LinearOperator> cat;
    cat.emplace("Dx", dunkl_derivative(Axis::X, p.x.mu));
    cat.emplace("Dy", dunkl_derivative(Axis::Y, p.y.mu));
    cat.emplace("Rx", R(Axis::X));
    cat.emplace("Ry", R(Axis::Y));
    if (model == "singular2d") {
        p.validate_singular();
        cat.emplace("H", hamiltonian_singular_2d(p));
        cat.emplace("Hx", hamiltonian_singular_1d(Axis::X, p.x));
        cat.emplace("Hy", hamiltonian_singular_1d(Axis::Y, p.y));
        auto [axd, ax] = ladder_su11(Axis::X, p.x);
        auto [ayd, ay] = ladder_su11(Axis::Y, p.y);
        cat.emplace("Ax_dag", axd);
        cat.emplace("Ax", ax);
        cat.emplace("Ay_dag", ayd);
        cat.emplace("Ay", ay);
        auto basis = symmetry_ladder_basis(p);
        cat.emplace("B0", basis.B0);
        cat.emplace("B+", basis.Bp);
        cat.emplace("B-", basis.Bm);
        auto ks = symmetry_K(p);
        cat.emplace("K1", ks.K1);
        cat.emplace("K2", ks.K2);
        cat.emplace("K3", ks.K3);
        cat.emplace("Cx", casimir_su11(Axis::X, p.x));
        cat.emplace("Cy", casimir_su11(Axis::Y, p.y));
        cat.emplace("Qx", invariant_Q_su11(Axis::X, p.x));
        cat.emplace("Qy", invariant_Q_su11(Axis::Y, p.y));
        cat.emplace("Q_hahn", hahn_casimir_pair(p).first);
    } else if (model == "aniso" || model == "caseI") {
        if (model == "caseI")
            p.validate_case_one();
        else
            p.validate_anisotropic();
        cat.emplace("H", model == "caseI" ? hamiltonian_case_one(p) : hamiltonian_anisotropic(p));
        cat.emplace("Hx", hamiltonian_aniso_x(p.x.mu));
        cat.emplace("Hy", hamiltonian_singular_1d(Axis::Y, p.y));
        auto [ctd, ct] = ladder_slm12_rescaled(p.x.mu);
        cat.emplace("cx_t_dag", ctd);
        cat.emplace("cx_t", ct);
        cat.emplace("Q_slm12", casimir_slm12(p.x.mu));
        auto fs = symmetry_F(p);
        cat.emplace("F0", fs.F0);
        cat.emplace("F+", fs.Ftp);
        cat.emplace("F-", fs.Ftm);
        cat.emplace("F1", fs.F1);
    } else if (model == "caseII") {
        cat.emplace("H", hamiltonian_case_two(p.y.mu));
        auto ts = symmetry_T(p.y.mu);
        cat.emplace("T0", ts.T0);
        cat.emplace("T+", ts.Tp);
        cat.emplace("T-", ts.Tm);
    } else {
        throw ParseError("unknown model '" + model + "'");
    }
    return cat;
}

} // namespace dunkl
