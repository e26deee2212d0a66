#include "dunkl/models.hpp"

#include <algorithm>
#include <map>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

// polynomial in (x^2, y^2): map (i, j) -> coefficient of x^{2i} y^{2j}
using SqPoly = std::map<std::pair<long, long>, Rational>;

void sq_add(SqPoly& p, long i, long j, const Rational& c) {
    if (c == 0) return;
    auto key = std::make_pair(i, j);
    auto it = p.find(key);
    if (it == p.end())
        p.emplace(key, c);
    else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

SqPoly sq_mul(const SqPoly& a, const SqPoly& b) {
    SqPoly out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            sq_add(out, ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

// (x^2 - y^2)^i (x^2 + y^2)^m expanded exactly
SqPoly sq_diff_sum_powers(long i, long m) {
    SqPoly acc;
    acc.emplace(std::make_pair(0L, 0L), Rational(1));
    SqPoly diff, sum;
    diff.emplace(std::make_pair(1L, 0L), Rational(1));
    sq_add(diff, 0, 1, Rational(-1));
    sum.emplace(std::make_pair(1L, 0L), Rational(1));
    sq_add(sum, 0, 1, Rational(1));
    for (long t = 0; t < i; ++t) acc = sq_mul(acc, diff);
    for (long t = 0; t < m; ++t) acc = sq_mul(acc, sum);
    return acc;
}

// polynomial in rho^2 = x^2 + y^2 from degree-indexed coefficients
SqPoly sq_from_radial(const ExactPolynomial& poly) {
    SqPoly acc;
    for (long r = 0; r <= poly.degree(); ++r) {
        if (poly.coeff(static_cast<std::size_t>(r)) == 0) continue;
        SqPoly pw = sq_diff_sum_powers(0, r);
        for (const auto& [k, c] : pw)
            sq_add(acc, k.first, k.second, c * poly.coeff(static_cast<std::size_t>(r)));
    }
    return acc;
}

Series assemble(const SqPoly& poly, long px, long py, AxisProfile ax, AxisProfile ay) {
    Series out = Series::zero(ax, ay);
    for (const auto& [k, c] : poly)
        out += Series::monomial(px + 2 * k.first, py + 2 * k.second, ax, ay, c);
    return out;
}

struct AxisFactor {
    long prefix = 0;          // power of the bare coordinate
    ExactPolynomial poly;     // in (arg_scale * x^2)
    Rational arg_scale = Rational(1);
};

AxisFactor cartesian_axis_factor(const AxisParams& p, long n, int s) {
    long th = theta(s);
    Rational alpha = p.nu(s) + th - Rational(1, 2);
    return {2 * p.k(s) + th, laguerre(static_cast<unsigned>(n), alpha), Rational(1)};
}

Series product_state(const AxisFactor& fx, const AxisFactor& fy, AxisProfile ax,
                     AxisProfile ay) {
    Series out = Series::zero(ax, ay);
    Rational sx(1);
    for (long i = 0; i <= fx.poly.degree(); ++i) {
        const Rational cx = fx.poly.coeff(static_cast<std::size_t>(i)) * sx;
        sx *= fx.arg_scale;
        if (cx == 0) continue;
        Rational sy(1);
        for (long j = 0; j <= fy.poly.degree(); ++j) {
            const Rational cy = fy.poly.coeff(static_cast<std::size_t>(j)) * sy;
            sy *= fy.arg_scale;
            if (cy == 0) continue;
            out += Series::monomial(fx.prefix + 2 * i, fy.prefix + 2 * j, ax, ay, cx * cy);
        }
    }
    return out;
}

} // namespace

Rational energy_1d(const AxisParams& p, long n, int s) {
    return 2 * Rational(n) + p.nu(s) + theta(s) + Rational(1, 2);
}

Rational energy_singular_2d(const ModelParams& p, long nx, long ny, Sector sec) {
    return energy_1d(p.x, nx, sec.sx) + energy_1d(p.y, ny, sec.sy);
}

Rational energy_aniso_x(const Rational& mu_x, long nx) {
    return 2 * Rational(nx) + 2 * mu_x + 1;
}

Rational energy_anisotropic(const ModelParams& p, long nx, long ny, int sy) {
    return 2 * Rational(nx + ny) + 2 * p.x.mu + p.y.nu(sy) + theta(sy) + Rational(3, 2);
}

Rational energy_polar(const ModelParams& p, long twice_n, long ell, Sector sec) {
    return Rational(twice_n) + 2 * Rational(ell) + p.x.nu(sec.sx) + p.y.nu(sec.sy) + 1;
}

std::vector<EnergyLevel> spectrum_singular_2d(const ModelParams& p, const Rational& emax) {
    p.validate_singular();
    std::vector<EnergyLevel> out;
    for (int sx : {+1, -1}) {
        for (int sy : {+1, -1}) {
            Sector sec{sx, sy};
            Rational base = energy_singular_2d(p, 0, 0, sec);
            for (long nx = 0;; ++nx) {
                if (energy_singular_2d(p, nx, 0, sec) > emax) break;
                for (long ny = 0;; ++ny) {
                    Rational e = energy_singular_2d(p, nx, ny, sec);
                    if (e > emax) break;
                    out.push_back({e, nx, ny, sec});
                }
            }
            (void)base;
        }
    }
    std::sort(out.begin(), out.end(), [](const EnergyLevel& a, const EnergyLevel& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.sector.sx != b.sector.sx) return a.sector.sx > b.sector.sx;
        if (a.sector.sy != b.sector.sy) return a.sector.sy > b.sector.sy;
        if (a.n1 != b.n1) return a.n1 < b.n1;
        return a.n2 < b.n2;
    });
    return out;
}

std::vector<EnergyLevel> spectrum_anisotropic(const ModelParams& p, const Rational& emax) {
    p.validate_anisotropic();
    std::vector<EnergyLevel> out;
    for (int sy : {+1, -1}) {
        for (long nx = 0;; ++nx) {
            if (energy_anisotropic(p, nx, 0, sy) > emax) break;
            for (long ny = 0;; ++ny) {
                Rational e = energy_anisotropic(p, nx, ny, sy);
                if (e > emax) break;
                out.push_back({e, nx, ny, Sector{(nx % 2 == 0) ? 1 : -1, sy}});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const EnergyLevel& a, const EnergyLevel& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.sector.sy != b.sector.sy) return a.sector.sy > b.sector.sy;
        if (a.n1 != b.n1) return a.n1 < b.n1;
        return a.n2 < b.n2;
    });
    return out;
}

Rational separation_m2(const ModelParams& p, long twice_n, Sector sec) {
    Rational t = Rational(twice_n) / 2 + p.x.k(sec.sx) + p.y.k(sec.sy);
    return 4 * t * (t + p.x.mu + p.y.mu);
}

Rational k2_eigenvalue(const ModelParams& p, long twice_n, Sector sec) {
    Rational m2 = separation_m2(p, twice_n, sec);
    return -m2 + p.x.alpha() + p.y.alpha() + p.x.beta() * sec.sx + p.y.beta() * sec.sy -
           2 * p.x.mu * p.y.mu * (1 - Rational(sec.sx) * sec.sy) - Rational(1, 2);
}

Rational k1_eigenvalue(const ModelParams& p, long nx, long ny, Sector sec) {
    return energy_1d(p.x, nx, sec.sx) - energy_1d(p.y, ny, sec.sy);
}

Series cartesian_eigenfunction(const ModelParams& p, long nx, long ny, Sector sec) {
    p.validate_singular();
    if (nx < 0 || ny < 0) throw Error("quantum numbers must be nonnegative");
    AxisProfile ax{p.x.mu, Rational(1)};
    AxisProfile ay{p.y.mu, Rational(1)};
    return product_state(cartesian_axis_factor(p.x, nx, sec.sx),
                         cartesian_axis_factor(p.y, ny, sec.sy), ax, ay);
}

Series polar_eigenfunction(const ModelParams& p, long twice_n, long ell, Sector sec) {
    p.validate_singular();
    if (ell < 0) throw Error("ell must be nonnegative");
    long th_sum = theta(sec.sx) + theta(sec.sy);
    if (((twice_n % 2) + 2) % 2 != th_sum % 2)
        throw ParityError("angular label " + std::to_string(twice_n) +
                          "/2 inconsistent with sector " + sec.str());
    long j2 = twice_n - th_sum;
    if (j2 < 0)
        throw ParityError("angular label " + std::to_string(twice_n) + "/2 below sector minimum");
    long j = j2 / 2;

    Rational bx = p.x.nu(sec.sx) + theta(sec.sx) - Rational(1, 2);
    Rational by = p.y.nu(sec.sy) + theta(sec.sy) - Rational(1, 2);
    ExactPolynomial jac = jacobi(static_cast<unsigned>(j), by, bx);

    // rho^{2j} P_j((x^2-y^2)/rho^2) = sum_i jac_i (x^2-y^2)^i (x^2+y^2)^{j-i}
    SqPoly angular;
    for (long i = 0; i <= jac.degree(); ++i) {
        if (jac.coeff(static_cast<std::size_t>(i)) == 0) continue;
        SqPoly pw = sq_diff_sum_powers(i, j - i);
        for (const auto& [k, c] : pw)
            sq_add(angular, k.first, k.second, c * jac.coeff(static_cast<std::size_t>(i)));
    }

    Rational c_rad = Rational(twice_n) + 2 * p.x.k(sec.sx) + 2 * p.y.k(sec.sy) + p.x.mu + p.y.mu;
    SqPoly radial = sq_from_radial(laguerre(static_cast<unsigned>(ell), c_rad));

    SqPoly full = sq_mul(angular, radial);
    AxisProfile ax{p.x.mu, Rational(1)};
    AxisProfile ay{p.y.mu, Rational(1)};
    return assemble(full, 2 * p.x.k(sec.sx) + theta(sec.sx), 2 * p.y.k(sec.sy) + theta(sec.sy),
                    ax, ay);
}

Series anisotropic_eigenfunction(const ModelParams& p, long nx, long ny, int sy) {
    p.validate_anisotropic();
    if (nx < 0 || ny < 0) throw Error("quantum numbers must be nonnegative");
    long mx = nx / 2;
    long px = nx % 2;
    AxisFactor fx{px, laguerre(static_cast<unsigned>(mx), p.x.mu + px - Rational(1, 2)),
                  Rational(2)};
    AxisProfile ax{p.x.mu, Rational(2)};
    AxisProfile ay{p.y.mu, Rational(1)};
    return product_state(fx, cartesian_axis_factor(p.y, ny, sy), ax, ay);
}

Series equidistant_eigenfunction(const Rational& mu_x, long k_x, const Rational& mu_y,
                                 long k_y, long nx, long ny) {
    ModelParams p{{mu_x, k_x, k_x}, {mu_y, k_y, k_y}};
    Sector sec{nx % 2 == 0 ? 1 : -1, ny % 2 == 0 ? 1 : -1};
    return cartesian_eigenfunction(p, nx / 2, ny / 2, sec);
}

GammaProduct norm_squared(const Series& state) {
    if (!state.normalizable())
        throw DivergentMoment("state is not normalizable", 0, 0);
    return inner_product(state, state);
}

GammaProduct claimed_norm2_cartesian(const ModelParams& p, long nx, long ny, Sector sec) {
    Rational coeff = 1 / (factorial(static_cast<unsigned long>(nx)) *
                          factorial(static_cast<unsigned long>(ny)));
    return GammaProduct::term(coeff, Rational(0),
                              Rational(nx) + p.x.nu(sec.sx) + theta(sec.sx) + Rational(1, 2),
                              Rational(ny) + p.y.nu(sec.sy) + theta(sec.sy) + Rational(1, 2));
}

GammaProduct claimed_norm2_polar(const ModelParams& p, long twice_n, long ell, Sector sec) {
    long th_sum = theta(sec.sx) + theta(sec.sy);
    long j = (twice_n - th_sum) / 2;
    Rational n_half = Rational(twice_n) / 2;
    Rational nu_sum = p.x.nu(sec.sx) + p.y.nu(sec.sy);
    Rational bx = p.x.nu(sec.sx) + theta(sec.sx) - Rational(1, 2);
    Rational by = p.y.nu(sec.sy) + theta(sec.sy) - Rational(1, 2);
    Rational A = n_half + nu_sum + Rational(th_sum) / 2;
    Rational coeff = pochhammer(A, static_cast<unsigned long>(ell + j + 1)) /
                     ((Rational(twice_n) + nu_sum) * factorial(static_cast<unsigned long>(j)) *
                      factorial(static_cast<unsigned long>(ell)));
    return GammaProduct::term(coeff, Rational(0), Rational(j) + bx + 1, Rational(j) + by + 1);
}

GammaProduct claimed_norm2_anisotropic(const ModelParams& p, long nx, long ny, int sy) {
    long mx = nx / 2;
    long px = nx % 2;
    Rational coeff = 1 / (factorial(static_cast<unsigned long>(mx)) *
                          factorial(static_cast<unsigned long>(ny)));
    Rational e2 = -Rational(px) - p.x.mu - Rational(1, 2);
    return GammaProduct::term(coeff, e2,
                              Rational(2 * mx + px) + p.x.mu + Rational(1, 2),
                              Rational(ny) + p.y.nu(sy) + theta(sy) + Rational(1, 2));
}

} // namespace dunkl
