#include "dunkl/heun.hpp"

#include <algorithm>
#include <cmath>

#include "dunkl/errors.hpp"
#include "dunkl/models.hpp"

namespace dunkl {

std::vector<double> heun_coeffs(const HeunParams& hp, std::size_t n_max) {
    if (hp.alpha == -1.0)
        throw Error("biconfluent series requires alpha != -1");
    std::vector<double> c(n_max + 1, 0.0);
    c[0] = 1.0;
    const double c1_num = hp.alpha * hp.beta + hp.beta + hp.delta;
    for (std::size_t m = 0; m + 1 <= n_max; ++m) {
        double dm = static_cast<double>(m);
        double denom = (dm + 1.0) * (dm + 1.0 + hp.alpha);
        if (denom == 0.0)
            throw Error("biconfluent recurrence pivot vanishes (alpha negative integer)");
        double t = (hp.beta * dm + 0.5 * c1_num) * c[m];
        if (m >= 1) t += (2.0 * (dm - 1.0) + hp.alpha + 2.0 - hp.gamma) * c[m - 1];
        c[m + 1] = t / denom;
    }
    return c;
}

double heun_eval(const std::vector<double>& coeffs, double z) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double heun_ode_residual(const HeunParams& hp, const std::vector<double>& coeffs, double z) {
    double B = 0.0, Bp = 0.0, Bpp = 0.0;
    for (std::size_t n = coeffs.size(); n-- > 0;) {
        double dn = static_cast<double>(n);
        B = B * z + coeffs[n];
        if (n >= 1) Bp = Bp * z + dn * coeffs[n];
        if (n >= 2) Bpp = Bpp * z + dn * (dn - 1.0) * coeffs[n];
    }
    return z * Bpp + (1.0 + hp.alpha - hp.beta * z - 2.0 * z * z) * Bp +
           ((hp.gamma - hp.alpha - 2.0) * z -
            0.5 * (hp.alpha * hp.beta + hp.beta + hp.delta)) *
               B;
}

ShootingProblem make_shooting_problem(const ModelParams& p, int sy, long level_index) {
    p.validate_case_one();
    ShootingProblem pr;
    pr.sector = sy;
    pr.energy_exact = energy_anisotropic(p, 0, 0, sy) + 2 * Rational(level_index);
    pr.energy = to_double(pr.energy_exact);
    pr.mu = to_double(p.y.mu);
    pr.s_exp = 2 * p.y.k(sy) + theta(sy);
    double s = static_cast<double>(pr.s_exp);
    pr.sigma = s * (s + 2.0 * pr.mu - 1.0);
    pr.expected_roots = static_cast<int>(level_index) + 1;
    return pr;
}

namespace {

struct Rhs {
    double mu, sigma, E, lambda;
    // y = (U, U'); returns (U', U'')
    inline void operator()(double u, double U, double V, double& dU, double& dV) const {
        dU = V;
        double u2 = u * u;
        dV = -(2.0 * mu / u) * V -
             (2.0 * E * u2 - sigma / u2 - u2 * u2 * u2 - lambda) * U;
    }
};

} // namespace

Trajectory integrate_radial(const ShootingProblem& pr, double lambda, const ShootConfig& cfg,
                            double u_end, double h_override) {
    const double h = h_override > 0.0 ? h_override : cfg.h;
    const double eps = cfg.eps;
    const Rhs rhs{pr.mu, pr.sigma, pr.energy, lambda};

    // two-term Frobenius start U = u^s (1 + a u^2)
    const double s = static_cast<double>(pr.s_exp);
    const double denom = (s + 2.0) * (s + 1.0 + 2.0 * pr.mu) - pr.sigma;
    const double a = lambda / denom;
    auto u_pow_s = [&](double u) {
        double acc = 1.0;
        for (long i = 0; i < pr.s_exp; ++i) acc *= u;
        return acc;
    };
    double U = u_pow_s(eps) * (1.0 + a * eps * eps);
    double V = pr.s_exp == 0
                   ? 2.0 * a * eps
                   : u_pow_s(eps) / eps * (s + (s + 2.0) * a * eps * eps);

    const std::size_t n = static_cast<std::size_t>(std::ceil((u_end - eps) / h));
    std::vector<double> us, vs;
    us.reserve(n + 1);
    vs.reserve(n + 1);
    us.push_back(U);
    vs.push_back(V);
    double u = eps;
    for (std::size_t i = 0; i < n; ++i) {
        double k1U, k1V, k2U, k2V, k3U, k3V, k4U, k4V;
        rhs(u, U, V, k1U, k1V);
        rhs(u + h / 2, U + h / 2 * k1U, V + h / 2 * k1V, k2U, k2V);
        rhs(u + h / 2, U + h / 2 * k2U, V + h / 2 * k2V, k3U, k3V);
        rhs(u + h, U + h * k3U, V + h * k3V, k4U, k4V);
        U += h / 6 * (k1U + 2 * k2U + 2 * k3U + k4U);
        V += h / 6 * (k1V + 2 * k2V + 2 * k3V + k4V);
        u += h;
        us.push_back(U);
        vs.push_back(V);
    }
    return Trajectory(eps, h, std::move(us), std::move(vs));
}

double Trajectory::at(double u) const {
    if (u < u0_ || u > back_u() + 1e-12)
        throw Error("trajectory sampled outside its range");
    double t = (u - u0_) / h_;
    std::size_t i = std::min(static_cast<std::size_t>(t), U_.size() - 2);
    double s = t - static_cast<double>(i);
    double u0 = U_[i], u1 = U_[i + 1];
    double m0 = dU_[i] * h_, m1 = dU_[i + 1] * h_;
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * u0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * u1 +
           (s3 - s2) * m1;
}

double Trajectory::deriv_at(double u) const {
    if (u < u0_ || u > back_u() + 1e-12)
        throw Error("trajectory sampled outside its range");
    double t = (u - u0_) / h_;
    std::size_t i = std::min(static_cast<std::size_t>(t), U_.size() - 2);
    double s = t - static_cast<double>(i);
    double u0 = U_[i], u1 = U_[i + 1];
    double m0 = dU_[i] * h_, m1 = dU_[i + 1] * h_;
    double s2 = s * s;
    return ((6 * s2 - 6 * s) * u0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * u1 +
            (3 * s2 - 2 * s) * m1) /
           h_;
}

namespace {

// Growth functional: positive multiple of the coefficient of the growing
// asymptotic mode.  Sign changes in lambda locate the decaying solutions.
double growth_indicator(const ShootingProblem& pr, double lambda, const ShootConfig& cfg,
                        double h_override = 0.0) {
    Trajectory t = integrate_radial(pr, lambda, cfg, cfg.L, h_override);
    double L3 = cfg.L * cfg.L * cfg.L;
    return t.back_deriv() + L3 * t.back_value();
}

double bisect_root(const ShootingProblem& pr, double lo, double hi, double glo,
                   const ShootConfig& cfg, double h_override = 0.0) {
    for (int it = 0; it < 200 && hi - lo > cfg.bisect_tol; ++it) {
        double mid = (lo + hi) / 2;
        double gm = growth_indicator(pr, mid, cfg, h_override);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

std::vector<double> scan_roots(const ShootingProblem& pr, double bracket,
                               const ShootConfig& cfg, double h_override = 0.0) {
    std::vector<double> roots;
    double prev_l = -bracket;
    double prev_g = growth_indicator(pr, prev_l, cfg, h_override);
    for (int i = 1; i <= cfg.panels; ++i) {
        double l = -bracket + 2.0 * bracket * static_cast<double>(i) /
                                  static_cast<double>(cfg.panels);
        double g = growth_indicator(pr, l, cfg, h_override);
        if ((g < 0) != (prev_g < 0))
            roots.push_back(bisect_root(pr, prev_l, l, prev_g, cfg, h_override));
        prev_l = l;
        prev_g = g;
    }
    return roots;
}

} // namespace

std::vector<double> shoot_lambda(const ShootingProblem& pr, const ShootConfig& cfg) {
    double bracket = cfg.bracket_factor * std::max(1.0, std::abs(pr.energy));
    std::vector<double> roots = scan_roots(pr, bracket, cfg);
    if (static_cast<int>(roots.size()) != pr.expected_roots) {
        // widen once, then give up honestly
        roots = scan_roots(pr, 2.0 * bracket, cfg);
        if (static_cast<int>(roots.size()) != pr.expected_roots)
            throw BracketExhausted("found " + std::to_string(roots.size()) +
                                   " separation constants, expected " +
                                   std::to_string(pr.expected_roots) + " at E = " +
                                   to_string(pr.energy_exact));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

struct Reconstruction {
    const ShootingProblem* pr;
    const Trajectory* U;
    const Trajectory* V;
    // u = sqrt(rho + x), v = y / u; y-parity of the sector extends V
    double value(double x, double y) const {
        double rho = std::hypot(x, y);
        double u = std::sqrt(rho + x);
        double v = std::abs(y) / u;
        double val = U->at(u) * V->at(v);
        if (pr->sector < 0 && y < 0) val = -val;
        return val;
    }
};

// fourth-order central stencils
double d2_4th(const std::array<double, 5>& f, double h) {
    return (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h);
}
double d1_4th(const std::array<double, 5>& f, double h) {
    return (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h);
}

} // namespace

double parabolic_residual(const ShootingProblem& pr, double lambda_u, double lambda_v,
                          const ShootConfig& cfg, const ResidualGrid& grid) {
    // reconstruction only needs u, v <= sqrt(rho_max + |x|_max)
    double rho_max = std::hypot(std::max(std::abs(grid.xmin), grid.xmax) + 2 * grid.h,
                                grid.ymax + 2 * grid.h);
    double u_end = std::sqrt(rho_max + std::max(std::abs(grid.xmin), grid.xmax) + 2 * grid.h) +
                   0.1;
    Trajectory U = integrate_radial(pr, lambda_u, cfg, u_end);
    Trajectory V = integrate_radial(pr, lambda_v, cfg, u_end);
    Reconstruction rec{&pr, &U, &V};

    const double E = pr.energy;
    const double mu = pr.mu;
    const double theta_odd = pr.sector < 0 ? 1.0 : 0.0;
    const double s = static_cast<double>(pr.s_exp);
    const double coupling = pr.sigma - theta_odd * 2.0 * mu;  // alpha + beta*s, via sigma
    (void)s;

    double h = grid.h;
    double max_res = 0.0, max_val = 0.0;
    for (double x = grid.xmin + 2 * h; x <= grid.xmax - 2 * h + 1e-12; x += h) {
        for (double y = grid.ymin + 2 * h; y <= grid.ymax - 2 * h + 1e-12; y += h) {
            std::array<double, 5> fx{}, fy{};
            for (int k = -2; k <= 2; ++k) {
                fx[static_cast<std::size_t>(k + 2)] = rec.value(x + k * h, y);
                fy[static_cast<std::size_t>(k + 2)] = rec.value(x, y + k * h);
            }
            double f = fx[2];
            double lap = d2_4th(fx, h) + d2_4th(fy, h);
            double dy1 = d1_4th(fy, h);
            double hclassical = -0.5 * (lap + (2.0 * mu / y) * dy1 -
                                        (2.0 * mu / (y * y)) * theta_odd * f) +
                                0.5 * (4.0 * x * x + y * y) * f +
                                coupling / (2.0 * y * y) * f;
            double res = hclassical - E * f;
            max_res = std::max(max_res, std::abs(res));
            max_val = std::max(max_val, std::abs(f));
        }
    }
    if (max_val == 0.0) throw Error("reconstructed wavefunction vanishes on the grid");
    return max_res / max_val;
}

double grid_relative_diff(const ShootingProblem& pr, double lambda, const Series& state,
                          const ShootConfig& cfg, const ResidualGrid& grid) {
    double rho_max = std::hypot(std::max(std::abs(grid.xmin), grid.xmax), grid.ymax);
    double u_end = std::sqrt(rho_max + std::max(std::abs(grid.xmin), grid.xmax)) + 0.1;
    Trajectory U = integrate_radial(pr, lambda, cfg, u_end);
    Trajectory V = integrate_radial(pr, -lambda, cfg, u_end);
    Reconstruction rec{&pr, &U, &V};

    // scale match at the largest |state| sample
    double ref_state = 0.0, ref_rec = 0.0;
    for (double x = grid.xmin; x <= grid.xmax + 1e-12; x += grid.h) {
        for (double y = grid.ymin; y <= grid.ymax + 1e-12; y += grid.h) {
            double sv = state.evaluate(x, y);
            if (std::abs(sv) > std::abs(ref_state)) {
                ref_state = sv;
                ref_rec = rec.value(x, y);
            }
        }
    }
    if (ref_rec == 0.0) throw Error("reconstruction vanishes at the reference point");
    double scale = ref_state / ref_rec;
    double max_diff = 0.0, max_abs = 0.0;
    for (double x = grid.xmin; x <= grid.xmax + 1e-12; x += grid.h)
        for (double y = grid.ymin; y <= grid.ymax + 1e-12; y += grid.h)
            max_abs = std::max(max_abs, std::abs(state.evaluate(x, y)));
    for (double x = grid.xmin; x <= grid.xmax + 1e-12; x += grid.h)
        for (double y = grid.ymin; y <= grid.ymax + 1e-12; y += grid.h)
            max_diff = std::max(
                max_diff, std::abs(state.evaluate(x, y) - scale * rec.value(x, y)));
    return max_diff / max_abs;
}

LambdaF1Report lambda_vs_f1(const std::vector<LambdaF1Report::Level>& levels) {
    LambdaF1Report rep;
    rep.levels = levels;
    if (levels.empty()) throw DimensionMismatch("no levels to pair");
    for (const auto& lv : levels)
        if (lv.lambda.size() != lv.f1.size())
            throw DimensionMismatch("pairing count differs from level degeneracy");
    // least-squares affine fit over all but the last level
    double sxx = 0, sx = 0, sxy = 0, sy = 0, n = 0;
    std::size_t fit_levels = levels.size() > 1 ? levels.size() - 1 : levels.size();
    for (std::size_t li = 0; li < fit_levels; ++li)
        for (std::size_t i = 0; i < levels[li].f1.size(); ++i) {
            double xf = levels[li].f1[i], yl = levels[li].lambda[i];
            sxx += xf * xf;
            sx += xf;
            sxy += xf * yl;
            sy += yl;
            n += 1;
        }
    double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12) {
        rep.a = 0;
        rep.b = sy / std::max(n, 1.0);
    } else {
        rep.a = (n * sxy - sx * sy) / det;
        rep.b = (sxx * sy - sx * sxy) / det;
    }
    for (std::size_t li = 0; li < levels.size(); ++li) {
        for (std::size_t i = 0; i < levels[li].f1.size(); ++i) {
            double err = std::abs(levels[li].lambda[i] - (rep.a * levels[li].f1[i] + rep.b));
            if (li < fit_levels)
                rep.fit_residual = std::max(rep.fit_residual, err);
            else
                rep.heldout_error = std::max(rep.heldout_error, err);
        }
    }
    return rep;
}

} // namespace dunkl
