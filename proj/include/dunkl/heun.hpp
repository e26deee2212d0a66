#ifndef DUNKL_HEUN_HPP
#define DUNKL_HEUN_HPP

#include <vector>

#include "dunkl/params.hpp"
#include "dunkl/series.hpp"

namespace dunkl {

/// Biconfluent Heun parameters; series coefficients start from c0 = 1 with
/// c1 = (alpha beta + beta + delta)/(2 alpha + 2).
struct HeunParams {
    double alpha;
    double beta;
    double gamma;
    double delta;
};

/// Series coefficients c_0..c_{n_max} from the two-step recurrence
///   (m+1)(m+1+alpha) c_{m+1} = (beta m + (alpha beta + beta + delta)/2) c_m
///                              + (2(m-1) + alpha + 2 - gamma) c_{m-1}.
/// Requires alpha != -1 (and alpha not a negative integer below -1).
std::vector<double> heun_coeffs(const HeunParams& hp, std::size_t n_max);

double heun_eval(const std::vector<double>& coeffs, double z);

/// Residual of the truncated series in the defining ODE at z (oracle hook):
/// z B'' + (1 + alpha - beta z - 2 z^2) B'
///   + ((gamma - alpha - 2) z - (alpha beta + beta + delta)/2) B.
double heun_ode_residual(const HeunParams& hp, const std::vector<double>& coeffs, double z);

/// Radial problem of the parabolic separation for the mu_x = 0 anisotropic
/// model:  U'' + (2 mu / u) U' + (2 E u^2 - sigma/u^2 - u^6 - Lambda) U = 0
/// with U ~ u^s at 0, s = 2k^s + theta_s and sigma = s (s + 2 mu - 1).
struct ShootingProblem {
    Rational energy_exact;
    double energy = 0.0;
    double mu = 0.0;
    long s_exp = 0;
    double sigma = 0.0;
    int sector = +1;
    int expected_roots = 1;
};

/// Problem for one sector and one level index N (E = E_base + 2N, level
/// degeneracy N+1).
ShootingProblem make_shooting_problem(const ModelParams& p, int sy, long level_index);

struct ShootConfig {
    double eps = 1e-4;
    double L = 6.0;
    double h = 2e-4;          // fixed RK4 step
    double bracket_factor = 4.0;  // bracket = [-4E, 4E]
    int panels = 256;
    double bisect_tol = 1e-12;
};

/// Dense forward solution sampled at every step; cubic Hermite interpolation
/// between nodes.
class Trajectory {
public:
    Trajectory(double u0, double h, std::vector<double> u_values,
               std::vector<double> du_values)
        : u0_(u0), h_(h), U_(std::move(u_values)), dU_(std::move(du_values)) {}
    double at(double u) const;
    double deriv_at(double u) const;
    double front_u() const { return u0_; }
    double back_u() const { return u0_ + h_ * static_cast<double>(U_.size() - 1); }
    double back_value() const { return U_.back(); }
    double back_deriv() const { return dU_.back(); }

private:
    double u0_;
    double h_;
    std::vector<double> U_, dU_;
};

/// Integrates the radial equation from eps (two-term Frobenius start) to
/// u_end with classical fixed-step RK4.
Trajectory integrate_radial(const ShootingProblem& pr, double lambda, const ShootConfig& cfg,
                            double u_end, double h_override = 0.0);

/// All separation constants in the bracket: panel scan for sign changes of
/// the growth functional U'(L) + L^3 U(L), then bisection.  The count must
/// equal the level degeneracy; the bracket is widened once on mismatch and
/// BracketExhausted is thrown if the count still differs.
std::vector<double> shoot_lambda(const ShootingProblem& pr, const ShootConfig& cfg);

struct ResidualGrid {
    double xmin = -1.5, xmax = 1.5;
    double ymin = 0.3, ymax = 1.9;
    double h = 0.05;
};

/// Max grid residual |(H - E) Psi| / max|Psi| for Psi(u,v) = U_{lu}(u) V_{lv}(v),
/// V the same radial solution at lv, applied by fourth-order finite
/// differences on the Cartesian grid (parity handles the reflection term).
/// The matched pair is lv = -lu; perturbing lu breaks the pair and the
/// residual grows linearly in the perturbation.
double parabolic_residual(const ShootingProblem& pr, double lambda_u, double lambda_v,
                          const ShootConfig& cfg, const ResidualGrid& grid);

/// Max relative deviation between the parabolic reconstruction at a root and
/// an exact Cartesian-basis state, after matching scales at the largest
/// sample (grid restricted to the state's definite y-parity half-plane).
double grid_relative_diff(const ShootingProblem& pr, double lambda, const Series& state,
                          const ShootConfig& cfg, const ResidualGrid& grid);

/// Sorted-pairing report of shooting roots against F1 eigenvalues.
struct LambdaF1Report {
    struct Level {
        double energy;
        std::vector<double> lambda;  // ascending
        std::vector<double> f1;      // ascending
    };
    std::vector<Level> levels;
    double a = 0.0;              // fitted lambda ~ a * f1 + b
    double b = 0.0;
    double fit_residual = 0.0;   // max |lambda - (a f1 + b)| over the fit set
    double heldout_error = 0.0;  // same on the held-out (last) level
};
LambdaF1Report lambda_vs_f1(const std::vector<LambdaF1Report::Level>& levels);

} // namespace dunkl

#endif
