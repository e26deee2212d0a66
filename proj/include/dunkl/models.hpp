#ifndef DUNKL_MODELS_HPP
#define DUNKL_MODELS_HPP

#include <vector>

#include "dunkl/operators.hpp"
#include "dunkl/params.hpp"
#include "dunkl/series.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

/// One eigenstate entry of a spectrum listing.  For Cartesian bases the
/// quantum numbers are (n_x, n_y); polar states use (twice_n, ell) with the
/// angular label stored as twice its value so that the half-integer labels
/// of mixed-parity sectors stay integers.
struct EnergyLevel {
    Rational value;
    long n1 = 0;  // n_x, or twice_n
    long n2 = 0;  // n_y, or ell
    Sector sector;
};

// --- spectra -----------------------------------------------------------------

Rational energy_1d(const AxisParams& p, long n, int s);

Rational energy_singular_2d(const ModelParams& p, long nx, long ny, Sector sec);

/// E = 2(n_x+n_y) + 2 mu_x + nu_y^s + theta_s + 3/2.
Rational energy_anisotropic(const ModelParams& p, long nx, long ny, int sy);

/// Polar energy 2(n + ell) + nu_x + nu_y + 1 with n = twice_n / 2.
Rational energy_polar(const ModelParams& p, long twice_n, long ell, Sector sec);

/// All states with energy <= emax, sorted by energy then sector then (n1,n2).
std::vector<EnergyLevel> spectrum_singular_2d(const ModelParams& p, const Rational& emax);
std::vector<EnergyLevel> spectrum_anisotropic(const ModelParams& p, const Rational& emax);

// --- separation data ---------------------------------------------------------

/// m^2 = 4 (n + kx + ky)(n + kx + ky + mu_x + mu_y), sector-appropriate k's.
Rational separation_m2(const ModelParams& p, long twice_n, Sector sec);

/// K2 eigenvalue on the polar state:
/// -m^2 + alpha_x + alpha_y + beta_x s_x + beta_y s_y
///   - 2 mu_x mu_y (1 - s_x s_y) - 1/2.
Rational k2_eigenvalue(const ModelParams& p, long twice_n, Sector sec);

/// K1 = Hx - Hy eigenvalue on a Cartesian state.
Rational k1_eigenvalue(const ModelParams& p, long nx, long ny, Sector sec);

// --- eigenfunctions (unnormalized, exact) ------------------------------------

/// psi^s_n(x) has the x-factor x^{2k^s + theta_s} L_n^{(nu^s + theta_s - 1/2)}(x^2)
/// times e^{-x^2/2}; the 2D state is the product of the two axis factors.
Series cartesian_eigenfunction(const ModelParams& p, long nx, long ny, Sector sec);

/// Polar-separated state assembled in Cartesian monomials:
/// x^{2kx+theta_x} y^{2ky+theta_y} * [rho^{2j} P_j^{(b_y,b_x)}((x^2-y^2)/rho^2)]
/// * L_ell^{(c)}(rho^2) * e^{-rho^2/2},  j = (twice_n - theta_x - theta_y)/2,
/// c = twice_n + 2kx + 2ky + mu_x + mu_y.
/// Throws ParityError when twice_n is inconsistent with the sector.
Series polar_eigenfunction(const ModelParams& p, long twice_n, long ell, Sector sec);

/// x-factor x^{p} L_m^{(mu_x+p-1/2)}(2x^2) e^{-x^2} (profile omega = 2; the
/// dropped factor (sqrt2 x)^p / x^p is irrational for odd p and scale-free
/// for eigen-residuals), times the singular y-factor.
Series anisotropic_eigenfunction(const ModelParams& p, long nx, long ny, int sy);

/// Equidistant convenience constructor: k+ = k- = k on both axes, quantum
/// numbers n interleaving parities, energy (n_x+n_y) + nu_x + nu_y + 1.
Series equidistant_eigenfunction(const Rational& mu_x, long k_x, const Rational& mu_y,
                                 long k_y, long nx, long ny);

// --- norms -------------------------------------------------------------------

/// Exact squared norm <state, state>; requires a normalizable state.
GammaProduct norm_squared(const Series& state);

/// The exact value the squared norm must equal so that the closed-form
/// normalization constants square to its reciprocal.
GammaProduct claimed_norm2_cartesian(const ModelParams& p, long nx, long ny, Sector sec);
GammaProduct claimed_norm2_polar(const ModelParams& p, long twice_n, long ell, Sector sec);
GammaProduct claimed_norm2_anisotropic(const ModelParams& p, long nx, long ny, int sy);

/// Energy of the anisotropic 1D x factor, 2 n_x + 2 mu_x + 1.
Rational energy_aniso_x(const Rational& mu_x, long nx);

} // namespace dunkl

#endif
