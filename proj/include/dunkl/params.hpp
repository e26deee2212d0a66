#ifndef DUNKL_PARAMS_HPP
#define DUNKL_PARAMS_HPP

#include <string>

#include "dunkl/rational.hpp"

namespace dunkl {

/// One axis of a singular Dunkl oscillator: the Dunkl parameter mu and the
/// integers k^+, k^- quantizing the inverse-square couplings
///   alpha = 2k+(k+ + mu - 1/2) + 2k-(k- + mu + 1/2),
///   beta  = 2k+(k+ + mu - 1/2) - 2k-(k- + mu + 1/2).
struct AxisParams {
    Rational mu;
    long k_plus = 0;
    long k_minus = 0;

    Rational alpha() const {
        return 2 * plus_part() + 2 * minus_part();
    }
    Rational beta() const {
        return 2 * plus_part() - 2 * minus_part();
    }
    Rational nu(int s) const { return s > 0 ? nu_plus() : nu_minus(); }
    Rational nu_plus() const { return 2 * Rational(k_plus) + mu; }
    Rational nu_minus() const { return 2 * Rational(k_minus) + mu; }
    long k(int s) const { return s > 0 ? k_plus : k_minus; }

    bool admissible() const {
        return sgn(nu_plus() + Rational(1, 2)) > 0 && sgn(nu_minus() + Rational(3, 2)) > 0;
    }
    /// Throws ConditionViolation when nu+ + 1/2 <= 0 or nu- + 3/2 <= 0.
    void validate(const std::string& axis_name) const;

private:
    Rational plus_part() const { return Rational(k_plus) * (Rational(k_plus) + mu - Rational(1, 2)); }
    Rational minus_part() const { return Rational(k_minus) * (Rational(k_minus) + mu + Rational(1, 2)); }
};

inline long theta(int s) { return s > 0 ? 0 : 1; }

/// Full parameter tuple (mu_x, mu_y, kx+, kx-, ky+, ky-).
struct ModelParams {
    AxisParams x;
    AxisParams y;

    const AxisParams& axis(bool is_x) const { return is_x ? x : y; }

    /// Both axes admissible (singular 2D model).
    void validate_singular() const;
    /// y axis admissible and mu_x > -1/2 (2:1 anisotropic model).
    void validate_anisotropic() const;
    /// Case I: anisotropic with mu_x = 0 enforced.
    void validate_case_one() const;

    std::string describe() const;
};

} // namespace dunkl

#endif
