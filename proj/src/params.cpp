#include "dunkl/params.hpp"

#include <sstream>

#include "dunkl/errors.hpp"

namespace dunkl {

void AxisParams::validate(const std::string& axis_name) const {
    if (sgn(nu_plus() + Rational(1, 2)) <= 0) {
        std::ostringstream os;
        os << "condition nu" << axis_name << "^+ + 1/2 > 0 violated: nu^+ = "
           << to_string(nu_plus()) << " (mu=" << to_string(mu) << ", k+=" << k_plus << ")";
        throw ConditionViolation(os.str());
    }
    if (sgn(nu_minus() + Rational(3, 2)) <= 0) {
        std::ostringstream os;
        os << "condition nu" << axis_name << "^- + 3/2 > 0 violated: nu^- = "
           << to_string(nu_minus()) << " (mu=" << to_string(mu) << ", k-=" << k_minus << ")";
        throw ConditionViolation(os.str());
    }
}

void ModelParams::validate_singular() const {
    x.validate("_x");
    y.validate("_y");
}

void ModelParams::validate_anisotropic() const {
    if (x.mu <= Rational(-1, 2))
        throw ConditionViolation("condition mu_x + 1/2 > 0 violated: mu_x = " + to_string(x.mu));
    y.validate("_y");
}

void ModelParams::validate_case_one() const {
    if (x.mu != 0)
        throw ConditionViolation("case I requires mu_x = 0, got " + to_string(x.mu));
    y.validate("_y");
}

std::string ModelParams::describe() const {
    std::ostringstream os;
    os << "mu_x=" << to_string(x.mu) << " k_x=(" << x.k_plus << "," << x.k_minus << ")"
       << " mu_y=" << to_string(y.mu) << " k_y=(" << y.k_plus << "," << y.k_minus << ")";
    return os.str();
}

} // namespace dunkl
