#ifndef DUNKL_EXACT_LINALG_HPP
#define DUNKL_EXACT_LINALG_HPP

#include <optional>
#include <vector>

#include "dunkl/rational.hpp"

namespace dunkl {

using RatMatrix = std::vector<std::vector<Rational>>;

/// Solves A x = b exactly (A is n x m, possibly overdetermined).  Returns
/// nullopt when the system is inconsistent; free variables, if any, are set
/// to zero.
std::optional<std::vector<Rational>> solve_exact(RatMatrix A, std::vector<Rational> b);

/// Exact LDL^T factorization of a symmetric positive-definite matrix:
/// G = L D L^T with unit lower-triangular L.  Throws LinearAlgebraError
/// when a pivot fails to be positive.
struct ExactLDLT {
    RatMatrix L;
    std::vector<Rational> D;
};
ExactLDLT ldlt_exact(const RatMatrix& G);

} // namespace dunkl

#endif
