#include "dunkl/exact_linalg.hpp"

#include "dunkl/errors.hpp"

namespace dunkl {

std::optional<std::vector<Rational>> solve_exact(RatMatrix A, std::vector<Rational> b) {
    const std::size_t n = A.size();
    const std::size_t m = n ? A[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        std::size_t pr = row;
        while (pr < n && A[pr][col] == 0) ++pr;
        if (pr == n) continue;
        std::swap(A[pr], A[row]);
        std::swap(b[pr], b[row]);
        const Rational inv = 1 / A[row][col];
        for (std::size_t j = col; j < m; ++j) A[row][j] *= inv;
        b[row] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || A[r][col] == 0) continue;
            const Rational f = A[r][col];
            for (std::size_t j = col; j < m; ++j) A[r][j] -= f * A[row][j];
            b[r] -= f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < n; ++r)
        if (b[r] != 0) return std::nullopt;
    std::vector<Rational> x(m, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

ExactLDLT ldlt_exact(const RatMatrix& G) {
    const std::size_t n = G.size();
    RatMatrix L(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> D(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) L[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
        Rational d = G[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= L[j][k] * L[j][k] * D[k];
        if (sgn(d) <= 0)
            throw LinearAlgebraError("Gram matrix is not positive definite");
        D[j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rational v = G[i][j];
            for (std::size_t k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * D[k];
            L[i][j] = v / d;
        }
    }
    return {std::move(L), std::move(D)};
}

} // namespace dunkl
