#ifndef DUNKL_VERIFY_HPP
#define DUNKL_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "dunkl/exact_linalg.hpp"
#include "dunkl/models.hpp"
#include "dunkl/operators.hpp"

#include "json.hpp"

namespace dunkl {

enum class ParityFilter { Any, Even, Odd };

/// Probe family for extensional operator equality: the full monomial grid of
/// a rectangular exponent window.  For an identity whose sides have
/// exponent-shift bandwidth <= w per axis, agreement on a window of side
/// >= 2w+2 per axis decides equality on the whole space: the per-shift
/// coefficient functions are parity-split polynomials of degree <= w, and
/// the window provides w+1 points per parity class per axis.
struct ProbeSet {
    AxisProfile px, py;
    long pmin, pmax, qmin, qmax;
    ParityFilter parity_x = ParityFilter::Any;
    ParityFilter parity_y = ParityFilter::Any;

    static ProbeSet for_bandwidth(long wx, long wy, AxisProfile px, AxisProfile py,
                                  long scale = 1);
    std::vector<std::pair<long, long>> exponents() const;
    long side_x() const { return pmax - pmin + 1; }
    long side_y() const { return qmax - qmin + 1; }
};

/// One asserted operator identity plus its exact outcome.
struct IdentityCheck {
    std::string name;
    LinearOperator lhs;
    LinearOperator rhs;
    /// Factor linking the engine's rescaled identity to the displayed one
    /// (1 when none of the generators carried an irrational scale).
    Rational rescale = Rational(1);
    std::string note;
    ParityFilter parity_x = ParityFilter::Any;
    ParityFilter parity_y = ParityFilter::Any;

    // results
    bool passed = false;
    long window_wx = 0, window_wy = 0;
    std::optional<Series> witness;  // first nonzero residual image on failure
    std::string witness_probe;
};

/// Inner-product-level property outcome (anti-Hermiticity and friends).
struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::string params;
    std::vector<IdentityCheck> checks;
    std::vector<PropertyResult> properties;
    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

/// Suites: su11, casimir, cubic, hahn, hahn_casimir (singular model);
/// slm12, F_algebra (anisotropic); T_algebra (case II).
/// window_scale > 1 enlarges every probe window (probe-sufficiency checks).
/// corrupt_first perturbs the first relation's left side (testing hook).
VerifyReport run_identity_suite(const std::string& suite, const ModelParams& p,
                                int workers = 1, long window_scale = 1,
                                bool corrupt_first = false);

std::vector<std::string> suites_for_model(const std::string& model);

/// Sector Casimir values: C restricted to even/odd probes, the full
/// operator-valued action of C, and the invariant Q, per axis.
VerifyReport casimir_sector_check(const ModelParams& p, int workers = 1);

/// Exact anti-Hermiticity of the Dunkl derivative over >= n_pairs probe
/// pairs: <D f, g> + <f, D g> = 0 under the |x|^{2mu} weight.
VerifyReport antihermiticity_check(const Rational& mu_x, const Rational& mu_y,
                                   std::size_t n_pairs = 50);

/// <Adag f, g> = <f, A g> on integrable probe pairs.
VerifyReport hermiticity_transfer_check(const AxisParams& p, std::size_t n_pairs = 20);

// --- degenerate levels --------------------------------------------------------

/// All Cartesian eigenfunctions of one model at an exact energy and sector,
/// with their exact Gram matrix.
struct DegenerateSpace {
    std::string model;  // "singular2d" | "aniso" | "caseI"
    Rational energy;
    Sector sector;
    std::vector<std::pair<long, long>> labels;  // (n_x, n_y), ordered by n_x
    std::vector<Series> basis;
    RatMatrix gram;
};

DegenerateSpace build_degenerate_space(const std::string& model, const ModelParams& p,
                                       const Rational& energy, Sector sector);

/// Exact matrix M of an operator on the space basis: op basis_j = sum_i
/// M_ij basis_i, solved monomial-by-monomial; throws LinearAlgebraError when
/// the image leaves the span.
RatMatrix operator_matrix_on_space(const LinearOperator& op, const DegenerateSpace& space);

/// K2 on a singular-2D level: the exact matrix must be tridiagonal (hard
/// failure otherwise); float eigenvalues and Gram-orthonormal eigenvectors
/// computed after an exact LDL^T orthonormalization.
struct LevelDiagonalization {
    RatMatrix matrix;                         // exact, in the Cartesian basis
    std::vector<double> eigenvalues;          // ascending
    std::vector<std::vector<double>> vectors; // columns, Gram-orthonormal
    std::vector<Rational> target_eigenvalues; // exact polar predictions (sorted)
};
LevelDiagonalization k2_on_level(const ModelParams& p, const DegenerateSpace& space);

/// F1 on a case-I (mu_x = 0 anisotropic) level; the exact matrix has zero
/// diagonal in the Cartesian basis (x-parity pairing), asserted when the
/// exact trace vanishes.
struct F1LevelData {
    RatMatrix matrix;
    std::vector<double> eigenvalues;  // ascending
    Rational trace;
};
F1LevelData f1_on_level(const ModelParams& p, const DegenerateSpace& space);

/// Exact membership of a state in the span of a level basis; returns the
/// exact coefficients when it lies inside.
std::optional<std::vector<Rational>> expand_in_basis(const Series& state,
                                                     const DegenerateSpace& space);

} // namespace dunkl

#endif
