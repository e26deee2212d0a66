#ifndef DUNKL_SERIES_HPP
#define DUNKL_SERIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dunkl/gamma.hpp"
#include "dunkl/rational.hpp"

#include "json.hpp"

namespace dunkl {

enum class Axis { X, Y };

/// Per-axis weight and Gaussian data: the measure is |x|^{2 mu} dx and the
/// series carries a factor exp(-omega x^2 / 2).  omega in {0, 1, 2} covers
/// every model in scope (0 = bare Laurent polynomials for probe sets).
struct AxisProfile {
    Rational mu;
    Rational omega;
    bool operator==(const AxisProfile& o) const { return mu == o.mu && omega == o.omega; }
    bool operator!=(const AxisProfile& o) const { return !(*this == o); }
};

/// Simultaneous reflection eigenvalues (s_x, s_y), each +1 or -1.
struct Sector {
    int sx = 1;
    int sy = 1;
    bool operator==(const Sector& o) const { return sx == o.sx && sy == o.sy; }
    std::string str() const {
        return std::string(sx > 0 ? "+" : "-") + (sy > 0 ? "+" : "-");
    }
};

/// Finite sum of c_{p,q} x^p y^q exp(-(wx x^2 + wy y^2)/2) with integer,
/// possibly negative, exponents.  The space is closed under every operator
/// in the catalog, so operator identities have exact zero residuals --
/// no truncation ever happens.
class Series {
public:
    Series(AxisProfile px, AxisProfile py) : px_(px), py_(py) {}

    static Series zero(AxisProfile px, AxisProfile py) { return Series(px, py); }
    static Series monomial(long p, long q, AxisProfile px, AxisProfile py,
                           Rational coeff = Rational(1));

    const AxisProfile& profile_x() const { return px_; }
    const AxisProfile& profile_y() const { return py_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Terms in lexicographic (p, q) order.
    void for_each(const std::function<void(long, long, const Rational&)>& f) const;
    Rational coeff(long p, long q) const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Rational& s, Series f);

    /// Adds s * o into this (single merge, the workhorse of operator
    /// application).
    void add_scaled(const Rational& s, const Series& o);

    bool operator==(const Series& o) const;
    bool operator!=(const Series& o) const { return !(*this == o); }

    /// x^a y^b * this.
    Series shifted(long a, long b) const;
    /// Plain partial derivative along an axis, differentiating the Gaussian
    /// factor exactly: d/dx [x^p e^{-w x^2/2}] = p x^{p-1} e - w x^{p+1} e.
    Series derivative(Axis axis) const;
    Series reflected(Axis axis) const;

    /// Definite parity sector, or nullopt for mixed parities.
    /// Throws ZeroSeriesError on the zero series.
    std::optional<Sector> sector() const;

    /// True when omega > 0 on both axes and every exponent satisfies the
    /// per-axis integrability bound p + 2 mu > -1.
    bool normalizable() const;

    /// Floating-point evaluation, Gaussian factors included.
    double evaluate(double x, double y) const;

    nlohmann::ordered_json to_json() const;
    static Series from_json(const nlohmann::json& j);

    std::string str() const;

private:
    static std::uint64_t pack(long p, long q);
    static std::pair<long, long> unpack(std::uint64_t key);
    void check_profiles(const Series& o) const;

    AxisProfile px_, py_;
    // sorted by packed key = lexicographic (p, q); no zero coefficients
    std::vector<std::pair<std::uint64_t, Rational>> terms_;

    friend GammaProduct inner_product(const Series& f, const Series& g);
    friend class SeriesBuilder;
};

/// Exact integral  f g |x|^{2 mu_x} |y|^{2 mu_y} dx dy  over the plane.
/// Profiles must match and both omegas must be positive; a divergent
/// combined monomial raises DivergentMoment with the offending exponents.
GammaProduct inner_product(const Series& f, const Series& g);

/// Batch accumulator for sums of many scaled series: contributions are
/// appended and coalesced once at build time, avoiding repeated merges.
class SeriesBuilder {
public:
    void add_scaled(const Rational& s, const Series& o);
    void add(const Series& o) { add_scaled(Rational(1), o); }
    Series build(AxisProfile px, AxisProfile py);
    bool empty() const { return items_.empty(); }

private:
    std::vector<std::pair<std::uint64_t, Rational>> items_;
};

} // namespace dunkl

#endif
