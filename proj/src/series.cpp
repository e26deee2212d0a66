#include "dunkl/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {
constexpr std::uint64_t kOffset = 1ull << 31;

double ipow(double x, long e) {
    if (e < 0) return 1.0 / ipow(x, -e);
    double acc = 1.0, base = x;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}
} // namespace

std::uint64_t Series::pack(long p, long q) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p + kOffset)) << 32) |
           static_cast<std::uint32_t>(q + kOffset);
}

std::pair<long, long> Series::unpack(std::uint64_t key) {
    long p = static_cast<long>(key >> 32) - static_cast<long>(kOffset);
    long q = static_cast<long>(key & 0xffffffffull) - static_cast<long>(kOffset);
    return {p, q};
}

void Series::check_profiles(const Series& o) const {
    if (px_ != o.px_ || py_ != o.py_)
        throw ProfileMismatch("series profiles differ");
}

Series Series::monomial(long p, long q, AxisProfile px, AxisProfile py, Rational coeff) {
    Series s(px, py);
    if (coeff != 0) s.terms_.emplace_back(pack(p, q), std::move(coeff));
    return s;
}

void Series::for_each(const std::function<void(long, long, const Rational&)>& f) const {
    for (const auto& [k, c] : terms_) {
        auto [p, q] = unpack(k);
        f(p, q, c);
    }
}

Rational Series::coeff(long p, long q) const {
    std::uint64_t key = pack(p, q);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const auto& t, std::uint64_t k) { return t.first < k; });
    if (it != terms_.end() && it->first == key) return it->second;
    return Rational(0);
}

void Series::add_scaled(const Rational& s, const Series& o) {
    check_profiles(o);
    if (s == 0 || o.terms_.empty()) return;
    std::vector<std::pair<std::uint64_t, Rational>> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
        if (a->first < b->first) {
            merged.emplace_back(std::move(*a));
            ++a;
        } else if (b->first < a->first) {
            merged.emplace_back(b->first, s * b->second);
            ++b;
        } else {
            Rational c = a->second + s * b->second;
            if (c != 0) merged.emplace_back(a->first, std::move(c));
            ++a;
            ++b;
        }
    }
    for (; a != terms_.end(); ++a) merged.emplace_back(std::move(*a));
    for (; b != o.terms_.end(); ++b) merged.emplace_back(b->first, s * b->second);
    terms_ = std::move(merged);
}

Series& Series::operator+=(const Series& o) {
    add_scaled(Rational(1), o);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    add_scaled(Rational(-1), o);
    return *this;
}

Series operator*(const Rational& s, Series f) {
    if (s == 0) {
        f.terms_.clear();
        return f;
    }
    for (auto& [k, c] : f.terms_) c *= s;
    return f;
}

bool Series::operator==(const Series& o) const {
    check_profiles(o);
    return terms_ == o.terms_;
}

Series Series::shifted(long a, long b) const {
    Series out(px_, py_);
    out.terms_.reserve(terms_.size());
    for (const auto& [k, c] : terms_) {
        auto [p, q] = unpack(k);
        out.terms_.emplace_back(pack(p + a, q + b), c);
    }
    // shift preserves lexicographic order
    return out;
}

Series Series::derivative(Axis axis) const {
    Series out(px_, py_);
    const Rational& omega = (axis == Axis::X) ? px_.omega : py_.omega;
    Series down(px_, py_);
    Series up(px_, py_);
    for (const auto& [k, c] : terms_) {
        auto [p, q] = unpack(k);
        long e = (axis == Axis::X) ? p : q;
        if (e != 0) {
            std::uint64_t nk = (axis == Axis::X) ? pack(p - 1, q) : pack(p, q - 1);
            down.terms_.emplace_back(nk, e * c);
        }
        if (omega != 0) {
            std::uint64_t nk = (axis == Axis::X) ? pack(p + 1, q) : pack(p, q + 1);
            up.terms_.emplace_back(nk, -omega * c);
        }
    }
    out = std::move(down);
    out += up;
    return out;
}

Series Series::reflected(Axis axis) const {
    Series out(px_, py_);
    out.terms_.reserve(terms_.size());
    for (const auto& [k, c] : terms_) {
        auto [p, q] = unpack(k);
        long e = (axis == Axis::X) ? p : q;
        out.terms_.emplace_back(k, (((e % 2) + 2) % 2 == 0) ? c : -c);
    }
    return out;
}

std::optional<Sector> Series::sector() const {
    if (terms_.empty()) throw ZeroSeriesError("sector of zero series is undefined");
    auto [p0, q0] = unpack(terms_.front().first);
    int sx = (((p0 % 2) + 2) % 2 == 0) ? 1 : -1;
    int sy = (((q0 % 2) + 2) % 2 == 0) ? 1 : -1;
    for (const auto& [k, c] : terms_) {
        (void)c;
        auto [p, q] = unpack(k);
        int tx = (((p % 2) + 2) % 2 == 0) ? 1 : -1;
        int ty = (((q % 2) + 2) % 2 == 0) ? 1 : -1;
        if (tx != sx || ty != sy) return std::nullopt;
    }
    return Sector{sx, sy};
}

bool Series::normalizable() const {
    if (sgn(px_.omega) <= 0 || sgn(py_.omega) <= 0) return false;
    for (const auto& [k, c] : terms_) {
        (void)c;
        auto [p, q] = unpack(k);
        if (Rational(p) + 2 * px_.mu <= -1) return false;
        if (Rational(q) + 2 * py_.mu <= -1) return false;
    }
    return true;
}

double Series::evaluate(double x, double y) const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_) {
        auto [p, q] = unpack(k);
        if ((p < 0 && x == 0.0) || (q < 0 && y == 0.0))
            throw SingularEvaluation("evaluation at a singular point");
        acc += to_double(c) * ipow(x, p) * ipow(y, q);
    }
    double gx = to_double(px_.omega), gy = to_double(py_.omega);
    return acc * std::exp(-(gx * x * x + gy * y * y) / 2.0);
}

nlohmann::ordered_json Series::to_json() const {
    nlohmann::ordered_json j;
    j["profile_x"] = {{"mu", to_string(px_.mu)}, {"omega", to_string(px_.omega)}};
    j["profile_y"] = {{"mu", to_string(py_.mu)}, {"omega", to_string(py_.omega)}};
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms_) {
        auto [p, q] = unpack(k);
        terms.push_back({p, q, c.num().get_str(), c.den().get_str()});
    }
    j["terms"] = std::move(terms);
    return j;
}

Series Series::from_json(const nlohmann::json& j) {
    AxisProfile px{parse_rational(j.at("profile_x").at("mu").get<std::string>()),
                   parse_rational(j.at("profile_x").at("omega").get<std::string>())};
    AxisProfile py{parse_rational(j.at("profile_y").at("mu").get<std::string>()),
                   parse_rational(j.at("profile_y").at("omega").get<std::string>())};
    Series s(px, py);
    for (const auto& t : j.at("terms")) {
        Rational c = parse_rational(t.at(2).get<std::string>() + "/" +
                                    t.at(3).get<std::string>());
        s += Series::monomial(t.at(0).get<long>(), t.at(1).get<long>(), px, py, c);
    }
    return s;
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        auto [p, q] = unpack(k);
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")x^" << p << "y^" << q;
    }
    return os.str();
}

void SeriesBuilder::add_scaled(const Rational& s, const Series& o) {
    if (s == 0) return;
    for (const auto& [k, c] : o.terms_) items_.emplace_back(k, s * c);
}

Series SeriesBuilder::build(AxisProfile px, AxisProfile py) {
    Series out(px, py);
    if (items_.empty()) return out;
    std::sort(items_.begin(), items_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.terms_.reserve(items_.size());
    std::size_t i = 0;
    while (i < items_.size()) {
        std::uint64_t key = items_[i].first;
        Rational acc = std::move(items_[i].second);
        ++i;
        while (i < items_.size() && items_[i].first == key) {
            acc += items_[i].second;
            ++i;
        }
        if (acc != 0) out.terms_.emplace_back(key, std::move(acc));
    }
    items_.clear();
    return out;
}

GammaProduct inner_product(const Series& f, const Series& g) {
    if (f.px_ != g.px_ || f.py_ != g.py_)
        throw ProfileMismatch("inner product of series with different profiles");
    if (sgn(f.px_.omega) <= 0 || sgn(f.py_.omega) <= 0)
        throw Error("inner product requires positive Gaussian scale on both axes");
    // Collect combined-monomial coefficients first so each moment is
    // computed once per exponent pair.
    std::map<std::pair<long, long>, Rational> combined;
    f.for_each([&](long p, long q, const Rational& cf) {
        g.for_each([&](long r, long s, const Rational& cg) {
            auto key = std::make_pair(p + r, q + s);
            auto it = combined.find(key);
            if (it == combined.end())
                combined.emplace(key, cf * cg);
            else
                it->second += cf * cg;
        });
    });
    GammaProduct acc;
    for (const auto& [pq, c] : combined) {
        if (c == 0) continue;
        auto [p, q] = pq;
        if (((p % 2) + 2) % 2 == 1 || ((q % 2) + 2) % 2 == 1) continue;
        GammaValue mx, my;
        try {
            mx = gaussian_moment(p, f.px_.mu, f.px_.omega);
            my = gaussian_moment(q, f.py_.mu, f.py_.omega);
        } catch (const DivergentMoment&) {
            throw DivergentMoment("divergent inner-product term at exponents (" +
                                      std::to_string(p) + ", " + std::to_string(q) + ")",
                                  p, q);
        }
        acc += c * GammaProduct::product(mx, my);
    }
    return acc;
}

} // namespace dunkl
