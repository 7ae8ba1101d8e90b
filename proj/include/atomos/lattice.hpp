#pragma once

/// Finitely generated submonoids of Z^d: bounded membership search with
/// certificates, coefficient bounds from strictly positive functionals,
/// conclusive atom oracles, exact 2D cone membership, the lexicographic
/// cone, Zaks generator truncations, and the product with N_0^k.

#include "atomos/exact.hpp"
#include "atomos/quadratic.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atomos {

struct LatticePoint {
    std::vector<BigInt> coords;

    LatticePoint() = default;
    explicit LatticePoint(std::vector<BigInt> c) : coords(std::move(c)) {}
    LatticePoint(std::initializer_list<long> c) {
        for (long v : c) coords.emplace_back(v);
    }

    std::size_t dim() const { return coords.size(); }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const BigInt& v) { return v == 0; });
    }

    LatticePoint operator+(const LatticePoint& o) const {
        LatticePoint r = *this;
        for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
        return r;
    }
    LatticePoint operator-(const LatticePoint& o) const {
        LatticePoint r = *this;
        for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
        return r;
    }
    LatticePoint operator-() const {
        LatticePoint r = *this;
        for (auto& v : r.coords) v = -v;
        return r;
    }
    friend LatticePoint operator*(const BigInt& c, const LatticePoint& p) {
        LatticePoint r = p;
        for (auto& v : r.coords) v *= c;
        return r;
    }
    bool operator==(const LatticePoint& o) const { return coords == o.coords; }
    bool operator!=(const LatticePoint& o) const { return coords != o.coords; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += coords[i].str();
        }
        return s + ")";
    }
};

struct LatticeMonoid {
    std::size_t dim = 0;
    std::vector<LatticePoint> generators;

    LatticeMonoid() = default;
    LatticeMonoid(std::size_t d, std::vector<LatticePoint> gens)
        : dim(d), generators(std::move(gens)) {
        for (const auto& g : generators) {
            if (g.dim() != dim) throw std::invalid_argument("LatticeMonoid: dimension mismatch");
            if (g.is_zero()) throw std::invalid_argument("LatticeMonoid: zero generator");
        }
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t j = i + 1; j < generators.size(); ++j)
                if (generators[i] == generators[j])
                    throw std::invalid_argument("LatticeMonoid: duplicate generator");
    }
};

/// Sum_i coeff[i] * generator[i] == target, re-checked on construction.
struct MembershipCertificate {
    LatticePoint target;
    std::map<std::size_t, BigInt> coefficients;  // generator index -> multiplicity, zeros omitted

    MembershipCertificate(const LatticeMonoid& monoid, LatticePoint t,
                          std::map<std::size_t, BigInt> coeffs)
        : target(std::move(t)), coefficients(std::move(coeffs)) {
        LatticePoint sum;
        sum.coords.assign(target.dim(), BigInt(0));
        for (const auto& [idx, c] : coefficients) {
            if (idx >= monoid.generators.size() || c < 0)
                throw std::invalid_argument("MembershipCertificate: bad coefficient entry");
            sum = sum + c * monoid.generators[idx];
        }
        if (sum != target)
            throw std::logic_error("MembershipCertificate: coefficients do not re-sum to target");
    }
};

/// Linear form with coefficients in Q(sqrt2), evaluated exactly.
struct LinearFunctional {
    std::vector<QuadRat> coeffs;

    QuadRat eval(const LatticePoint& p) const {
        if (p.dim() != coeffs.size())
            throw std::invalid_argument("LinearFunctional: dimension mismatch");
        QuadRat s;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            s += coeffs[i] * BigRational(p.coords[i]);
        return s;
    }

    /// Scaled projection onto the tangent direction: pi_u(x,y) = y - sqrt2*x.
    static LinearFunctional pi_u() { return {{QuadRat(0, -1), QuadRat(1, 0)}}; }
    /// Scaled projection onto the axis direction: pi_v(x,y) = x + sqrt2*y.
    static LinearFunctional pi_v() { return {{QuadRat(1, 0), QuadRat(0, 1)}}; }

    static LinearFunctional from_rationals(const std::vector<BigRational>& v) {
        LinearFunctional f;
        for (const auto& r : v) f.coeffs.emplace_back(r, 0);
        return f;
    }
    static LinearFunctional ones(std::size_t d) {
        return from_rationals(std::vector<BigRational>(d, BigRational(1)));
    }
};

// ---------------------------------------------------------------------------
// Exact 2D cone membership
// ---------------------------------------------------------------------------

namespace detail {

inline BigInt cross2(const LatticePoint& u, const LatticePoint& v) {
    return u.coords[0] * v.coords[1] - u.coords[1] * v.coords[0];
}
inline BigInt dot2(const LatticePoint& u, const LatticePoint& v) {
    return u.coords[0] * v.coords[0] + u.coords[1] * v.coords[1];
}
inline QuadRat cross2q(const LatticePoint& u, const std::pair<QuadRat, QuadRat>& w) {
    return w.second * BigRational(u.coords[0]) - w.first * BigRational(u.coords[1]);
}

inline LatticePoint primitive(const LatticePoint& p) {
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(p.coords[0]),
                                          boost::multiprecision::abs(p.coords[1]));
    LatticePoint r = p;
    r.coords[0] /= g;
    r.coords[1] /= g;
    return r;
}

// Counterclockwise angular order starting at the positive x-axis.
inline bool angle_less(const LatticePoint& u, const LatticePoint& v) {
    auto half = [](const LatticePoint& p) {
        return (p.coords[1] > 0 || (p.coords[1] == 0 && p.coords[0] > 0)) ? 0 : 1;
    };
    int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return cross2(u, v) > 0;
}

// Shape of cone(S) for finite S in Z^2, reduced to extreme rays.
struct Cone2 {
    enum class Kind { Zero, Ray, Line, Sector, HalfPlane, Plane } kind;
    LatticePoint lo, hi;  // Sector: from lo ccw to hi (< pi); HalfPlane: boundary ray lo; Ray/Line: lo

    template <class Point, class CrossFn, class SignFn, class DotFn>
    bool contains(const Point& w, CrossFn cross, SignFn sgn, DotFn dot) const {
        switch (kind) {
            case Kind::Zero: return false;  // caller handles w == 0
            case Kind::Ray: return sgn(cross(lo, w)) == 0 && sgn(dot(lo, w)) >= 0;
            case Kind::Line: return sgn(cross(lo, w)) == 0;
            case Kind::Sector: return sgn(cross(lo, w)) >= 0 && sgn(cross(hi, w)) <= 0;
            case Kind::HalfPlane: return sgn(cross(lo, w)) >= 0;
            case Kind::Plane: return true;
        }
        return false;
    }
};

inline Cone2 cone_shape_2d(const std::vector<LatticePoint>& gens) {
    std::vector<LatticePoint> dirs;
    for (const auto& g : gens) {
        if (g.dim() != 2) throw std::invalid_argument("cone_shape_2d: dimension must be 2");
        if (g.is_zero()) continue;
        LatticePoint d = primitive(g);
        if (std::find(dirs.begin(), dirs.end(), d) == dirs.end()) dirs.push_back(d);
    }
    if (dirs.empty()) return {Cone2::Kind::Zero, {}, {}};
    if (dirs.size() == 1) return {Cone2::Kind::Ray, dirs[0], {}};

    std::sort(dirs.begin(), dirs.end(), angle_less);
    const std::size_t m = dirs.size();
    if (m == 2 && dirs[0] == -dirs[1]) return {Cone2::Kind::Line, dirs[0], {}};

    // For distinct primitive directions a, b the ccw gap a -> b is > pi iff
    // cross(a, b) < 0 and == pi iff b == -a. The cyclic gaps sum to 2*pi, so
    // at most one gap can reach pi (the two-opposite-rays case is the Line
    // above). One gap > pi gives a pointed sector spanned by the bounding
    // rays; a gap of exactly pi gives a closed half-plane; otherwise the
    // cone is the whole plane.
    for (std::size_t i = 0; i < m; ++i) {
        const LatticePoint& a = dirs[i];
        const LatticePoint& b = dirs[(i + 1) % m];
        BigInt cr = cross2(a, b);
        if (cr < 0) return {Cone2::Kind::Sector, b, a};
        if (cr == 0) return {Cone2::Kind::HalfPlane, b, {}};
    }
    return {Cone2::Kind::Plane, {}, {}};
}

}  // namespace detail

/// Exact decision of w ∈ cone(S) for S ⊂ Z^2, lattice-point query.
inline bool cone_member_2d(const std::vector<LatticePoint>& gens, const LatticePoint& w) {
    if (w.dim() != 2) throw std::invalid_argument("cone_member_2d: dimension must be 2");
    if (w.is_zero()) return true;
    auto shape = detail::cone_shape_2d(gens);
    return shape.contains(
        w, [](const LatticePoint& u, const LatticePoint& v) { return detail::cross2(u, v); },
        [](const BigInt& v) { return sign(v); },
        [](const LatticePoint& u, const LatticePoint& v) { return detail::dot2(u, v); });
}

/// Same decision for a query point with coordinates in Q(sqrt2).
inline bool cone_member_2d(const std::vector<LatticePoint>& gens,
                           const std::pair<QuadRat, QuadRat>& w) {
    if (w.first.is_zero() && w.second.is_zero()) return true;
    auto shape = detail::cone_shape_2d(gens);
    return shape.contains(
        w,
        [](const LatticePoint& u, const std::pair<QuadRat, QuadRat>& v) {
            return detail::cross2q(u, v);
        },
        [](const QuadRat& v) { return quad_sign(v); },
        [](const LatticePoint& u, const std::pair<QuadRat, QuadRat>& v) {
            return v.first * BigRational(u.coords[0]) + v.second * BigRational(u.coords[1]);
        });
}

// ---------------------------------------------------------------------------
// Bounded membership search
// ---------------------------------------------------------------------------

struct MemberSearchResult {
    std::optional<MembershipCertificate> certificate;
    BigInt bound;  // the per-coefficient cap the search was conclusive for

    bool found() const { return certificate.has_value(); }
};

namespace detail {

struct MemberSearch {
    const LatticeMonoid& monoid;
    const BigInt& bound;
    const LinearFunctional* positivity;  // optional prune: strictly positive on all generators
    std::vector<std::size_t> order;      // generator indices, most constrained first
    std::vector<Cone2> suffix_cones;     // dim 2 only: cone of generators order[i..]
    std::map<std::size_t, BigInt> coeffs;

    bool dfs(std::size_t pos, const LatticePoint& residual) {
        if (residual.is_zero()) return true;
        const std::size_t remaining = order.size() - pos;
        if (remaining == 0) return false;
        if (positivity != nullptr && quad_sign(positivity->eval(residual)) < 0) return false;
        if (!suffix_cones.empty()) {
            const Cone2& cone = suffix_cones[pos];
            bool inside = cone.contains(
                residual,
                [](const LatticePoint& u, const LatticePoint& v) { return cross2(u, v); },
                [](const BigInt& v) { return sign(v); },
                [](const LatticePoint& u, const LatticePoint& v) { return dot2(u, v); });
            if (!inside) return false;
        }
        if (remaining == 1) return solve_single(order[pos], residual);
        if (remaining == 2) return solve_pair(order[pos], order[pos + 1], residual);

        const LatticePoint& g = monoid.generators[order[pos]];
        BigInt cap = bound;
        if (positivity != nullptr) {
            QuadRat ratio = positivity->eval(residual) / positivity->eval(g);
            BigInt byf = quad_floor(ratio);
            if (byf < cap) cap = byf;
        }
        for (BigInt c = 0; c <= cap; ++c) {
            if (c != 0) coeffs[order[pos]] = c;
            if (dfs(pos + 1, residual - c * g)) return true;
            coeffs.erase(order[pos]);
        }
        return false;
    }

    bool accept(std::size_t idx, const BigInt& c) {
        if (c < 0 || c > bound) return false;
        if (c != 0) coeffs[idx] = c;
        return true;
    }

    bool solve_single(std::size_t idx, const LatticePoint& r) {
        const LatticePoint& g = monoid.generators[idx];
        std::size_t piv = 0;
        while (piv < g.dim() && g.coords[piv] == 0) ++piv;
        if (piv == g.dim() || r.coords[piv] % g.coords[piv] != 0) return false;
        BigInt c = r.coords[piv] / g.coords[piv];
        if (c < 0 || c > bound) return false;
        return (c * g == r) && accept(idx, c);
    }

    bool solve_pair(std::size_t i1, std::size_t i2, const LatticePoint& r) {
        const LatticePoint& g1 = monoid.generators[i1];
        const LatticePoint& g2 = monoid.generators[i2];
        const std::size_t d = g1.dim();
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b) {
                BigInt det = g1.coords[a] * g2.coords[b] - g1.coords[b] * g2.coords[a];
                if (det == 0) continue;
                BigInt n1 = r.coords[a] * g2.coords[b] - r.coords[b] * g2.coords[a];
                BigInt n2 = g1.coords[a] * r.coords[b] - g1.coords[b] * r.coords[a];
                if (n1 % det != 0 || n2 % det != 0) return false;
                BigInt c1 = n1 / det, c2 = n2 / det;
                if (c1 < 0 || c1 > bound || c2 < 0 || c2 > bound) return false;
                if (c1 * g1 + c2 * g2 != r) return false;
                return accept(i1, c1) && accept(i2, c2);
            }
        // Collinear pair: sweep one coefficient, solve the other exactly.
        for (BigInt c2 = 0; c2 <= bound; ++c2) {
            if (solve_single(i1, r - c2 * g2)) {
                if (c2 != 0) coeffs[i2] = c2;
                return true;
            }
        }
        return false;
    }
};

}  // namespace detail

/// Exhaustive search for target = sum c_i g_i with 0 <= c_i <= bound,
/// pruned by exact linear constraints. A certificate is returned iff one
/// exists within the bound; the result is conclusive only relative to the
/// bound unless a positivity bound applies (see positive_bound). When a
/// strictly positive functional is supplied it is used only to prune.
inline MemberSearchResult member_bounded(const LatticeMonoid& monoid, const LatticePoint& target,
                                         const BigInt& bound,
                                         const LinearFunctional* positivity = nullptr) {
    if (target.dim() != monoid.dim)
        throw std::invalid_argument("member_bounded: dimension mismatch");
    if (bound < 0) throw std::invalid_argument("member_bounded: bound must be >= 0");

    detail::MemberSearch search{monoid, bound, positivity, {}, {}, {}};
    search.order.resize(monoid.generators.size());
    for (std::size_t i = 0; i < search.order.size(); ++i) search.order[i] = i;
    if (positivity != nullptr) {
        std::vector<QuadRat> values;
        values.reserve(search.order.size());
        for (const auto& g : monoid.generators) {
            values.push_back(positivity->eval(g));
            if (quad_sign(values.back()) <= 0)
                throw std::domain_error("member_bounded: positivity hint not positive on a generator");
        }
        std::stable_sort(search.order.begin(), search.order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return quad_cmp(values[a], values[b]) > 0;
                         });
    }
    if (monoid.dim == 2) {
        search.suffix_cones.resize(search.order.size() + 1);
        for (std::size_t i = 0; i <= search.order.size(); ++i) {
            std::vector<LatticePoint> rest;
            for (std::size_t j = i; j < search.order.size(); ++j)
                rest.push_back(monoid.generators[search.order[j]]);
            search.suffix_cones[i] = detail::cone_shape_2d(rest);
        }
    }

    MemberSearchResult result;
    result.bound = bound;
    if (search.dfs(0, target))
        result.certificate.emplace(monoid, target, std::move(search.coeffs));
    return result;
}

// ---------------------------------------------------------------------------
// Positivity bound and certified atoms
// ---------------------------------------------------------------------------

struct PositiveBound {
    bool unbounded = false;  // some generator has f <= 0
    BigInt bound;
};

/// Any representation of target has every coefficient at most
/// ceil(f(target) / min_i f(g_i)) when f is strictly positive on all
/// generators; with this cap, member_bounded is conclusive.
inline PositiveBound positive_bound(const LatticeMonoid& monoid, const LatticePoint& target,
                                    const LinearFunctional& functional) {
    if (monoid.generators.empty()) return {false, 0};
    std::optional<QuadRat> fmin;
    for (const auto& g : monoid.generators) {
        QuadRat v = functional.eval(g);
        if (quad_sign(v) <= 0) return {true, 0};
        if (!fmin || quad_cmp(v, *fmin) < 0) fmin = v;
    }
    QuadRat ft = functional.eval(target);
    if (quad_sign(ft) <= 0) return {false, 0};
    return {false, quad_ceil(ft / *fmin)};
}

struct AtomReport {
    std::size_t index = 0;
    LatticePoint generator;
    bool is_atom = false;
    std::optional<MembershipCertificate> certificate;  // witnesses non-atomness, over the full monoid
};

/// Decides, for each generator g, whether g lies in the monoid generated by
/// the remaining generators. Conclusive: the functional must be strictly
/// positive on every generator (throws std::domain_error otherwise), which
/// also makes the monoid reduced so "atom" is well defined.
inline std::vector<AtomReport> atoms_certified(const LatticeMonoid& monoid,
                                               const LinearFunctional& functional) {
    std::vector<AtomReport> reports;
    for (std::size_t i = 0; i < monoid.generators.size(); ++i) {
        std::vector<LatticePoint> others;
        for (std::size_t j = 0; j < monoid.generators.size(); ++j)
            if (j != i) others.push_back(monoid.generators[j]);

        AtomReport rep;
        rep.index = i;
        rep.generator = monoid.generators[i];
        if (others.empty()) {
            rep.is_atom = true;
            reports.push_back(std::move(rep));
            continue;
        }
        LatticeMonoid sub(monoid.dim, others);
        PositiveBound pb = positive_bound(sub, monoid.generators[i], functional);
        if (pb.unbounded)
            throw std::domain_error("atoms_certified: functional not strictly positive");
        MemberSearchResult res = member_bounded(sub, monoid.generators[i], pb.bound, &functional);
        rep.is_atom = !res.found();
        if (res.found()) {
            // Re-index the certificate against the full generator list.
            std::map<std::size_t, BigInt> remapped;
            for (const auto& [idx, c] : res.certificate->coefficients)
                remapped[idx < i ? idx : idx + 1] = c;
            rep.certificate.emplace(monoid, monoid.generators[i], std::move(remapped));
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Lexicographic cone
// ---------------------------------------------------------------------------

/// The nonnegative cone of Z^d under the lexicographic order (priority on
/// the first coordinate). Not finitely generated, so it is represented by
/// its membership predicate.
struct LexCone {
    std::size_t dim = 2;

    bool contains(const LatticePoint& p) const {
        if (p.dim() != dim) throw std::invalid_argument("LexCone: dimension mismatch");
        for (const auto& c : p.coords) {
            if (c > 0) return true;
            if (c < 0) return false;
        }
        return true;  // zero
    }

    /// The minimum of the positive cone, and the unique atom.
    LatticePoint atom() const {
        LatticePoint a;
        a.coords.assign(dim, BigInt(0));
        a.coords[dim - 1] = 1;
        return a;
    }

    /// (1, 0, ..., 0): lies in the cone but not in <atom>, so the monoid is
    /// not atomic.
    LatticePoint witness() const {
        LatticePoint w;
        w.coords.assign(dim, BigInt(0));
        w.coords[0] = 1;
        return w;
    }
};

struct LexConeReport {
    LexCone cone;
    LatticePoint atom;
    LatticePoint witness;
    bool atomic = false;
    std::string note;
};

inline LexConeReport lex_cone(std::size_t d) {
    if (d < 2) throw std::invalid_argument("lex_cone: d must be >= 2");
    LexCone cone{d};
    LexConeReport report{cone, cone.atom(), cone.witness(), false,
                         "unique atom generates only {0}^" + std::to_string(d - 1) +
                             " x N0, which misses the witness"};
    return report;
}

// ---------------------------------------------------------------------------
// Zaks truncation and products
// ---------------------------------------------------------------------------

/// Generators of the Zaks monoid restricted to indices 1..k, in Z^{3+k}:
/// three unit-like generators, e_{n+3} for n <= k, and
/// f_n = (-n, 1, 1, 0, ..., 0, -1, 0, ...) with the -1 in position n+3.
inline LatticeMonoid zaks_truncation(unsigned k) {
    if (k < 1) throw std::invalid_argument("zaks_truncation: k must be >= 1");
    const std::size_t d = 3 + k;
    std::vector<LatticePoint> gens;
    auto unit = [&](std::size_t pos) {
        LatticePoint p;
        p.coords.assign(d, BigInt(0));
        p.coords[pos] = 1;
        return p;
    };
    for (std::size_t i = 0; i < 3; ++i) gens.push_back(unit(i));
    for (unsigned n = 1; n <= k; ++n) gens.push_back(unit(2 + n));
    for (unsigned n = 1; n <= k; ++n) {
        LatticePoint f;
        f.coords.assign(d, BigInt(0));
        f.coords[0] = -static_cast<long>(n);
        f.coords[1] = 1;
        f.coords[2] = 1;
        f.coords[2 + n] = -1;
        gens.push_back(f);
    }
    return LatticeMonoid(d, std::move(gens));
}

/// M x N_0^extra: original generators padded with zeros plus the new unit
/// vectors. M embeds as a divisor-closed submonoid of the result.
inline LatticeMonoid product_with_n0(const LatticeMonoid& monoid, unsigned extra) {
    if (extra == 0) return monoid;
    const std::size_t d = monoid.dim + extra;
    std::vector<LatticePoint> gens;
    for (const auto& g : monoid.generators) {
        LatticePoint p = g;
        p.coords.resize(d, BigInt(0));
        gens.push_back(std::move(p));
    }
    for (unsigned i = 0; i < extra; ++i) {
        LatticePoint p;
        p.coords.assign(d, BigInt(0));
        p.coords[monoid.dim + i] = 1;
        gens.push_back(std::move(p));
    }
    return LatticeMonoid(d, std::move(gens));
}

}  // namespace atomos
