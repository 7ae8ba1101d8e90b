#pragma once

/// Exact arithmetic in Q(sqrt2), sign determination against rational
/// multiples of sqrt3, and the continued-fraction convergents of sqrt2.
///
/// A QuadRat stores a + b*sqrt2 with rational a, b; the representation is
/// unique because sqrt2 is irrational, so equality is componentwise. Every
/// comparison reduces to integer square comparisons; no floating point is
/// involved anywhere.

#include "atomos/exact.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace atomos {

struct QuadRat {
    BigRational a;  // rational part
    BigRational b;  // coefficient of sqrt2

    QuadRat() = default;
    QuadRat(BigRational ra, BigRational rb) : a(std::move(ra)), b(std::move(rb)) {}
    explicit QuadRat(const BigRational& r) : a(r), b(0) {}
    explicit QuadRat(long n) : a(n), b(0) {}

    static QuadRat sqrt2() { return {0, 1}; }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    QuadRat operator-() const { return {-a, -b}; }
    QuadRat operator+(const QuadRat& o) const { return {a + o.a, b + o.b}; }
    QuadRat operator-(const QuadRat& o) const { return {a - o.a, b - o.b}; }
    QuadRat operator*(const QuadRat& o) const {
        return {a * o.a + 2 * b * o.b, a * o.b + b * o.a};
    }
    QuadRat operator*(const BigRational& r) const { return {a * r, b * r}; }
    QuadRat operator/(const QuadRat& o) const {
        // (a+b√2)(c−d√2) / (c²−2d²); the norm is nonzero for o != 0.
        BigRational n = o.a * o.a - 2 * o.b * o.b;
        if (n == 0) throw std::domain_error("QuadRat: division by zero");
        return {(a * o.a - 2 * b * o.b) / n, (b * o.a - a * o.b) / n};
    }
    QuadRat& operator+=(const QuadRat& o) { return *this = *this + o; }
    QuadRat& operator-=(const QuadRat& o) { return *this = *this - o; }

    bool operator==(const QuadRat& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QuadRat& o) const { return !(*this == o); }
};

/// Exact sign of a + b*sqrt2, by case analysis on the component signs and
/// one integer comparison of a^2 against 2 b^2.
inline int quad_sign(const QuadRat& x) {
    int sa = sign(x.a), sb = sign(x.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare |a| to |b|*sqrt2 via squares. Equality would
    // make sqrt2 rational, so it cannot occur for nonzero components.
    int sq = sign(x.a * x.a - 2 * x.b * x.b);
    if (sq == 0) throw std::logic_error("quad_sign: a^2 == 2b^2 with a,b != 0");
    return sa * sq;
}

inline QuadRat quad_abs(const QuadRat& x) { return quad_sign(x) < 0 ? -x : x; }

inline int quad_cmp(const QuadRat& x, const QuadRat& y) { return quad_sign(x - y); }

/// Exact sign of (a + b*sqrt2) - k*sqrt3. Returns 0 only when x = 0 and
/// k = 0: sqrt3 is not an element of Q(sqrt2), so the two sides can never
/// be equal otherwise.
inline int cmp_sqrt3(const QuadRat& x, const BigRational& k) {
    int sx = quad_sign(x), sk = sign(k);
    if (sx >= 0 && sk <= 0) return (sx == 0 && sk == 0) ? 0 : 1;
    if (sx <= 0 && sk >= 0) return -1;
    // Same strict sign on both sides: compare squares. x^2 stays in Q(sqrt2),
    // 3k^2 is rational; the difference cannot vanish (see above).
    QuadRat diff = x * x - QuadRat(3 * k * k);
    int sq = quad_sign(diff);
    if (sq == 0) throw std::logic_error("cmp_sqrt3: x^2 == 3k^2 with x,k != 0");
    return sx > 0 ? sq : -sq;
}

/// a + b*sqrt2 + c*sqrt3 with rational c. Just enough structure to carry the
/// thresholds of the lattice construction; the sign reduces to cmp_sqrt3.
struct QuadExt {
    QuadRat quad;      // a + b*sqrt2
    BigRational sqrt3; // coefficient of sqrt3

    QuadExt() = default;
    QuadExt(QuadRat q, BigRational c) : quad(std::move(q)), sqrt3(std::move(c)) {}
    explicit QuadExt(const QuadRat& q) : quad(q), sqrt3(0) {}

    int sign_of() const { return cmp_sqrt3(quad, -sqrt3); }
    QuadExt operator-(const QuadExt& o) const { return {quad - o.quad, sqrt3 - o.sqrt3}; }
};

inline int quadext_cmp(const QuadExt& x, const QuadExt& y) { return (x - y).sign_of(); }

inline QuadExt quadext_max(const QuadExt& x, const QuadExt& y) {
    return quadext_cmp(x, y) >= 0 ? x : y;
}

/// Exact floor of a + b*sqrt2. A rational midpoint estimate is corrected by
/// exact sign checks, so the result is right even when the estimate is off.
inline BigInt quad_floor(const QuadRat& x) {
    if (x.b == 0) return rat_floor(x.a);
    // |error of estimate| <= |b| * 10^-d; pick d so that it is < 1/4.
    unsigned d = 1;
    BigInt babs = boost::multiprecision::abs(num(x.b));
    for (BigInt t = den(x.b); t < 4 * babs; t *= 10) ++d;
    BigRational approx = x.a + x.b * (x.b > 0 ? sqrt_lower(2, d) : sqrt_upper(2, d));
    BigInt n = rat_floor(approx) - 1;
    while (quad_sign(x - QuadRat(BigRational(n + 1))) >= 0) ++n;
    return n;
}

inline BigInt quad_ceil(const QuadRat& x) {
    BigInt f = quad_floor(x);
    return (x == QuadRat(BigRational(f))) ? f : f + 1;
}

/// Decimal approximation with `digits` places (round half up), computed from
/// rational sqrt2 bounds tight enough that the printed digits are exact.
inline std::string quad_decimal(const QuadRat& x, unsigned digits) {
    unsigned d = digits + 2;
    BigInt babs = boost::multiprecision::abs(num(x.b));
    for (BigInt t = den(x.b); t < 4 * babs; t *= 10) ++d;
    BigRational mid = x.a + x.b * (sqrt_lower(2, d) + sqrt_upper(2, d)) / 2;
    return decimal_string(mid, digits);
}

/// Canonical rendering "a + b*sqrt2" with exact fraction components.
inline std::string quad_to_string(const QuadRat& x) {
    if (x.b == 0) return rational_to_string(x.a);
    std::string bs;
    BigRational babs = x.b < 0 ? BigRational(-x.b) : x.b;
    bs = (babs == 1) ? "sqrt2" : rational_to_string(babs) + "*sqrt2";
    if (x.a == 0) return (x.b < 0 ? "-" : "") + bs;
    return rational_to_string(x.a) + (x.b < 0 ? " - " : " + ") + bs;
}

/// One continued-fraction convergent p/q of sqrt2 = [1; 2, 2, 2, ...].
struct Convergent {
    BigInt p;
    BigInt q;
    unsigned index = 1;  // 1-based

    /// p - q*sqrt2 as an exact quadratic number; alternates in sign and
    /// shrinks strictly in absolute value as the index grows.
    QuadRat error() const { return {BigRational(p), BigRational(-q)}; }
};

/// First `count` convergents via p_{k+1} = 2 p_k + p_{k-1} (same for q).
inline std::vector<Convergent> sqrt2_convergents(unsigned count) {
    if (count == 0) throw std::invalid_argument("sqrt2_convergents: count must be >= 1");
    std::vector<Convergent> out;
    out.reserve(count);
    BigInt p0 = 1, q0 = 0, p1 = 1, q1 = 1;  // virtual (1,0) seed, then (1,1)
    for (unsigned k = 1; k <= count; ++k) {
        out.push_back({p1, q1, k});
        BigInt p2 = 2 * p1 + p0, q2 = 2 * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return out;
}

/// Lazy version of the same recurrence for open-ended scans.
class ConvergentStream {
public:
    Convergent next() {
        Convergent c{p1_, q1_, k_++};
        BigInt p2 = 2 * p1_ + p0_, q2 = 2 * q1_ + q0_;
        p0_ = p1_; q0_ = q1_; p1_ = p2; q1_ = q2;
        return c;
    }

private:
    BigInt p0_ = 1, q0_ = 0, p1_ = 1, q1_ = 1;
    unsigned k_ = 1;
};

}  // namespace atomos
