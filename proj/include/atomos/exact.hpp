#pragma once

/// Arbitrary-precision integers and rationals plus the small set of exact
/// helpers (floor/ceil, decimal rendering, square-root bounds) everything
/// else is built on. All arithmetic is exact; decimal strings are produced
/// only for display and for test oracles.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace atomos {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;  // always reduced, den > 0

inline BigInt num(const BigRational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const BigRational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const BigInt& n) { return n.sign(); }
inline int sign(const BigRational& q) { return q.sign(); }

/// floor(a/b) for integers, b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt rat_floor(const BigRational& q) { return floor_div(num(q), den(q)); }

inline BigInt rat_ceil(const BigRational& q) {
    BigInt f = rat_floor(q);
    return f + (f == q ? 0 : 1);
}

/// Floor of the integer square root; n must be nonnegative.
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline BigInt pow10(unsigned digits) {
    BigInt r = 1;
    for (unsigned i = 0; i < digits; ++i) r *= 10;
    return r;
}

/// Rational lower bound s with s <= sqrt(k) < s + 10^-digits.
inline BigRational sqrt_lower(const BigInt& k, unsigned digits) {
    BigInt scale = pow10(digits);
    return BigRational(isqrt(k * scale * scale), scale);
}

inline BigRational sqrt_upper(const BigInt& k, unsigned digits) {
    BigInt scale = pow10(digits);
    return BigRational(isqrt(k * scale * scale) + 1, scale);
}

/// Parses "p", "-p" or "p/q". Throws on malformed input or q == 0.
inline BigRational parse_rational(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("parse_rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return BigRational(BigInt(std::string(text)));
        BigInt p{std::string(text.substr(0, slash))};
        BigInt q{std::string(text.substr(slash + 1))};
        if (q == 0) throw bad();
        return BigRational(p, q);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

/// Exact fraction rendering: "p/q", or just "p" when q == 1.
inline std::string rational_to_string(const BigRational& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

/// Fixed-point decimal rendering with exactly `digits` places, round half up.
/// Deterministic; used for CSV/SVG output and test-side comparisons.
inline std::string decimal_string(const BigRational& value, unsigned digits) {
    BigRational mag = value < 0 ? BigRational(-value) : value;
    BigInt scaled = rat_floor(mag * pow10(digits) + BigRational(1, 2));
    BigInt ip = scaled / pow10(digits);
    BigInt fp = scaled % pow10(digits);
    std::string frac = fp.str();
    frac.insert(0, digits - frac.size(), '0');
    std::string out = (value < 0 && scaled != 0) ? "-" : "";
    out += ip.str();
    if (digits > 0) out += "." + frac;
    return out;
}

}  // namespace atomos
