#pragma once

/// Monoid algebras F_p[x; M] at desk scale: canonical sorted-term arithmetic
/// over an exactly ordered exponent domain (BigRational or BetaElem), degree
/// and order, p-th Frobenius roots as antimatter witnesses, the group
/// algebra classifier, length-set demonstrations, the multiplicative split
/// of Q_{>=1}, and a bounded irreducibility search over truncated exponent
/// monoids.

#include "atomos/exact.hpp"
#include "atomos/primes.hpp"
#include "atomos/puiseux.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atomos {

struct PrimeFieldElem {
    long value = 0;
    long modulus = 2;

    PrimeFieldElem(long v, long p) : modulus(p) {
        if (p < 2 || !is_prime(BigInt(p))) throw std::invalid_argument("PrimeFieldElem: modulus not prime");
        value = v % p;
        if (value < 0) value += p;
    }
};

inline long field_inverse(long a, long p) {
    long t = 0, new_t = 1, r = p, new_r = a % p;
    if (new_r < 0) new_r += p;
    while (new_r != 0) {
        long q = r / new_r;
        long tmp_t = t - q * new_t;
        t = new_t;
        new_t = tmp_t;
        long tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) throw std::domain_error("field_inverse: not invertible");
    return t < 0 ? t + p : t;
}

/// Element of F_p[x; M] in canonical form: strictly increasing exponents,
/// coefficients in [1, p-1]. Zero is the empty term list.
template <class Exp>
struct AlgebraElem {
    long modulus = 2;
    std::vector<std::pair<Exp, long>> terms;

    static AlgebraElem zero(long p) { return AlgebraElem{p, {}}; }

    static AlgebraElem make(long p, std::vector<std::pair<Exp, long>> raw) {
        if (p < 2 || !is_prime(BigInt(p)))
            throw std::invalid_argument("AlgebraElem: modulus not prime");
        std::sort(raw.begin(), raw.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        AlgebraElem out{p, {}};
        for (auto& [e, c] : raw) {
            long cv = c % p;
            if (cv < 0) cv += p;
            if (!out.terms.empty() && !(out.terms.back().first < e) &&
                !(e < out.terms.back().first)) {
                out.terms.back().second = (out.terms.back().second + cv) % p;
                if (out.terms.back().second == 0) out.terms.pop_back();
            } else if (cv != 0) {
                out.terms.emplace_back(e, cv);
            }
        }
        return out;
    }

    bool is_zero() const { return terms.empty(); }

    const Exp& ord() const {
        if (is_zero()) throw std::domain_error("ord: zero element");
        return terms.front().first;
    }
    const Exp& deg() const {
        if (is_zero()) throw std::domain_error("deg: zero element");
        return terms.back().first;
    }

    bool operator==(const AlgebraElem& o) const {
        return modulus == o.modulus && terms == o.terms;
    }
    bool operator!=(const AlgebraElem& o) const { return !(*this == o); }
};

template <class Exp>
inline void require_same_ring(const AlgebraElem<Exp>& f, const AlgebraElem<Exp>& g) {
    if (f.modulus != g.modulus) throw std::invalid_argument("AlgebraElem: modulus mismatch");
}

template <class Exp>
inline AlgebraElem<Exp> add(const AlgebraElem<Exp>& f, const AlgebraElem<Exp>& g) {
    require_same_ring(f, g);
    auto raw = f.terms;
    raw.insert(raw.end(), g.terms.begin(), g.terms.end());
    return AlgebraElem<Exp>::make(f.modulus, std::move(raw));
}

template <class Exp>
inline AlgebraElem<Exp> neg(const AlgebraElem<Exp>& f) {
    auto raw = f.terms;
    for (auto& [e, c] : raw) c = -c;
    return AlgebraElem<Exp>::make(f.modulus, std::move(raw));
}

template <class Exp>
inline AlgebraElem<Exp> sub(const AlgebraElem<Exp>& f, const AlgebraElem<Exp>& g) {
    return add(f, neg(g));
}

template <class Exp>
inline AlgebraElem<Exp> mul(const AlgebraElem<Exp>& f, const AlgebraElem<Exp>& g) {
    require_same_ring(f, g);
    std::vector<std::pair<Exp, long>> raw;
    raw.reserve(f.terms.size() * g.terms.size());
    for (const auto& [ef, cf] : f.terms)
        for (const auto& [eg, cg] : g.terms)
            raw.emplace_back(ef + eg, (cf * cg) % f.modulus);
    return AlgebraElem<Exp>::make(f.modulus, std::move(raw));
}

template <class Exp>
inline AlgebraElem<Exp> pow(const AlgebraElem<Exp>& f, unsigned long e) {
    if (e == 0) throw std::invalid_argument("pow: exponent must be >= 1");
    AlgebraElem<Exp> acc = f;
    for (unsigned long i = 1; i < e; ++i) acc = mul(acc, f);
    return acc;
}

// ---------------------------------------------------------------------------
// Rational-exponent polynomials: parsing, printing, exponent groups
// ---------------------------------------------------------------------------

using RatPoly = AlgebraElem<BigRational>;

/// "c*x^(a/b) + ..." with terms printed in decreasing exponent order;
/// exponent 0 renders as the bare coefficient.
inline std::string poly_to_string(const RatPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        if (!out.empty()) out += " + ";
        const auto& [e, c] = *it;
        if (e == 0) {
            out += std::to_string(c);
        } else {
            out += std::to_string(c) + "*x^";
            out += (den(e) == 1) ? num(e).str() : "(" + rational_to_string(e) + ")";
        }
    }
    return out;
}

/// Accepts the poly_to_string format plus bare "x^e" / "x" terms.
inline RatPoly parse_poly(std::string_view text, long p) {
    std::vector<std::pair<BigRational, long>> raw;
    std::string token;
    auto flush = [&] {
        std::string t;
        for (char ch : token)
            if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
        token.clear();
        if (t.empty()) throw std::invalid_argument("parse_poly: empty term");
        long coeff = 1;
        std::string expo = "0";
        auto star = t.find("*x");
        auto bare = t.find('x');
        std::string epart;
        if (star != std::string::npos) {
            coeff = std::stol(t.substr(0, star));
            epart = t.substr(star + 2);
        } else if (bare != std::string::npos) {
            if (bare != 0) throw std::invalid_argument("parse_poly: bad term '" + t + "'");
            epart = t.substr(1);
        } else {
            coeff = std::stol(t);
        }
        if (!epart.empty()) {
            if (epart[0] != '^') throw std::invalid_argument("parse_poly: bad exponent in '" + t + "'");
            epart = epart.substr(1);
            if (!epart.empty() && epart.front() == '(' && epart.back() == ')')
                epart = epart.substr(1, epart.size() - 2);
            expo = epart;
        } else if (star != std::string::npos || bare != std::string::npos) {
            expo = "1";
        }
        raw.emplace_back(parse_rational(expo), coeff);
    };
    for (char ch : text) {
        if (ch == '+') flush();
        else token += ch;
    }
    flush();
    return RatPoly::make(p, std::move(raw));
}

/// The subgroup of Q the exponents are declared to live in; p-divisibility
/// of exponents is judged against this group.
struct ExponentGroup {
    enum class Kind { Integers, ZInv, Rationals } kind = Kind::Rationals;
    BigInt m;  // ZInv: Z[1/m]

    static ExponentGroup integers() { return {Kind::Integers, 0}; }
    static ExponentGroup z_inv(BigInt base) {
        if (base < 2) throw std::invalid_argument("ExponentGroup: Z[1/m] needs m >= 2");
        return {Kind::ZInv, std::move(base)};
    }
    static ExponentGroup rationals() { return {Kind::Rationals, 0}; }

    bool contains(const BigRational& x) const {
        switch (kind) {
            case Kind::Integers: return den(x) == 1;
            case Kind::Rationals: return true;
            case Kind::ZInv: {
                BigInt d = den(x);
                BigInt g = boost::multiprecision::gcd(d, m);
                while (g > 1) {
                    while (d % g == 0) d /= g;
                    g = boost::multiprecision::gcd(d, m);
                }
                return d == 1;
            }
        }
        return false;
    }
    bool p_divisible(const BigRational& x, long p) const { return contains(x / p); }

    std::string name() const {
        switch (kind) {
            case Kind::Integers: return "Z";
            case Kind::Rationals: return "Q";
            case Kind::ZInv: return "Z[1/" + m.str() + "]";
        }
        return "?";
    }
};

/// Writes f = g^p with h_i = g_i / p and the same coefficients (alpha^p =
/// alpha over F_p). Requires every exponent to be p-divisible in the
/// declared group; the round trip g^p == f is re-verified before returning.
/// For a nonunit f this certifies that f is not irreducible.
inline RatPoly frobenius_root(const RatPoly& f, const ExponentGroup& group) {
    const long p = f.modulus;
    std::vector<std::pair<BigRational, long>> raw;
    for (const auto& [e, c] : f.terms) {
        if (!group.contains(e))
            throw std::domain_error("frobenius_root: exponent outside declared group " + group.name());
        if (!group.p_divisible(e, p))
            throw std::domain_error("frobenius_root: exponent " + rational_to_string(e) +
                                    " not " + std::to_string(p) + "-divisible in " + group.name());
        raw.emplace_back(e / p, c);
    }
    RatPoly g = RatPoly::make(p, std::move(raw));
    if (!f.is_zero() && pow(g, static_cast<unsigned long>(p)) != f)
        throw std::logic_error("frobenius_root: g^p != f");
    return g;
}

// ---------------------------------------------------------------------------
// Group algebra classifier
// ---------------------------------------------------------------------------

struct FieldDescriptor {
    long characteristic = 0;                  // 0 or a prime p
    bool algebraic_over_prime_field = false;  // meaningful when characteristic > 0
};

enum class GroupDescriptor { Trivial, InfiniteCyclic, Other };

/// F[G] is hereditarily atomic iff F is an algebraic extension of F_p and
/// G is the infinite cyclic group. The trivial group sits outside the
/// statement and is rejected.
inline bool classify_group_algebra(const FieldDescriptor& field, GroupDescriptor group) {
    if (group == GroupDescriptor::Trivial)
        throw std::invalid_argument("classify_group_algebra: group must be nontrivial");
    if (field.characteristic != 0 && !is_prime(BigInt(field.characteristic)))
        throw std::invalid_argument("classify_group_algebra: characteristic must be 0 or prime");
    return field.characteristic > 0 && field.algebraic_over_prime_field &&
           group == GroupDescriptor::InfiniteCyclic;
}

// ---------------------------------------------------------------------------
// Length sets
// ---------------------------------------------------------------------------

namespace detail {

inline void length_set_dfs(const std::vector<BigRational>& gens, std::size_t pos,
                           const BigRational& residual, const BigInt& count,
                           std::set<BigInt>& lengths) {
    if (residual == 0) {
        lengths.insert(count);
        return;
    }
    if (residual < 0 || pos == gens.size()) return;
    BigInt cap = rat_floor(residual / gens[pos]);
    for (BigInt c = 0; c <= cap; ++c)
        length_set_dfs(gens, pos + 1, residual - BigRational(c) * gens[pos], count + c, lengths);
}

}  // namespace detail

/// All factorization lengths of `target` over the positive generators:
/// conclusive bounded enumeration (each coefficient is capped by
/// floor(target / generator)).
inline std::set<BigInt> length_set(const std::vector<BigRational>& gens,
                                   const BigRational& target) {
    for (const auto& g : gens)
        if (!(g > 0)) throw std::invalid_argument("length_set: generators must be positive");
    if (target < 0) throw std::invalid_argument("length_set: target must be >= 0");
    std::set<BigInt> lengths;
    detail::length_set_dfs(gens, 0, target, 0, lengths);
    return lengths;
}

struct LengthDemo {
    long primes_up_to = 0;
    std::vector<long> identity_primes;    // q with (x^{1/q})^q == x verified
    bool identities_ok = false;
    std::set<BigInt> length_set_of_one;   // lengths of 1 in <1/p : p prime <= bound>
};

/// Example-scale demonstration that F_p[<1/p>] is not a BFD: the element x
/// factors as (x^{1/q})^q for every prime q, so its length set meets every
/// prime. Verified algebraically for q up to the bound, and at monoid level
/// by the conclusive enumeration of the length set of 1.
inline LengthDemo length_demo(long bound) {
    if (bound < 2) throw std::invalid_argument("length_demo: bound must be >= 2");
    LengthDemo out;
    out.primes_up_to = bound;
    out.identities_ok = true;
    RatPoly x = RatPoly::make(2, {{BigRational(1), 1}});
    std::vector<BigRational> gens;
    for (const auto& p : primes_up_to(BigInt(bound))) {
        long q = static_cast<long>(p);
        RatPoly root = RatPoly::make(2, {{BigRational(1, q), 1}});
        out.identities_ok = out.identities_ok && pow(root, q) == x;
        out.identity_primes.push_back(q);
        gens.emplace_back(1, q);
    }
    out.length_set_of_one = length_set(gens, BigRational(1));
    return out;
}

// ---------------------------------------------------------------------------
// Multiplicative split of Q_{>=1}
// ---------------------------------------------------------------------------

/// q = ((n/(n+1)) q) * ((n+1)/n) with n minimal such that the first factor
/// exceeds 1; both factors are > 1, witnessing that Q_{>=1} is antimatter.
inline std::pair<BigRational, BigRational> rational_ge1_split(const BigRational& q) {
    if (!(q > 1)) throw std::domain_error("rational_ge1_split: q must exceed 1");
    // n minimal with n(q-1) > 1.
    BigInt n = rat_floor(BigRational(1) / (q - 1)) + 1;
    BigRational left = q * BigRational(n, n + 1);
    BigRational right(n + 1, n);
    if (!(left > 1) || !(right > 1) || left * right != q)
        throw std::logic_error("rational_ge1_split: postcondition failed");
    return {left, right};
}

// ---------------------------------------------------------------------------
// Bounded irreducibility search (exploratory)
// ---------------------------------------------------------------------------

/// The exponent monoid a divisor search works over: either N_0 or the
/// truncation of a Puiseux family.
struct ExponentUniverse {
    std::optional<PuiseuxFamily> family;  // nullopt: N_0
    unsigned truncation = 0;

    static ExponentUniverse naturals() { return {}; }
    static ExponentUniverse truncated(PuiseuxFamily f, unsigned n) {
        return {std::move(f), n};
    }

    std::string description() const {
        return family ? family->name() + " truncated to N=" + std::to_string(truncation)
                      : "N0";
    }

    bool contains(const BigRational& x) const {
        if (x < 0) return false;
        if (!family) return den(x) == 1;
        return detail::rational_combo(family->generators(truncation), x).has_value();
    }

    /// Sorted distinct monoid elements <= cap.
    std::vector<BigRational> elements_up_to(const BigRational& cap) const {
        std::set<BigRational> seen;
        if (!family) {
            for (BigInt i = 0; i <= rat_floor(cap); ++i) seen.emplace(i);
        } else {
            enumerate(family->generators(truncation), 0, BigRational(0), cap, seen);
        }
        return {seen.begin(), seen.end()};
    }

private:
    static void enumerate(const std::vector<BigRational>& gens, std::size_t pos,
                          const BigRational& acc, const BigRational& cap,
                          std::set<BigRational>& out) {
        if (pos == gens.size()) {
            out.insert(acc);
            return;
        }
        BigInt top = rat_floor((cap - acc) / gens[pos]);
        for (BigInt c = 0; c <= top; ++c)
            enumerate(gens, pos + 1, acc + BigRational(c) * gens[pos], cap, out);
    }
};

enum class FactorStatus { IrreducibleWithinBound, Factored, Inconclusive };

inline const char* factor_status_name(FactorStatus s) {
    switch (s) {
        case FactorStatus::IrreducibleWithinBound: return "irreducible-within-bound";
        case FactorStatus::Factored: return "factored";
        case FactorStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Fixed caveat carried by every search report: results never speak about
/// the untruncated algebra.
inline constexpr const char* kTruncationCaveat =
    "result is relative to the stated exponent truncation and asserts nothing "
    "about the untruncated monoid algebra";

struct FactorSearchReport {
    FactorStatus status = FactorStatus::Inconclusive;
    std::optional<std::pair<RatPoly, RatPoly>> factors;
    unsigned long candidates_tried = 0;
    unsigned long budget = 0;
    std::string universe;
    std::string caveat = kTruncationCaveat;
};

namespace detail {

// Leading-term long division in F_p[x; Q]. Exponents of the quotient must
// stay nonnegative; the step cap guards against blowup on adversarial
// sparse inputs (capped runs are reported, not silently dropped).
inline std::optional<RatPoly> poly_divide(const RatPoly& f, const RatPoly& g, bool& capped,
                                          unsigned step_cap = 2000) {
    RatPoly r = f;
    std::vector<std::pair<BigRational, long>> h;
    const auto& [eg, cg] = g.terms.back();
    long cg_inv = field_inverse(cg, g.modulus);
    unsigned steps = 0;
    while (!r.is_zero()) {
        if (++steps > step_cap) {
            capped = true;
            return std::nullopt;
        }
        const auto& [er, cr] = r.terms.back();
        BigRational e = er - eg;
        if (e < 0) return std::nullopt;
        long c = (cr * cg_inv) % g.modulus;
        h.emplace_back(e, c);
        RatPoly mono = RatPoly::make(g.modulus, {{e, c}});
        r = sub(r, mul(mono, g));
    }
    return RatPoly::make(g.modulus, std::move(h));
}

}  // namespace detail

/// Searches nontrivial factorizations f = g*h with exponents drawn from the
/// universe, subject to deg g + deg h = deg f and ord g + ord h = ord f.
/// Candidates are enumerated deterministically: (deg, ord) pairs in
/// ascending order, then support size, then middle-exponent subsets, then
/// coefficient patterns. The budget caps candidate divisors tried.
inline FactorSearchReport irreducible_search_bounded(const RatPoly& f,
                                                     const ExponentUniverse& universe,
                                                     unsigned long budget = 20000) {
    if (f.is_zero()) throw std::invalid_argument("irreducible_search_bounded: f is zero");
    if (f.deg() == 0 && f.ord() == 0)
        throw std::invalid_argument("irreducible_search_bounded: f is a unit");
    for (const auto& [e, c] : f.terms)
        if (!universe.contains(e))
            throw std::invalid_argument("irreducible_search_bounded: exponent " +
                                        rational_to_string(e) + " outside the universe");

    FactorSearchReport report;
    report.budget = budget;
    report.universe = universe.description();

    const long p = f.modulus;
    std::vector<BigRational> elems = universe.elements_up_to(f.deg());
    std::set<BigRational> elem_set(elems.begin(), elems.end());
    bool division_capped = false;

    auto try_candidate = [&](const RatPoly& g) -> bool {
        ++report.candidates_tried;
        auto h = detail::poly_divide(f, g, division_capped);
        if (!h || h->is_zero()) return false;
        if (h->deg() == 0 && h->ord() == 0) return false;  // unit cofactor
        for (const auto& [e, c] : h->terms)
            if (elem_set.count(e) == 0) return false;  // exponent outside the truncation monoid
        if (mul(g, *h) != f) return false;
        report.status = FactorStatus::Factored;
        report.factors = {g, *h};
        return true;
    };

    for (const BigRational& dg : elems) {
        for (const BigRational& og : elems) {
            if (report.candidates_tried >= budget) {
                report.status = FactorStatus::Inconclusive;
                return report;
            }
            if (og > dg) continue;
            BigRational dh = f.deg() - dg, oh = f.ord() - og;
            if (dh < 0 || oh < 0 || oh > dh) continue;
            if (!elem_set.count(dh) || !elem_set.count(oh)) continue;
            if (dg == 0 && og == 0) continue;  // g would be a unit
            if (dh == 0 && oh == 0) continue;  // h would be a unit

            std::vector<BigRational> middle;
            for (const BigRational& e : elems)
                if (og < e && e < dg) middle.push_back(e);

            const std::size_t max_extra = middle.size();
            for (std::size_t extra = 0; extra <= max_extra; ++extra) {
                if (og == dg && extra > 0) break;
                // choose `extra` middle exponents (lexicographic combinations)
                std::vector<std::size_t> idx(extra);
                for (std::size_t i = 0; i < extra; ++i) idx[i] = i;
                bool more = true;
                while (more) {
                    std::vector<BigRational> support{og};
                    for (std::size_t i : idx) support.push_back(middle[i]);
                    if (og != dg) support.push_back(dg);

                    // coefficient patterns over [1, p-1]^support
                    std::vector<long> coeff(support.size(), 1);
                    bool more_coeff = true;
                    while (more_coeff) {
                        std::vector<std::pair<BigRational, long>> raw;
                        for (std::size_t i = 0; i < support.size(); ++i)
                            raw.emplace_back(support[i], coeff[i]);
                        if (report.candidates_tried >= budget) {
                            report.status = FactorStatus::Inconclusive;
                            return report;
                        }
                        if (try_candidate(RatPoly::make(p, std::move(raw)))) return report;
                        // next coefficient pattern
                        std::size_t i = 0;
                        while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 1;
                        more_coeff = i < coeff.size();
                    }
                    // next combination
                    if (extra == 0) break;
                    std::size_t i = extra;
                    while (i-- > 0) {
                        if (idx[i] + (extra - i) < middle.size()) {
                            ++idx[i];
                            for (std::size_t j = i + 1; j < extra; ++j) idx[j] = idx[j - 1] + 1;
                            break;
                        }
                        if (i == 0) more = false;
                    }
                }
            }
        }
    }
    report.status = division_capped ? FactorStatus::Inconclusive
                                    : FactorStatus::IrreducibleWithinBound;
    return report;
}

}  // namespace atomos
