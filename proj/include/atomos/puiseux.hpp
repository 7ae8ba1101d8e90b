#pragma once

/// Puiseux monoids (additive submonoids of Q_{>=0}) given by closed-form
/// generator families: truncated membership with certificates, atom
/// spot-checks with per-family contributor horizons, the non-stabilizing
/// chains of principal ideals, the sparse-prime normal form, and the
/// rank-2 beta-extension generators.
///
/// The infinitely generated monoids are handled by (i) truncation oracles
/// and (ii) closed-form answers only where certified; every report states
/// which truncation it refers to and whether the answer is conclusive for
/// the full monoid.

#include "atomos/exact.hpp"
#include "atomos/primes.hpp"
#include "atomos/quadratic.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atomos {

enum class FamilyKind { Grams, PrimeGap, Geometric, ReciprocalPrimes, SparsePrimes, Custom };

class PuiseuxFamily {
public:
    static PuiseuxFamily grams() { return PuiseuxFamily(FamilyKind::Grams); }
    static PuiseuxFamily prime_gap() { return PuiseuxFamily(FamilyKind::PrimeGap); }
    static PuiseuxFamily reciprocal_primes() { return PuiseuxFamily(FamilyKind::ReciprocalPrimes); }
    static PuiseuxFamily sparse_primes() { return PuiseuxFamily(FamilyKind::SparsePrimes); }

    /// <q^n | n >= 0> for 0 < q < 1 with 1/q not an integer (equivalently,
    /// the reduced numerator of q is at least 2).
    static PuiseuxFamily geometric(const BigRational& q) {
        if (!(q > 0 && q < 1)) throw std::invalid_argument("geometric: need 0 < q < 1");
        if (num(q) == 1) throw std::invalid_argument("geometric: 1/q must not be an integer");
        PuiseuxFamily f(FamilyKind::Geometric);
        f.ratio_ = q;
        return f;
    }

    static PuiseuxFamily custom(std::vector<BigRational> gens) {
        for (const auto& g : gens)
            if (!(g > 0)) throw std::invalid_argument("custom: generators must be positive");
        PuiseuxFamily f(FamilyKind::Custom);
        f.custom_ = std::move(gens);
        return f;
    }

    FamilyKind kind() const { return kind_; }
    const BigRational& ratio() const { return ratio_; }

    std::string name() const {
        switch (kind_) {
            case FamilyKind::Grams: return "grams";
            case FamilyKind::PrimeGap: return "prime-gap";
            case FamilyKind::Geometric: return "geometric(" + rational_to_string(ratio_) + ")";
            case FamilyKind::ReciprocalPrimes: return "reciprocal-primes";
            case FamilyKind::SparsePrimes: return "sparse-primes";
            case FamilyKind::Custom: return "custom";
        }
        return "?";
    }

    /// n-th sparse prime (1-based): the least prime above 5^n, so that
    /// sum 1/p_n is dominated by a geometric series below 1/3.
    static BigInt sparse_prime(unsigned n) {
        BigInt bound = 1;
        for (unsigned i = 0; i < n; ++i) bound *= 5;
        return next_prime_after(bound);
    }

    /// First `count` generators in the family's canonical order.
    std::vector<BigRational> generators(unsigned count) const {
        if (count < 1) throw std::invalid_argument("generators: count must be >= 1");
        std::vector<BigRational> out;
        out.reserve(count);
        switch (kind_) {
            case FamilyKind::Grams: {
                auto ps = odd_primes(count);
                BigInt pow2 = 1;
                for (unsigned n = 0; n < count; ++n, pow2 *= 2)
                    out.emplace_back(BigInt(1), pow2 * ps[n]);
                break;
            }
            case FamilyKind::PrimeGap: {
                auto ps = primes(count + 2);
                for (unsigned n = 0; n < count; ++n)
                    out.emplace_back(BigInt(1), ps[n] * ps[n + 2]);
                break;
            }
            case FamilyKind::Geometric: {
                BigRational v = 1;
                for (unsigned n = 0; n < count; ++n, v *= ratio_) out.push_back(v);
                break;
            }
            case FamilyKind::ReciprocalPrimes: {
                for (const auto& p : primes(count)) out.emplace_back(BigInt(1), p);
                break;
            }
            case FamilyKind::SparsePrimes: {
                BigRational sum = 0;
                for (unsigned n = 1; n <= count; ++n) {
                    out.emplace_back(BigInt(1), sparse_prime(n));
                    sum += out.back();
                }
                if (!(sum < BigRational(1, 3)))
                    throw std::logic_error("sparse_primes: truncation sum not below 1/3");
                break;
            }
            case FamilyKind::Custom: {
                if (count > custom_.size())
                    throw std::invalid_argument("custom: not enough generators");
                out.assign(custom_.begin(), custom_.begin() + count);
                break;
            }
        }
        return out;
    }

private:
    explicit PuiseuxFamily(FamilyKind k) : kind_(k) {}
    FamilyKind kind_;
    BigRational ratio_;
    std::vector<BigRational> custom_;
};

// ---------------------------------------------------------------------------
// Truncated membership
// ---------------------------------------------------------------------------

/// target == sum coefficients[i] * generators[i], re-checked on construction.
struct RationalCombination {
    BigRational target;
    std::map<std::size_t, BigInt> coefficients;  // generator index -> multiplicity

    RationalCombination(const std::vector<BigRational>& gens, BigRational t,
                        std::map<std::size_t, BigInt> coeffs)
        : target(std::move(t)), coefficients(std::move(coeffs)) {
        BigRational sum = 0;
        for (const auto& [idx, c] : coefficients) {
            if (idx >= gens.size() || c < 0)
                throw std::invalid_argument("RationalCombination: bad coefficient entry");
            sum += BigRational(c) * gens[idx];
        }
        if (sum != target)
            throw std::logic_error("RationalCombination: coefficients do not re-sum to target");
    }
};

namespace detail {

// Conclusive DFS over nonnegative-coefficient representations of `target`
// by the positive rationals `gens`; the coefficient of g is capped by
// floor(residual / g).
inline bool rational_combo_dfs(const std::vector<BigRational>& gens, std::size_t pos,
                               const BigRational& residual, std::map<std::size_t, BigInt>& coeffs) {
    if (residual == 0) return true;
    if (residual < 0 || pos == gens.size()) return false;
    if (pos + 1 == gens.size()) {
        BigRational c = residual / gens[pos];
        if (den(c) != 1) return false;
        coeffs[pos] = num(c);
        return true;
    }
    BigInt cap = rat_floor(residual / gens[pos]);
    for (BigInt c = 0; c <= cap; ++c) {
        if (c != 0) coeffs[pos] = c;
        if (rational_combo_dfs(gens, pos + 1, residual - BigRational(c) * gens[pos], coeffs))
            return true;
        coeffs.erase(pos);
    }
    return false;
}

inline std::optional<std::map<std::size_t, BigInt>> rational_combo(
    const std::vector<BigRational>& gens, const BigRational& target) {
    std::map<std::size_t, BigInt> coeffs;
    if (rational_combo_dfs(gens, 0, target, coeffs)) return coeffs;
    return std::nullopt;
}

}  // namespace detail

struct PuiseuxMemberResult {
    std::optional<RationalCombination> certificate;
    unsigned truncation = 0;  // number of generators the search was conclusive for

    bool found() const { return certificate.has_value(); }
};

/// Conclusive bounded search over the first `truncation` generators: the
/// coefficient of generator g never exceeds floor(q / g).
inline PuiseuxMemberResult member_truncated(const PuiseuxFamily& family, unsigned truncation,
                                            const BigRational& q) {
    if (q < 0) throw std::invalid_argument("member_truncated: q must be >= 0");
    auto gens = family.generators(truncation);
    PuiseuxMemberResult result;
    result.truncation = truncation;
    if (auto coeffs = detail::rational_combo(gens, q))
        result.certificate.emplace(gens, q, std::move(*coeffs));
    return result;
}

// ---------------------------------------------------------------------------
// Atom sets
// ---------------------------------------------------------------------------

struct FamilyAtomSpot {
    std::size_t index = 0;  // 0-based into the generator list
    BigRational generator;
    bool confirmed_atom = false;
    unsigned horizon = 0;    // contributors searched: generator indices 1..horizon (1-based)
    bool conclusive = false; // true when no generator beyond the horizon can contribute
};

struct FamilyAtomsReport {
    std::string family;
    std::string closed_form;     // atom set as certified for the family; empty for Custom
    bool closed_form_asserted = false;
    unsigned truncation = 0;
    std::vector<FamilyAtomSpot> spots;
    bool passed = false;
};

namespace detail {

// 1-based index bound H such that no generator beyond index H can appear in
// a representation of another generator. Zero means "no other generator can
// contribute at all", by a denominator-valuation argument. Returns nullopt
// when no such bound exists (PrimeGap shares primes between neighbouring
// denominators, Custom is arbitrary): the spot-check is then conclusive
// only relative to the truncation searched.
inline std::optional<unsigned> contributor_horizon(const PuiseuxFamily& family) {
    switch (family.kind()) {
        case FamilyKind::Grams:
            // p_i divides only den(g_i), so c_i must be a multiple of p_i
            // for every i != j; the sum then becomes dyadic, but the target
            // 1/(2^{j-1} p_j) is not.
            return 0;
        case FamilyKind::Geometric:
            // Generators below index j overshoot the target outright; for
            // the rest, clearing denominators leaves b^k / a with a >= 2
            // coprime to b, which is not an integer.
            return 0;
        case FamilyKind::ReciprocalPrimes:
        case FamilyKind::SparsePrimes:
            // Any other generator 1/p forces a coefficient divisible by p,
            // contributing at least 1 > 1/p_j.
            return 0;
        default:
            return std::nullopt;
    }
}

}  // namespace detail

/// The certified closed-form atom set plus a spot-check: for each of the
/// first N generators, verify that it is not a bounded N_0-combination of
/// the other generators within its contributor horizon. Custom families get
/// oracle-only answers relative to the truncation.
inline FamilyAtomsReport atoms_family(const PuiseuxFamily& family, unsigned truncation) {
    FamilyAtomsReport report;
    report.family = family.name();
    report.truncation = truncation;
    switch (family.kind()) {
        case FamilyKind::Grams:
            report.closed_form = "1/(2^(n-1) p_n) for n >= 1, p_n the n-th odd prime";
            report.closed_form_asserted = true;
            break;
        case FamilyKind::PrimeGap:
            report.closed_form = "1/(p_n p_{n+2}) for n >= 1, over all primes";
            report.closed_form_asserted = true;
            break;
        case FamilyKind::Geometric:
            report.closed_form = "q^n for n >= 0 with q = " + rational_to_string(family.ratio());
            report.closed_form_asserted = true;
            break;
        case FamilyKind::ReciprocalPrimes:
            report.closed_form = "1/p for p prime";
            report.closed_form_asserted = true;
            break;
        case FamilyKind::SparsePrimes:
            report.closed_form = "1/p_n for the sparse prime sequence";
            report.closed_form_asserted = true;
            break;
        case FamilyKind::Custom:
            report.closed_form_asserted = false;
            break;
    }

    report.passed = true;
    for (unsigned j = 1; j <= truncation; ++j) {
        FamilyAtomSpot spot;
        spot.index = j - 1;
        auto horizon_opt = detail::contributor_horizon(family);
        unsigned horizon =
            horizon_opt ? std::max(*horizon_opt, truncation) : truncation;
        spot.horizon = horizon;
        spot.conclusive = horizon_opt.has_value();

        auto gens = family.generators(std::max(horizon, j));
        spot.generator = gens[j - 1];
        std::vector<BigRational> others;
        for (unsigned i = 1; i <= horizon; ++i)
            if (i != j) others.push_back(gens[i - 1]);
        spot.confirmed_atom = !detail::rational_combo(others, spot.generator).has_value();
        report.passed = report.passed && spot.confirmed_atom;
        report.spots.push_back(std::move(spot));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Chain certificates
// ---------------------------------------------------------------------------

/// One non-stabilizing ascending chain (b_n + M)_n with, per step, the exact
/// identity expressing b_n - b_{n+1} as an N_0-combination of generators.
struct PuiseuxChain {
    std::string family;
    unsigned length = 0;      // number of ideals
    unsigned truncation = 0;  // generators the certificates index into
    std::vector<BigRational> generators_used;
    std::vector<BigRational> ideals;                    // b_1, b_2, ...
    std::vector<RationalCombination> ideal_certs;       // b_n as an element of M
    std::vector<RationalCombination> witness_certs;     // b_n - b_{n+1} in M, nonzero
};

inline PuiseuxChain chain_certificate(const PuiseuxFamily& family, unsigned count) {
    if (count < 2) throw std::invalid_argument("chain_certificate: need at least 2 ideals");
    PuiseuxChain chain;
    chain.family = family.name();
    chain.length = count;

    auto push_step = [&](const BigRational& ideal, std::map<std::size_t, BigInt> cert) {
        chain.ideals.push_back(ideal);
        chain.ideal_certs.emplace_back(chain.generators_used, ideal, std::move(cert));
    };
    auto push_witness = [&](std::size_t n, std::map<std::size_t, BigInt> cert) {
        BigRational diff = chain.ideals[n] - chain.ideals[n + 1];
        if (!(diff > 0)) throw std::logic_error("chain_certificate: witness not positive");
        chain.witness_certs.emplace_back(chain.generators_used, diff, std::move(cert));
    };

    switch (family.kind()) {
        case FamilyKind::Grams: {
            // b_n = 1/2^n = p_{n+1} * g_{n+1}; b_n - b_{n+1} = p_{n+2} * g_{n+2}.
            chain.truncation = count + 1;
            chain.generators_used = family.generators(chain.truncation);
            auto ps = odd_primes(count + 1);
            BigRational b(1, 2);
            for (unsigned n = 1; n <= count; ++n, b /= 2)
                push_step(b, {{n, ps[n]}});
            for (unsigned n = 0; n + 1 < count; ++n)
                push_witness(n, {{n + 2, ps[n + 2]}});
            break;
        }
        case FamilyKind::PrimeGap: {
            // b_n = 1/p_n + 1/p_{n+1} = p_{n+2} g_n + p_{n+3} g_{n+1};
            // b_n - b_{n+1} = (p_{n+2} - p_n) g_n.
            chain.truncation = count + 1;
            chain.generators_used = family.generators(chain.truncation);
            auto ps = primes(count + 3);
            for (unsigned n = 1; n <= count; ++n) {
                BigRational b = BigRational(1, ps[n - 1]) + BigRational(1, ps[n]);
                push_step(b, {{n - 1, ps[n + 1]}, {n, ps[n + 2]}});
            }
            for (unsigned n = 0; n + 1 < count; ++n)
                push_witness(n, {{n, ps[n + 2] - ps[n]}});
            break;
        }
        case FamilyKind::Geometric: {
            // b_n = a q^n (a copies of q^n); b_n - b_{n+1} = (b-a) copies of q^{n+1}.
            chain.truncation = count + 2;  // exponents 0..count+1
            chain.generators_used = family.generators(chain.truncation);
            BigRational a(num(family.ratio()));
            BigInt bden = den(family.ratio());
            for (unsigned n = 1; n <= count; ++n)
                push_step(a * chain.generators_used[n], {{n, num(a)}});
            for (unsigned n = 0; n + 1 < count; ++n)
                push_witness(n, {{n + 2, bden - num(a)}});
            break;
        }
        default:
            throw std::invalid_argument("chain_certificate: unsupported family " + family.name());
    }
    return chain;
}

// ---------------------------------------------------------------------------
// Sparse-prime normal form
// ---------------------------------------------------------------------------

/// q = n0 + sum_i digits[i] / p_i with digits[i] in [0, p_i - 1]; the digits
/// are read off residues (the p_i-part of the denominator), then n0 must be
/// a nonnegative integer.
struct NormalFormP {
    bool member = false;
    BigInt n0;
    std::map<unsigned, BigInt> digits;  // 1-based family index -> digit
};

namespace detail {

inline BigInt mod_inverse(BigInt a, const BigInt& m) {
    BigInt r0 = m, r1 = a % m, s0 = 0, s1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1, s2 = s0 - q * s1;
        r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
    BigInt r = s0 % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace detail

inline NormalFormP normal_form_P(const PuiseuxFamily& family, const BigRational& q) {
    if (family.kind() != FamilyKind::SparsePrimes)
        throw std::invalid_argument("normal_form_P: requires the sparse-primes family");
    NormalFormP nf;
    if (q < 0) return nf;

    // The denominator must be a squarefree product of family primes.
    BigInt v = den(q);
    std::vector<unsigned> indices;
    for (unsigned n = 1; v > 1; ++n) {
        BigInt p = PuiseuxFamily::sparse_prime(n);
        if (p > v) return nf;  // leftover factor is not a family prime
        if (v % p == 0) {
            v /= p;
            if (v % p == 0) return nf;  // square factor
            indices.push_back(n);
        }
    }

    BigRational rest = q;
    for (unsigned n : indices) {
        BigInt p = PuiseuxFamily::sparse_prime(n);
        BigInt cofactor = den(q) / p;
        BigInt digit = (num(q) % p) * detail::mod_inverse(cofactor, p) % p;
        if (digit < 0) digit += p;
        nf.digits[n] = digit;
        rest -= BigRational(digit, p);
    }
    if (den(rest) != 1 || num(rest) < 0) {
        nf.digits.clear();
        return nf;
    }
    nf.n0 = num(rest);
    nf.member = true;
    return nf;
}

/// Reassembles n0 + sum digits/p_i; inverse of normal_form_P on members.
inline BigRational normal_form_value(const NormalFormP& nf) {
    BigRational v(nf.n0);
    for (const auto& [n, digit] : nf.digits)
        v += BigRational(digit, PuiseuxFamily::sparse_prime(n));
    return v;
}

// ---------------------------------------------------------------------------
// The rank-2 beta extension
// ---------------------------------------------------------------------------

/// k*beta + q for a fixed irrational beta in Q(sqrt2), beta > 1. The
/// representation is unique, so ordering via the exact value is a strict
/// total order.
struct BetaElem {
    BigInt k;       // coefficient of beta, nonnegative for monoid members
    BigRational q;  // rational part
    QuadRat beta;   // carried so elements are self-contained

    QuadRat value() const { return beta * BigRational(k) + QuadRat(q); }

    BetaElem operator+(const BetaElem& o) const {
        require_same_beta(o);
        return {k + o.k, q + o.q, beta};
    }
    BetaElem operator-(const BetaElem& o) const {
        require_same_beta(o);
        return {k - o.k, q - o.q, beta};
    }
    bool operator==(const BetaElem& o) const { return k == o.k && q == o.q && beta == o.beta; }
    bool operator!=(const BetaElem& o) const { return !(*this == o); }
    bool operator<(const BetaElem& o) const {
        require_same_beta(o);
        return quad_cmp(value(), o.value()) < 0;
    }

    std::string to_string() const {
        return k.str() + "*beta + " + rational_to_string(q);
    }

private:
    void require_same_beta(const BetaElem& o) const {
        if (beta != o.beta) throw std::invalid_argument("BetaElem: mixed beta descriptors");
    }
};

inline QuadRat default_beta() { return QuadRat::sqrt2(); }

/// Validates an exactly comparable irrational descriptor beta > 1.
inline void check_beta(const QuadRat& beta) {
    if (beta.b == 0)
        throw std::invalid_argument("beta descriptor must be irrational (sqrt2 part nonzero)");
    if (quad_sign(beta - QuadRat(1L)) <= 0)
        throw std::invalid_argument("beta descriptor must exceed 1");
}

struct GottiLiGenerators {
    QuadRat beta;
    unsigned truncation = 0;
    std::vector<BetaElem> a_elems;  // prefix sums of atoms with exactly one repeat
    std::vector<BetaElem> b_elems;  // beta and beta minus prefix sums
    unsigned rank = 0;
    std::string enumeration_note;
};

/// A-elements are enumerated over contiguous index prefixes 1..l with one
/// repeated index k <= l (the general definition allows arbitrary strictly
/// increasing tuples; the prefix slice is what the desk-scale tooling
/// emits). B-elements are beta and beta - (1/p_1 + ... + 1/p_l).
inline GottiLiGenerators gottili_generators(unsigned truncation, QuadRat beta = default_beta()) {
    check_beta(beta);
    if (truncation < 1) throw std::invalid_argument("gottili_generators: truncation must be >= 1");
    GottiLiGenerators out;
    out.beta = beta;
    out.truncation = truncation;
    out.enumeration_note =
        "A restricted to contiguous prefixes 1..l with one repeat; B uses the same prefixes";

    auto gens = PuiseuxFamily::sparse_primes().generators(truncation);
    std::vector<BigRational> prefix(truncation + 1, BigRational(0));
    for (unsigned i = 1; i <= truncation; ++i) prefix[i] = prefix[i - 1] + gens[i - 1];

    for (unsigned l = 1; l <= truncation; ++l)
        for (unsigned k = 1; k <= l; ++k)
            out.a_elems.push_back(BetaElem{0, prefix[l] + gens[k - 1], beta});
    out.b_elems.push_back(BetaElem{1, 0, beta});
    for (unsigned l = 1; l <= truncation; ++l)
        out.b_elems.push_back(BetaElem{1, -prefix[l], beta});

    // gp(<A u B>) contains a nonzero rational and an element with a beta
    // component, which are integrally independent since beta is irrational.
    bool has_rational = !out.a_elems.empty();
    bool has_beta = !out.b_elems.empty();
    out.rank = (has_rational ? 1 : 0) + (has_beta ? 1 : 0);
    return out;
}

}  // namespace atomos
