#pragma once

/// Abelian groups: Smith normal form over Z, classification of finitely
/// generated presentations and of denominator-chain subgroups of Q as
/// hereditarily atomic / hereditary ACCP, and the witness monoids emitted
/// when classification fails.

#include "atomos/exact.hpp"
#include "atomos/lattice.hpp"
#include "atomos/puiseux.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atomos {

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<BigInt>> entries;  // row-major

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), entries(r, std::vector<BigInt>(c, BigInt(0))) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.entries[i][i] = 1;
        return m;
    }

    BigInt& at(std::size_t i, std::size_t j) { return entries[i][j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return entries[i][j]; }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols != o.rows) throw std::invalid_argument("IntMatrix: shape mismatch");
        IntMatrix r(rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k)
                if (entries[i][k] != 0)
                    for (std::size_t j = 0; j < o.cols; ++j)
                        r.entries[i][j] += entries[i][k] * o.entries[k][j];
        return r;
    }
    bool operator==(const IntMatrix& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }
};

struct SnfResult {
    IntMatrix u, d, v;   // u * a * v == d, checked before returning
    int det_u = 1, det_v = 1;

    std::vector<BigInt> diagonal() const {
        std::vector<BigInt> out;
        for (std::size_t i = 0; i < std::min(d.rows, d.cols); ++i) out.push_back(d.at(i, i));
        return out;
    }
};

/// Diagonalizes an integer matrix by unimodular row and column operations:
/// U A V = D with d_1 | d_2 | ... and nonnegative diagonal. Elementary row
/// swaps/negations flip the tracked determinant; add-multiple operations
/// leave it at +-1 throughout.
inline SnfResult smith_normal_form(const IntMatrix& a) {
    SnfResult res;
    res.d = a;
    res.u = IntMatrix::identity(a.rows);
    res.v = IntMatrix::identity(a.cols);
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(d.entries[i], d.entries[j]);
        std::swap(u.entries[i], u.entries[j]);
        res.det_u = -res.det_u;
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < d.rows; ++r) std::swap(d.entries[r][i], d.entries[r][j]);
        for (std::size_t r = 0; r < v.rows; ++r) std::swap(v.entries[r][i], v.entries[r][j]);
        res.det_v = -res.det_v;
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const BigInt& c) {  // row_dst += c*row_src
        for (std::size_t j = 0; j < d.cols; ++j) d.entries[dst][j] += c * d.entries[src][j];
        for (std::size_t j = 0; j < u.cols; ++j) u.entries[dst][j] += c * u.entries[src][j];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& c) {  // col_dst += c*col_src
        for (std::size_t r = 0; r < d.rows; ++r) d.entries[r][dst] += c * d.entries[r][src];
        for (std::size_t r = 0; r < v.rows; ++r) v.entries[r][dst] += c * v.entries[r][src];
    };
    auto negate_row = [&](std::size_t i) {
        for (auto& x : d.entries[i]) x = -x;
        for (auto& x : u.entries[i]) x = -x;
        res.det_u = -res.det_u;
    };

    const std::size_t n = std::min(a.rows, a.cols);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // Smallest nonzero |entry| in the trailing submatrix as pivot.
            std::optional<std::pair<std::size_t, std::size_t>> piv;
            for (std::size_t i = t; i < d.rows; ++i)
                for (std::size_t j = t; j < d.cols; ++j)
                    if (d.at(i, j) != 0 &&
                        (!piv || boost::multiprecision::abs(d.at(i, j)) <
                                     boost::multiprecision::abs(d.at(piv->first, piv->second))))
                        piv = {{i, j}};
            if (!piv) break;  // submatrix is zero; trailing diagonal stays 0
            swap_rows(t, piv->first);
            swap_cols(t, piv->second);

            bool clean = true;
            for (std::size_t i = t + 1; i < d.rows; ++i)
                if (d.at(i, t) != 0) {
                    add_row(i, t, -(d.at(i, t) / d.at(t, t)));
                    if (d.at(i, t) != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < d.cols; ++j)
                if (d.at(t, j) != 0) {
                    add_col(j, t, -(d.at(t, j) / d.at(t, t)));
                    if (d.at(t, j) != 0) clean = false;
                }
            if (!clean) continue;  // remainders became new, smaller pivots

            // Divisibility: d_t must divide every remaining entry; pulling a
            // bad row up creates a smaller pivot and the loop repeats.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < d.rows && divides_all; ++i)
                for (std::size_t j = t + 1; j < d.cols && divides_all; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        add_row(t, i, 1);
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (d.at(t, t) < 0) negate_row(t);
    }

    if (!(res.u * a * res.v == res.d))
        throw std::logic_error("smith_normal_form: U*A*V != D");
    return res;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// G = Z^generators / (row space of relations).
struct FgGroupPresentation {
    std::size_t generators = 0;
    IntMatrix relations;  // each row is a relation vector of length `generators`

    FgGroupPresentation(std::size_t m, IntMatrix rel) : generators(m), relations(std::move(rel)) {
        if (m < 1) throw std::invalid_argument("FgGroupPresentation: need at least one generator");
        if (relations.rows > 0 && relations.cols != m)
            throw std::invalid_argument("FgGroupPresentation: relation width mismatch");
    }
};

struct FgClassification {
    std::size_t rank = 0;
    std::vector<BigInt> invariant_factors;  // nontrivial d_i
    bool hereditarily_atomic = false;
    bool hereditary_accp = false;  // always equal to hereditarily_atomic
};

/// Hereditary atomicity of a finitely generated abelian group comes down to
/// G/T being cyclic, i.e. free rank at most 1; hereditary ACCP coincides.
inline FgClassification classify_fg(const FgGroupPresentation& pres) {
    FgClassification out;
    std::size_t nonzero = 0;
    if (pres.relations.rows > 0) {
        SnfResult snf = smith_normal_form(pres.relations);
        for (const auto& di : snf.diagonal())
            if (di != 0) {
                ++nonzero;
                if (di > 1) out.invariant_factors.push_back(di);
            }
    }
    out.rank = pres.generators - nonzero;
    out.hereditarily_atomic = out.rank <= 1;
    out.hereditary_accp = out.hereditarily_atomic;
    return out;
}

/// The subgroup  U_n (1/d_n) Z  of Q described by a divisibility chain
/// d_1 | d_2 | ... together with the (intensional) statement of whether the
/// chain eventually stabilizes.
struct QSubgroupDescriptor {
    std::vector<BigInt> chain;
    bool stabilizes = false;

    QSubgroupDescriptor(std::vector<BigInt> c, bool stab) : chain(std::move(c)), stabilizes(stab) {
        if (chain.empty() || chain.front() < 1)
            throw std::invalid_argument("QSubgroupDescriptor: chain must start with d_1 >= 1");
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            if (chain[i + 1] % chain[i] != 0)
                throw std::invalid_argument("QSubgroupDescriptor: not a divisibility chain");
            if (!stabilizes && chain[i + 1] == chain[i])
                throw std::invalid_argument(
                    "QSubgroupDescriptor: non-stabilizing chain must ascend strictly");
        }
    }
};

struct QClassification {
    bool hereditarily_atomic = false;
    bool hereditary_accp = false;
};

/// Cyclic iff the chain stabilizes (then G = (1/d)Z = Z up to isomorphism).
inline QClassification classify_q_subgroup(const QSubgroupDescriptor& desc) {
    return {desc.stabilizes, desc.stabilizes};
}

// ---------------------------------------------------------------------------
// Witness monoids
// ---------------------------------------------------------------------------

/// Rank >= 2 witness: the lex cone on an integrally independent pair, with
/// the single atom v and the unfactorable element u.
struct WitnessRank2 {
    std::string u_label, v_label;
    LexConeReport realization;        // concrete Z^2 model: u = (1,0), v = (0,1)
    std::string atom_description;     // the v generator
    std::string witness_description;  // u has no atomic factorization
};

inline WitnessRank2 witness_rank2(std::string u_label, std::string v_label) {
    WitnessRank2 w;
    w.realization = lex_cone(2);
    w.atom_description = v_label;
    w.witness_description = u_label + " has no factorization into atoms; <A(M)> = N0*" + v_label;
    w.u_label = std::move(u_label);
    w.v_label = std::move(v_label);
    return w;
}

struct TorsionGroup {
    std::vector<BigInt> moduli;  // direct sum of Z/m_i, each m_i >= 2

    explicit TorsionGroup(std::vector<BigInt> m = {}) : moduli(std::move(m)) {
        for (const auto& mi : moduli)
            if (mi < 2) throw std::invalid_argument("TorsionGroup: moduli must be >= 2");
    }
    std::size_t components() const { return moduli.size(); }
};

struct TorsionElem {
    std::vector<BigInt> vals;

    static TorsionElem zero(const TorsionGroup& g) {
        return {std::vector<BigInt>(g.components(), BigInt(0))};
    }
    bool is_zero() const {
        return std::all_of(vals.begin(), vals.end(), [](const BigInt& v) { return v == 0; });
    }
};

inline TorsionElem torsion_reduce(const TorsionGroup& g, TorsionElem e) {
    if (e.vals.size() != g.components())
        throw std::invalid_argument("torsion_reduce: component mismatch");
    for (std::size_t i = 0; i < e.vals.size(); ++i) {
        e.vals[i] %= g.moduli[i];
        if (e.vals[i] < 0) e.vals[i] += g.moduli[i];
    }
    return e;
}

inline TorsionElem torsion_add(const TorsionGroup& g, const TorsionElem& a, const TorsionElem& b) {
    TorsionElem out = a;
    for (std::size_t i = 0; i < out.vals.size(); ++i) out.vals[i] += b.vals[i];
    return torsion_reduce(g, out);
}

inline TorsionElem torsion_scale(const TorsionGroup& g, const BigInt& c, const TorsionElem& a) {
    TorsionElem out = a;
    for (auto& v : out.vals) v *= c;
    return torsion_reduce(g, out);
}

/// Generator data of the antimatter witness submonoid M = < s_n, t_n >:
/// s_n has rational part 1/d_n, and every splitting identity
/// s_n = b_{n+1} s_{n+1} + t_n re-evaluates exactly in Q (+) T.
struct WitnessRank1 {
    std::vector<BigRational> s_rational;     // 1/d_1, 1/d_2, ...
    std::vector<TorsionElem> s_torsion;      // torsion components realizing the identities
    std::vector<BigInt> b;                   // b_{n+1} = d_{n+1}/d_n >= 2
    std::vector<TorsionElem> t;              // t_n
    TorsionGroup torsion;
    bool identities_verified = false;
    bool antimatter = false;   // every generator splits, so no atom exists
    bool not_a_group = false;  // -s_1 has no representation (rational parts are positive)
};

/// The split model G = (chain subgroup of Q) + T. Works on the truncation
/// described by the chain: torsion components of the s_n are back-filled
/// from the chosen t_n so the identities hold exactly.
inline WitnessRank1 witness_rank1_noncyclic(const QSubgroupDescriptor& desc,
                                            const TorsionGroup& torsion = TorsionGroup{},
                                            std::vector<TorsionElem> t_terms = {}) {
    if (desc.stabilizes)
        throw std::invalid_argument(
            "witness_rank1_noncyclic: stabilizing chain describes a cyclic group; no witness");
    if (desc.chain.size() < 2)
        throw std::invalid_argument("witness_rank1_noncyclic: need at least two chain terms");

    const std::size_t n = desc.chain.size();
    WitnessRank1 w;
    w.torsion = torsion;
    if (t_terms.empty()) t_terms.assign(n - 1, TorsionElem::zero(torsion));
    if (t_terms.size() != n - 1)
        throw std::invalid_argument("witness_rank1_noncyclic: need one torsion term per step");
    w.t = std::move(t_terms);

    for (std::size_t i = 0; i < n; ++i) w.s_rational.emplace_back(BigInt(1), desc.chain[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        w.b.push_back(desc.chain[i + 1] / desc.chain[i]);
        if (w.b.back() < 2) throw std::logic_error("witness_rank1_noncyclic: b_{n+1} < 2");
    }

    // sigma_n = t_n + b_{n+1} sigma_{n+1}, back-filled from sigma_N = 0.
    w.s_torsion.assign(n, TorsionElem::zero(torsion));
    for (std::size_t i = n - 1; i-- > 0;)
        w.s_torsion[i] =
            torsion_add(torsion, w.t[i], torsion_scale(torsion, w.b[i], w.s_torsion[i + 1]));

    w.identities_verified = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        bool rational_ok =
            w.s_rational[i] == BigRational(w.b[i]) * w.s_rational[i + 1];
        bool torsion_ok =
            w.s_torsion[i].vals ==
            torsion_add(torsion, torsion_scale(torsion, w.b[i], w.s_torsion[i + 1]), w.t[i]).vals;
        w.identities_verified = w.identities_verified && rational_ok && torsion_ok;
    }

    // Every s_n with a successor splits as b_{n+1} >= 2 copies of s_{n+1}
    // plus the invertible torsion term; torsion generators are invertible.
    w.antimatter = w.identities_verified;

    // Rational parts of all generators are nonnegative (s_n > 0, t_n have
    // rational part 0), so -c*s_1 < 0 is unrepresentable; the bounded search
    // confirms it for small c.
    w.not_a_group = true;
    for (long c = 1; c <= 4; ++c) {
        BigRational target = BigRational(-c) * w.s_rational[0];
        w.not_a_group = w.not_a_group && !detail::rational_combo(w.s_rational, target).has_value();
    }
    return w;
}

}  // namespace atomos
