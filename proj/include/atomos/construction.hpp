#pragma once

/// The rank-2 lattice construction: a concrete tangent line with no lattice
/// points, the inductive point/multiplier sequences, exact verification of
/// the stage conditions, certified atom checks, the non-stabilizing chain of
/// principal ideals, and CSV/SVG figure export.
///
/// Geometry, all scaled by sqrt3 so that every comparison lives in Q(sqrt2)
/// or reduces to cmp_sqrt3:
///   L  : y = sqrt2*x + sqrt3, tangent to the unit circle, lattice-free
///   L0 : y = sqrt2*x (the line R*v through the origin)
///   pi_u(x, y) = y - sqrt2*x,  pi_v(x, y) = x + sqrt2*y
/// The true projections onto u = (-sqrt2, 1)/sqrt3 and v = (1, sqrt2)/sqrt3
/// are these divided by sqrt3. Membership in the upper half-space of L is
/// pi_u >= sqrt3, i.e. cmp_sqrt3(pi_u, 1) >= 0.

#include "atomos/exact.hpp"
#include "atomos/lattice.hpp"
#include "atomos/quadratic.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atomos {

struct TangentLine {
    static QuadRat pi_u(const LatticePoint& p) {
        return {BigRational(p.coords[1]), BigRational(-p.coords[0])};
    }
    static QuadRat pi_v(const LatticePoint& p) {
        return {BigRational(p.coords[0]), BigRational(p.coords[1])};
    }
    static QuadRat pi_v_abs(const LatticePoint& p) { return quad_abs(pi_v(p)); }

    /// -1: strictly below L (L^-), +1: strictly above (L^+). Never 0 on
    /// nonzero lattice points: pi_u = sqrt3 would make sqrt3 rational over
    /// Q(sqrt2).
    static int side_of_line(const LatticePoint& p) { return cmp_sqrt3(pi_u(p), 1); }

    /// Sign of the L0 half-space functional (+1 strictly above the axis).
    static int side_of_axis(const LatticePoint& p) { return quad_sign(pi_u(p)); }
};

/// Scans sqrt2-convergents (p_k, q_k) in increasing k; the candidate is
/// w = +-(q_k, p_k) with the sign fixed so that pi_u(w) > 0. Returns the
/// first candidate with pi_u(w) < threshold, |pi_v(w)| > pv_floor and
/// w strictly below L. Terminates because pi_u of the candidates decreases
/// strictly to 0 while |pi_v| grows without bound.
inline LatticePoint find_near_axis_point(const QuadExt& threshold, const QuadExt& pv_floor) {
    if (threshold.sign_of() <= 0)
        throw std::invalid_argument("find_near_axis_point: threshold must be positive");
    ConvergentStream stream;
    while (true) {
        Convergent c = stream.next();
        QuadRat err = c.error();  // p - q*sqrt2, never zero
        bool flip = quad_sign(err) < 0;
        LatticePoint w = flip ? LatticePoint{std::vector<BigInt>{-c.q, -c.p}}
                              : LatticePoint{std::vector<BigInt>{c.q, c.p}};
        QuadRat pu = quad_abs(err);
        if (quadext_cmp(QuadExt(pu), threshold) >= 0) continue;
        if (quadext_cmp(QuadExt(TangentLine::pi_v_abs(w)), pv_floor) <= 0) continue;
        if (cmp_sqrt3(pu, 1) >= 0) continue;  // must lie in L^-
        return w;
    }
}

/// Minimal m with m*a in the upper half-space of L. Requires pi_u(a) > 0,
/// otherwise no multiple ever reaches L^+.
inline BigInt min_multiple_into_upper(const LatticePoint& a) {
    QuadRat pu = TangentLine::pi_u(a);
    if (quad_sign(pu) <= 0)
        throw std::domain_error("min_multiple_into_upper: pi_u(a) <= 0");
    auto in_upper = [&](const BigInt& m) { return cmp_sqrt3(pu * BigRational(m), 1) > 0; };
    BigInt hi = 1;
    while (!in_upper(hi)) hi *= 2;
    BigInt lo = hi / 2;  // in_upper(lo) is false (or lo == 0)
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) / 2;
        (in_upper(mid) ? hi : lo) = mid;
    }
    return hi;
}

/// Least l in N with l * min_i pi_u(a_i) > 4 * max_i |pi_v(a_i)|; the common
/// 1/sqrt3 factor of the true projections cancels in the ratio.
inline BigInt claim1_bound_values(const QuadRat& min_pu, const QuadRat& max_pv_abs) {
    return quad_floor((max_pv_abs * BigRational(4)) / min_pu) + 1;
}

inline BigInt claim1_bound(const std::vector<LatticePoint>& points) {
    if (points.empty()) throw std::invalid_argument("claim1_bound: empty point list");
    QuadRat min_pu = TangentLine::pi_u(points[0]);
    QuadRat max_pv = TangentLine::pi_v_abs(points[0]);
    for (const auto& p : points) {
        QuadRat pu = TangentLine::pi_u(p);
        QuadRat pv = TangentLine::pi_v_abs(p);
        if (quad_cmp(pu, min_pu) < 0) min_pu = pu;
        if (quad_cmp(pv, max_pv) > 0) max_pv = pv;
    }
    return claim1_bound_values(min_pu, max_pv);
}

struct ConstructionState {
    std::vector<LatticePoint> points;   // a_0, a_1, ..., a_{2n}
    std::vector<BigInt> multipliers;    // m_0, m_2, ..., m_{2n}
    std::vector<BigInt> claim1_bounds;  // l used entering each stage
    unsigned stage = 0;                 // n

    LatticeMonoid stage_monoid(unsigned k) const {
        if (k > stage) throw std::invalid_argument("stage_monoid: beyond constructed stage");
        std::vector<LatticePoint> gens(points.begin(), points.begin() + 2 * k + 1);
        return LatticeMonoid(2, std::move(gens));
    }
    LatticeMonoid monoid() const { return stage_monoid(stage); }
};

struct ConditionCheck {
    std::string name;
    bool passed = false;
};

/// Re-derives every stated stage condition from the raw state, exactly.
inline std::vector<ConditionCheck> verify_conditions(const ConstructionState& s) {
    std::vector<ConditionCheck> checks;
    auto add = [&](std::string name, bool ok) { checks.push_back({std::move(name), ok}); };

    bool c1 = true;
    for (unsigned k = 0; k < s.stage; ++k)
        c1 = c1 && (s.points[2 * k + 1] ==
                    s.multipliers[k] * s.points[2 * k] - s.multipliers[k + 1] * s.points[2 * k + 2]);
    add("condition(1): a_{2k+1} = m_{2k} a_{2k} - m_{2k+2} a_{2k+2}", c1);

    bool c2 = true;
    for (unsigned k = 0; k <= s.stage; ++k) {
        const BigInt& m = s.multipliers[k];
        QuadRat pu = TangentLine::pi_u(s.points[2 * k]);
        c2 = c2 && cmp_sqrt3(pu * BigRational(m), 1) > 0;
        c2 = c2 && (m == 1 || cmp_sqrt3(pu * BigRational(m - 1), 1) < 0);
    }
    add("condition(2): m_{2k} minimal with m a_{2k} in L^+", c2);

    bool c3 = true;
    for (std::size_t k = 0; k < s.points.size(); ++k) {
        c3 = c3 && quad_sign(TangentLine::pi_u(s.points[k])) > 0;
        if (k + 1 < s.points.size())
            c3 = c3 && quad_cmp(TangentLine::pi_u(s.points[k + 1]),
                                TangentLine::pi_u(s.points[k])) < 0;
    }
    add("condition(3): d(a_{k+1}, L0) < d(a_k, L0), all points strictly above L0", c3);

    bool off_line = true;
    for (const auto& p : s.points) off_line = off_line && TangentLine::side_of_line(p) != 0;
    add("no constructed point lies on L", off_line);

    bool even_below = true;
    for (unsigned k = 0; k <= s.stage; ++k)
        even_below = even_below && TangentLine::side_of_line(s.points[2 * k]) < 0;
    add("a_{2k} in L^-", even_below);

    bool mult_ge2 = true;
    for (const auto& m : s.multipliers) mult_ge2 = mult_ge2 && m >= 2;
    add("m_{2k} >= 2", mult_ge2);

    bool aux = true;
    for (unsigned k = 1; k <= s.stage; ++k) {
        const BigInt& l = s.claim1_bounds[k - 1];
        aux = aux && cmp_sqrt3(TangentLine::pi_v_abs(s.points[2 * k - 1]), BigRational(l)) > 0;
        aux = aux && cmp_sqrt3(TangentLine::pi_v_abs(s.points[2 * k]), BigRational(l)) > 0;
        aux = aux && quad_cmp(TangentLine::pi_v_abs(s.points[2 * k]),
                              TangentLine::pi_v_abs(s.multipliers[k - 1] * s.points[2 * k - 2])) > 0;
    }
    add("aux bound: |pi_v| of new points exceeds l (and |pi_v(m_{2n} a_{2n})|)", aux);

    return checks;
}

/// Runs the inductive construction for the requested number of stages,
/// asserting conditions (1)-(3) exactly after each stage. A failed
/// assertion names the violated condition; it would indicate a bug, not a
/// data error.
inline ConstructionState construct(unsigned stages) {
    ConstructionState s;
    s.points.push_back(LatticePoint{0, 1});
    s.multipliers.push_back(min_multiple_into_upper(s.points[0]));

    for (unsigned n = 0; n < stages; ++n) {
        BigInt l = claim1_bound(s.points);
        const LatticePoint& a2n = s.points[2 * n];
        const BigInt& m2n = s.multipliers[n];

        // threshold = (m_{2n} pi_u(a_{2n}) - sqrt3) / 2, positive since
        // m_{2n} a_{2n} lies strictly above L.
        QuadExt threshold{TangentLine::pi_u(a2n) * BigRational(m2n, 2), BigRational(-1, 2)};
        QuadExt pv_floor = quadext_max(QuadExt{QuadRat(), BigRational(l)},
                                       QuadExt(TangentLine::pi_v_abs(m2n * a2n)));

        LatticePoint a_next = find_near_axis_point(threshold, pv_floor);
        BigInt m_next = min_multiple_into_upper(a_next);
        LatticePoint a_mid = m2n * a2n - m_next * a_next;

        s.points.push_back(std::move(a_mid));
        s.points.push_back(std::move(a_next));
        s.multipliers.push_back(m_next);
        s.claim1_bounds.push_back(l);
        s.stage = n + 1;

        for (const auto& check : verify_conditions(s))
            if (!check.passed)
                throw std::logic_error("construct: violated " + check.name);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Atom verification (geometric and enumerative routes)
// ---------------------------------------------------------------------------

struct StageAtomCheck {
    unsigned stage = 0;
    bool geometric_passed = false;  // the two cone exclusions for the new generators
    bool algebraic_passed = false;  // enumeration oracle: every generator is an atom
    std::vector<AtomReport> algebraic;
};

struct AtomVerification {
    std::vector<StageAtomCheck> stages;
    bool passed = false;
};

/// Two independent checks per stage monoid M_{2k}:
///  (i) geometric: a_{2k-1} is not in cone(M_{2k-2} u {a_{2k}}) and
///      symmetrically for a_{2k}; this certifies the two new generators.
///  (ii) enumerative: atoms_certified with the strictly positive functional
///      pi_u decides the full atom set conclusively.
/// The report passes iff both routes confirm A(M_{2k}) = all generators.
inline AtomVerification verify_atoms(const ConstructionState& s, unsigned max_stage = 2) {
    AtomVerification out;
    out.passed = true;
    LinearFunctional pu = LinearFunctional::pi_u();
    unsigned top = std::min(max_stage, s.stage);
    for (unsigned k = 0; k <= top; ++k) {
        StageAtomCheck check;
        check.stage = k;

        check.geometric_passed = true;
        if (k >= 1) {
            std::vector<LatticePoint> prev(s.points.begin(), s.points.begin() + 2 * k - 1);
            std::vector<LatticePoint> with_new = prev, with_mid = prev;
            with_new.push_back(s.points[2 * k]);
            with_mid.push_back(s.points[2 * k - 1]);
            check.geometric_passed = !cone_member_2d(with_new, s.points[2 * k - 1]) &&
                                     !cone_member_2d(with_mid, s.points[2 * k]);
        }

        check.algebraic = atoms_certified(s.stage_monoid(k), pu);
        check.algebraic_passed = std::all_of(check.algebraic.begin(), check.algebraic.end(),
                                             [](const AtomReport& r) { return r.is_atom; });

        out.passed = out.passed && check.geometric_passed && check.algebraic_passed;
        out.stages.push_back(std::move(check));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The non-stabilizing chain of principal ideals
// ---------------------------------------------------------------------------

struct AccpFailureChain {
    // b_k = m_{2k} a_{2k}; the ideals b_k + M ascend strictly.
    std::vector<LatticePoint> ideal_generators;
    std::vector<MembershipCertificate> ideal_certs;    // b_k as an element of M
    std::vector<LatticePoint> witnesses;               // b_k - b_{k+1} = a_{2k+1}
    std::vector<MembershipCertificate> witness_certs;  // ... as an element of M
};

inline AccpFailureChain accp_chain(const ConstructionState& s) {
    if (s.stage < 1) throw std::invalid_argument("accp_chain: need at least one stage");
    LatticeMonoid m = s.monoid();
    AccpFailureChain chain;
    for (unsigned k = 0; k <= s.stage; ++k) {
        LatticePoint b = s.multipliers[k] * s.points[2 * k];
        chain.ideal_certs.emplace_back(m, b, std::map<std::size_t, BigInt>{{2 * k, s.multipliers[k]}});
        chain.ideal_generators.push_back(std::move(b));
    }
    for (unsigned k = 0; k < s.stage; ++k) {
        LatticePoint w = chain.ideal_generators[k] - chain.ideal_generators[k + 1];
        if (w != s.points[2 * k + 1])
            throw std::logic_error("accp_chain: witness does not equal a_{2k+1}");
        if (quad_sign(TangentLine::pi_u(w)) <= 0)
            throw std::logic_error("accp_chain: witness not a nonzero element above L0");
        chain.witness_certs.emplace_back(m, w, std::map<std::size_t, BigInt>{{2 * k + 1, BigInt(1)}});
        chain.witnesses.push_back(std::move(w));
    }
    return chain;
}

// ---------------------------------------------------------------------------
// Figure export
// ---------------------------------------------------------------------------

struct FigureDocuments {
    std::string csv;
    std::string svg;
};

/// CSV with exact coordinates and decimal approximations of the scaled
/// projections; SVG showing the points, L and L0. Decimal values are
/// approximate renderings of exact data at the stated precision; both
/// documents are deterministic byte-for-byte.
inline FigureDocuments export_figure(const ConstructionState& s, unsigned digits = 12) {
    if (s.stage < 1) throw std::invalid_argument("export_figure: need at least one stage");
    FigureDocuments out;

    out.csv = "index,x,y,pi_u_exact,pi_v_exact,pi_u_dec,pi_v_dec\n";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const LatticePoint& p = s.points[i];
        out.csv += std::to_string(i) + "," + p.coords[0].str() + "," + p.coords[1].str() + "," +
                   quad_to_string(TangentLine::pi_u(p)) + "," +
                   quad_to_string(TangentLine::pi_v(p)) + "," +
                   quad_decimal(TangentLine::pi_u(p), digits) + "," +
                   quad_decimal(TangentLine::pi_v(p), digits) + "\n";
    }

    // Bounding box over the points and the origin, padded by 10%.
    BigRational xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const auto& p : s.points) {
        xmin = std::min(xmin, BigRational(p.coords[0]));
        xmax = std::max(xmax, BigRational(p.coords[0]));
        ymin = std::min(ymin, BigRational(p.coords[1]));
        ymax = std::max(ymax, BigRational(p.coords[1]));
    }
    BigRational padx = (xmax - xmin + 2) / 10, pady = (ymax - ymin + 2) / 10;
    xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;

    const BigRational view(800);
    BigRational span = std::max(xmax - xmin, ymax - ymin);
    BigRational scale = view / span;
    auto sx = [&](const BigRational& x) { return (x - xmin) * scale; };
    auto sy = [&](const BigRational& y) { return view - (y - ymin) * scale; };
    auto fmt = [&](const BigRational& v) { return decimal_string(v, digits); };

    // Plot-only rational stand-ins for sqrt2 and sqrt3.
    BigRational r2 = sqrt_lower(2, 40), r3 = sqrt_lower(3, 40);
    auto line_svg = [&](const BigRational& slope, const BigRational& icept, const char* name) {
        BigRational y0 = slope * xmin + icept, y1 = slope * xmax + icept;
        return std::string("  <line id=\"") + name + "\" x1=\"" + fmt(sx(xmin)) + "\" y1=\"" +
               fmt(sy(y0)) + "\" x2=\"" + fmt(sx(xmax)) + "\" y2=\"" + fmt(sy(y1)) +
               "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    };

    out.svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
              "viewBox=\"0 0 800 800\">\n";
    out.svg += "  <!-- decimal precision: " + std::to_string(digits) +
               " digits; approximate rendering of exact data -->\n";
    out.svg += line_svg(r2, BigRational(0), "L0");
    out.svg += line_svg(r2, r3, "L");
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        BigRational px = sx(BigRational(s.points[i].coords[0]));
        BigRational py = sy(BigRational(s.points[i].coords[1]));
        out.svg += "  <circle cx=\"" + fmt(px) + "\" cy=\"" + fmt(py) +
                   "\" r=\"4\" fill=\"#1f3b73\"/>\n";
        out.svg += "  <text x=\"" + fmt(px + 2) + "\" y=\"" + fmt(py - 2) +
                   "\" font-size=\"12\">a_" + std::to_string(i) + "</text>\n";
    }
    out.svg += "</svg>\n";
    return out;
}

}  // namespace atomos
