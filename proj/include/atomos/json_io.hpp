#pragma once

/// JSON views of the certificate payloads. Exact values (big integers,
/// rationals, quadratic numbers) are rendered as strings so documents stay
/// bit-exact; key order is insertion order and every emitter is
/// deterministic.

#include "atomos/algebra.hpp"
#include "atomos/construction.hpp"
#include "atomos/groups.hpp"
#include "atomos/lattice.hpp"
#include "atomos/puiseux.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace atomos {

using Json = nlohmann::ordered_json;

inline Json to_json(const LatticePoint& p) {
    Json a = Json::array();
    for (const auto& c : p.coords) a.push_back(c.str());
    return a;
}

inline LatticePoint lattice_point_from_json(const Json& j) {
    LatticePoint p;
    for (const auto& c : j)
        p.coords.emplace_back(c.is_string() ? BigInt(c.get<std::string>())
                                            : BigInt(c.get<long long>()));
    return p;
}

inline Json to_json(const LatticeMonoid& m) {
    Json j;
    j["dim"] = m.dim;
    Json gens = Json::array();
    for (const auto& g : m.generators) gens.push_back(to_json(g));
    j["generators"] = gens;
    return j;
}

inline LatticeMonoid lattice_monoid_from_json(const Json& j) {
    std::vector<LatticePoint> gens;
    for (const auto& g : j.at("generators")) gens.push_back(lattice_point_from_json(g));
    return LatticeMonoid(j.at("dim").get<std::size_t>(), std::move(gens));
}

inline Json to_json(const MembershipCertificate& c, const LatticeMonoid& m) {
    Json j;
    j["target"] = to_json(c.target);
    j["generators"] = to_json(m)["generators"];
    Json coeffs = Json::object();
    for (const auto& [idx, v] : c.coefficients) coeffs[std::to_string(idx)] = v.str();
    j["coefficients"] = coeffs;
    return j;
}

inline Json to_json(const RationalCombination& c, const std::vector<BigRational>& gens) {
    Json j;
    j["target"] = rational_to_string(c.target);
    Json gj = Json::array();
    for (const auto& g : gens) gj.push_back(rational_to_string(g));
    j["generators"] = gj;
    Json coeffs = Json::object();
    for (const auto& [idx, v] : c.coefficients) coeffs[std::to_string(idx)] = v.str();
    j["coefficients"] = coeffs;
    return j;
}

inline Json to_json(const AtomReport& r) {
    Json j;
    j["index"] = r.index;
    j["generator"] = to_json(r.generator);
    j["isAtom"] = r.is_atom;
    if (r.certificate) {
        Json coeffs = Json::object();
        for (const auto& [idx, v] : r.certificate->coefficients)
            coeffs[std::to_string(idx)] = v.str();
        j["certificate"] = coeffs;
    }
    return j;
}

inline Json to_json(const ConstructionState& s) {
    Json j;
    j["stage"] = s.stage;
    Json pts = Json::array();
    for (const auto& p : s.points) pts.push_back(to_json(p));
    j["points"] = pts;
    Json ms = Json::array();
    for (const auto& m : s.multipliers) ms.push_back(m.str());
    j["multipliers"] = ms;
    Json ls = Json::array();
    for (const auto& l : s.claim1_bounds) ls.push_back(l.str());
    j["bounds"] = ls;
    return j;
}

inline ConstructionState construction_state_from_json(const Json& j) {
    ConstructionState s;
    s.stage = j.at("stage").get<unsigned>();
    for (const auto& p : j.at("points")) s.points.push_back(lattice_point_from_json(p));
    for (const auto& m : j.at("multipliers")) s.multipliers.emplace_back(m.get<std::string>());
    for (const auto& l : j.at("bounds")) s.claim1_bounds.emplace_back(l.get<std::string>());
    if (s.points.size() != 2 * s.stage + 1 || s.multipliers.size() != s.stage + 1)
        throw std::invalid_argument("construction state: inconsistent sizes");
    return s;
}

inline Json to_json(const AtomVerification& v) {
    Json j;
    j["passed"] = v.passed;
    Json stages = Json::array();
    for (const auto& st : v.stages) {
        Json sj;
        sj["stage"] = st.stage;
        sj["geometricPassed"] = st.geometric_passed;
        sj["algebraicPassed"] = st.algebraic_passed;
        Json reports = Json::array();
        for (const auto& r : st.algebraic) reports.push_back(to_json(r));
        sj["atoms"] = reports;
        stages.push_back(sj);
    }
    j["stages"] = stages;
    return j;
}

inline Json to_json(const AccpFailureChain& c) {
    Json j;
    Json ideals = Json::array();
    for (std::size_t k = 0; k < c.ideal_generators.size(); ++k) {
        Json e;
        e["b"] = to_json(c.ideal_generators[k]);
        Json coeffs = Json::object();
        for (const auto& [idx, v] : c.ideal_certs[k].coefficients)
            coeffs[std::to_string(idx)] = v.str();
        e["membership"] = coeffs;
        ideals.push_back(e);
    }
    j["ideals"] = ideals;
    Json wits = Json::array();
    for (std::size_t k = 0; k < c.witnesses.size(); ++k) {
        Json e;
        e["difference"] = to_json(c.witnesses[k]);
        Json coeffs = Json::object();
        for (const auto& [idx, v] : c.witness_certs[k].coefficients)
            coeffs[std::to_string(idx)] = v.str();
        e["membership"] = coeffs;
        wits.push_back(e);
    }
    j["witnesses"] = wits;
    return j;
}

inline Json to_json(const PuiseuxChain& c) {
    Json j;
    j["family"] = c.family;
    j["length"] = c.length;
    j["truncation"] = c.truncation;
    Json gens = Json::array();
    for (const auto& g : c.generators_used) gens.push_back(rational_to_string(g));
    j["generators"] = gens;
    Json ideals = Json::array();
    for (std::size_t n = 0; n < c.ideals.size(); ++n) {
        Json e;
        e["b"] = rational_to_string(c.ideals[n]);
        Json coeffs = Json::object();
        for (const auto& [idx, v] : c.ideal_certs[n].coefficients)
            coeffs[std::to_string(idx)] = v.str();
        e["membership"] = coeffs;
        ideals.push_back(e);
    }
    j["ideals"] = ideals;
    Json wits = Json::array();
    for (std::size_t n = 0; n < c.witness_certs.size(); ++n) {
        Json e;
        e["difference"] = rational_to_string(c.witness_certs[n].target);
        Json coeffs = Json::object();
        for (const auto& [idx, v] : c.witness_certs[n].coefficients)
            coeffs[std::to_string(idx)] = v.str();
        e["membership"] = coeffs;
        wits.push_back(e);
    }
    j["witnesses"] = wits;
    return j;
}

inline Json to_json(const FamilyAtomsReport& r) {
    Json j;
    j["family"] = r.family;
    j["closedFormAtomSet"] = r.closed_form;
    j["closedFormAsserted"] = r.closed_form_asserted;
    j["truncation"] = r.truncation;
    Json spots = Json::array();
    for (const auto& s : r.spots) {
        Json e;
        e["index"] = s.index;
        e["generator"] = rational_to_string(s.generator);
        e["confirmedAtom"] = s.confirmed_atom;
        e["horizon"] = s.horizon;
        e["conclusiveForFullMonoid"] = s.conclusive;
        spots.push_back(e);
    }
    j["spotChecks"] = spots;
    j["passed"] = r.passed;
    return j;
}

inline Json to_json(const NormalFormP& nf) {
    Json j;
    j["member"] = nf.member;
    if (nf.member) {
        j["n0"] = nf.n0.str();
        Json digits = Json::object();
        for (const auto& [i, d] : nf.digits) digits[std::to_string(i)] = d.str();
        j["digits"] = digits;
    }
    return j;
}

inline Json to_json(const GottiLiGenerators& g) {
    Json j;
    j["beta"] = quad_to_string(g.beta);
    j["truncation"] = g.truncation;
    Json a = Json::array();
    for (const auto& e : g.a_elems) a.push_back(Json{{"k", e.k.str()}, {"q", rational_to_string(e.q)}});
    j["aElements"] = a;
    Json b = Json::array();
    for (const auto& e : g.b_elems) b.push_back(Json{{"k", e.k.str()}, {"q", rational_to_string(e.q)}});
    j["bElements"] = b;
    j["rank"] = g.rank;
    j["enumerationNote"] = g.enumeration_note;
    return j;
}

inline Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

inline IntMatrix int_matrix_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("matrix: expected an array of rows");
    IntMatrix m(j.size(), j.empty() ? 0 : j.at(0).size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (j.at(i).size() != m.cols) throw std::invalid_argument("matrix: ragged rows");
        for (std::size_t k = 0; k < m.cols; ++k) {
            const Json& cell = j.at(i).at(k);
            m.at(i, k) = cell.is_string() ? BigInt(cell.get<std::string>())
                                          : BigInt(cell.get<long long>());
        }
    }
    return m;
}

inline Json to_json(const FgClassification& c) {
    Json j;
    j["rank"] = c.rank;
    Json f = Json::array();
    for (const auto& d : c.invariant_factors) f.push_back(d.str());
    j["invariantFactors"] = f;
    j["hereditarilyAtomic"] = c.hereditarily_atomic;
    j["hereditaryACCP"] = c.hereditary_accp;
    return j;
}

inline Json to_json(const WitnessRank1& w) {
    Json j;
    Json s = Json::array();
    for (const auto& v : w.s_rational) s.push_back(rational_to_string(v));
    j["s"] = s;
    Json b = Json::array();
    for (const auto& v : w.b) b.push_back(v.str());
    j["b"] = b;
    Json ids = Json::array();
    for (std::size_t i = 0; i + 1 < w.s_rational.size(); ++i)
        ids.push_back("s_" + std::to_string(i + 1) + " = " + w.b[i].str() + "*s_" +
                      std::to_string(i + 2) + " + t_" + std::to_string(i + 1));
    j["identities"] = ids;
    j["identitiesVerified"] = w.identities_verified;
    j["antimatter"] = w.antimatter;
    j["notAGroup"] = w.not_a_group;
    return j;
}

inline Json to_json(const FactorSearchReport& r) {
    Json j;
    j["status"] = factor_status_name(r.status);
    if (r.factors) {
        j["g"] = poly_to_string(r.factors->first);
        j["h"] = poly_to_string(r.factors->second);
    }
    j["candidatesTried"] = r.candidates_tried;
    j["budget"] = r.budget;
    j["universe"] = r.universe;
    j["caveat"] = r.caveat;
    return j;
}

inline Json to_json(const LengthDemo& d) {
    Json j;
    j["primesUpTo"] = d.primes_up_to;
    Json ids = Json::array();
    for (long q : d.identity_primes)
        ids.push_back("(x^(1/" + std::to_string(q) + "))^" + std::to_string(q) + " = x");
    j["identities"] = ids;
    j["identitiesVerified"] = d.identities_ok;
    Json ls = Json::array();
    for (const auto& l : d.length_set_of_one) ls.push_back(l.str());
    j["lengthSetOfOne"] = ls;
    return j;
}

}  // namespace atomos
