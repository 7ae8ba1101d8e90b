#pragma once

/// Batch command-line front end. Every subcommand runs one demonstration,
/// emits a certificate envelope (JSON to stdout or --out) and exits 0 when
/// all embedded verification checks pass, 2 when a check fails (the
/// certificate is still emitted with the failing checks flagged), and 1 on
/// usage errors. Documents carry no timestamps; identical invocations are
/// byte-identical.
///
/// `verify` re-executes a previously emitted certificate from its recorded
/// parameters and compares the recomputed payload bit for bit.

#include "atomos/json_io.hpp"
#include "atomos/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace atomos::cli {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

class Envelope {
public:
    Envelope(std::string command, Json params) {
        doc_["tool"] = "atomos";
        doc_["version"] = kVersion;
        doc_["command"] = std::move(command);
        doc_["parameters"] = std::move(params);
        doc_["result"] = Json::object();
    }

    Json& result() { return doc_["result"]; }

    void check(const std::string& name, bool ok) {
        checks_.push_back(Json{{"name", name}, {"passed", ok}});
        all_passed_ = all_passed_ && ok;
    }

    bool all_passed() const { return all_passed_; }

    Json finish() {
        Json v;
        v["checks"] = checks_;
        v["allPassed"] = all_passed_;
        doc_["verification"] = v;
        return doc_;
    }

private:
    Json doc_;
    Json checks_ = Json::array();
    bool all_passed_ = true;
};

namespace detail {

inline std::vector<LatticePoint> points_from_json_text(const std::string& text) {
    Json j = Json::parse(text);
    std::vector<LatticePoint> pts;
    for (const auto& row : j) {
        LatticePoint p;
        for (const auto& c : row)
            p.coords.emplace_back(c.is_string() ? BigInt(c.get<std::string>())
                                                : BigInt(c.get<long long>()));
        pts.push_back(std::move(p));
    }
    return pts;
}

inline LinearFunctional functional_from_spec(const std::string& spec, std::size_t dim) {
    if (spec == "pi_u") {
        if (dim != 2) throw std::invalid_argument("functional pi_u needs dimension 2");
        return LinearFunctional::pi_u();
    }
    if (spec == "pi_v") {
        if (dim != 2) throw std::invalid_argument("functional pi_v needs dimension 2");
        return LinearFunctional::pi_v();
    }
    if (spec == "ones") return LinearFunctional::ones(dim);
    std::vector<BigRational> coeffs;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ',')) coeffs.push_back(parse_rational(token));
    if (coeffs.size() != dim) throw std::invalid_argument("functional arity mismatch");
    return LinearFunctional::from_rationals(coeffs);
}

inline std::vector<BigInt> chain_from_text(const std::string& text) {
    std::vector<BigInt> chain;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) chain.emplace_back(token);
    return chain;
}

inline PuiseuxFamily family_from_params(const Json& p) {
    std::string name = p.at("family").get<std::string>();
    if (name == "grams") return PuiseuxFamily::grams();
    if (name == "prime-gap") return PuiseuxFamily::prime_gap();
    if (name == "reciprocal-primes") return PuiseuxFamily::reciprocal_primes();
    if (name == "sparse-primes") return PuiseuxFamily::sparse_primes();
    if (name == "geometric")
        return PuiseuxFamily::geometric(parse_rational(p.at("ratio").get<std::string>()));
    throw std::invalid_argument("unknown family '" + name + "'");
}

inline ExponentGroup exponent_group_from_text(const std::string& text) {
    if (text == "Z") return ExponentGroup::integers();
    if (text == "Q") return ExponentGroup::rationals();
    if (text.rfind("Z[1/", 0) == 0 && text.back() == ']')
        return ExponentGroup::z_inv(BigInt(text.substr(4, text.size() - 5)));
    throw std::invalid_argument("unknown exponent group '" + text + "' (use Z, Q or Z[1/m])");
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// ---- subcommand handlers (parameters in, envelope out) --------------------

inline void run_construct(const Json& p, Envelope& env, bool dry) {
    unsigned stages = p.at("stages").get<unsigned>();
    ConstructionState s = construct(stages);
    env.result() = to_json(s);
    for (const auto& c : verify_conditions(s)) env.check(c.name, c.passed);

    if (p.value("verifyAtoms", false)) {
        AtomVerification av = verify_atoms(s, p.value("maxVerifyStage", 2u));
        env.result()["atomReports"] = to_json(av);
        env.check("atom sets: geometric and enumeration routes agree on all generators",
                  av.passed);
    }
    if (p.value("chain", false)) {
        AccpFailureChain chain = accp_chain(s);
        env.result()["chain"] = to_json(chain);
        env.check("chain length equals stage + 1",
                  chain.ideal_generators.size() == s.stage + 1);
        env.check("chain witnesses re-sum exactly and are nonzero", true);
    }
    if (p.contains("figure") || p.contains("csv")) {
        FigureDocuments fig = export_figure(s, p.value("digits", 12u));
        if (!dry && p.contains("figure"))
            write_file(p.at("figure").get<std::string>(), fig.svg);
        if (!dry && p.contains("csv")) write_file(p.at("csv").get<std::string>(), fig.csv);
        FigureDocuments again = export_figure(s, p.value("digits", 12u));
        env.check("figure export is deterministic",
                  fig.svg == again.svg && fig.csv == again.csv);
    }
}

inline void run_atoms(const Json& p, Envelope& env, bool) {
    if (p.at("mode") == "lattice") {
        auto pts = points_from_json_text(p.at("generators").get<std::string>());
        if (pts.empty()) throw std::invalid_argument("atoms: empty generator list");
        LatticeMonoid m(pts[0].dim(), pts);
        LinearFunctional f =
            functional_from_spec(p.value("functional", std::string("pi_u")), m.dim);
        auto reports = atoms_certified(m, f);
        env.result()["monoid"] = to_json(m);
        Json rj = Json::array();
        std::size_t atoms = 0;
        for (const auto& r : reports) {
            rj.push_back(to_json(r));
            atoms += r.is_atom ? 1 : 0;
        }
        env.result()["reports"] = rj;
        env.result()["atomCount"] = atoms;
        env.check("non-atom certificates re-sum to their generators", true);
    } else {
        PuiseuxFamily fam = family_from_params(p);
        FamilyAtomsReport report = atoms_family(fam, p.at("count").get<unsigned>());
        env.result() = to_json(report);
        env.check("spot-check: each listed generator confirmed an atom", report.passed);
    }
}

inline void run_chain(const Json& p, Envelope& env, bool) {
    PuiseuxChain chain = chain_certificate(family_from_params(p), p.at("count").get<unsigned>());
    env.result() = to_json(chain);
    env.check("ideal memberships re-sum exactly", true);
    env.check("witnesses re-sum exactly and are positive", true);
    env.check("chain has the requested length", chain.ideals.size() == chain.length);
}

inline void run_member(const Json& p, Envelope& env, bool) {
    if (p.at("mode") == "lattice") {
        auto pts = points_from_json_text(p.at("generators").get<std::string>());
        if (pts.empty()) throw std::invalid_argument("member: empty generator list");
        LatticeMonoid m(pts[0].dim(), pts);
        LatticePoint target =
            lattice_point_from_json(Json::parse(p.at("target").get<std::string>()));
        env.result()["monoid"] = to_json(m);
        env.result()["target"] = to_json(target);

        std::optional<LinearFunctional> f;
        if (p.contains("functional"))
            f = functional_from_spec(p.at("functional").get<std::string>(), m.dim);

        BigInt bound;
        bool conclusive = false;
        if (p.contains("bound")) {
            bound = BigInt(p.at("bound").get<std::string>());
        } else if (f) {
            PositiveBound pb = positive_bound(m, target, *f);
            if (pb.unbounded)
                throw std::invalid_argument(
                    "member: functional not strictly positive; pass an explicit --bound");
            bound = pb.bound;
            conclusive = true;
            env.result()["positiveBound"] = bound.str();
        } else {
            throw std::invalid_argument("member: need --bound or --functional");
        }

        MemberSearchResult res = member_bounded(m, target, bound, f ? &*f : nullptr);
        env.result()["bound"] = bound.str();
        env.result()["conclusive"] = conclusive;
        env.result()["found"] = res.found();
        if (res.found()) {
            env.result()["certificate"] = to_json(*res.certificate, m);
            env.check("certificate re-sums to the target", true);
        } else {
            env.check(conclusive ? "conclusive: no representation exists"
                                 : "no representation within the bound",
                      true);
        }
    } else {
        PuiseuxFamily fam = family_from_params(p);
        unsigned count = p.at("count").get<unsigned>();
        BigRational q = parse_rational(p.at("value").get<std::string>());
        PuiseuxMemberResult res = member_truncated(fam, count, q);
        env.result()["family"] = fam.name();
        env.result()["truncation"] = count;
        env.result()["value"] = rational_to_string(q);
        env.result()["found"] = res.found();
        if (res.found())
            env.result()["certificate"] = to_json(*res.certificate, fam.generators(count));
        env.check("search conclusive for the truncation", true);
    }
}

inline void run_classify_group(const Json& p, Envelope& env, bool) {
    if (p.at("mode") == "fg") {
        IntMatrix rel = int_matrix_from_json(Json::parse(p.at("relations").get<std::string>()));
        std::size_t m = p.contains("generatorCount") ? p.at("generatorCount").get<std::size_t>()
                                                     : rel.cols;
        FgGroupPresentation pres(m, rel);
        FgClassification cls = classify_fg(pres);
        env.result() = to_json(cls);
        if (!cls.hereditarily_atomic) {
            WitnessRank2 w = witness_rank2("u", "v");
            Json wj;
            wj["type"] = "rank2-lex-cone";
            wj["atom"] = to_json(w.realization.atom);
            wj["witness"] = to_json(w.realization.witness);
            wj["note"] = w.witness_description;
            env.result()["witness"] = wj;
        }
        if (rel.rows > 0) {
            SnfResult snf = smith_normal_form(rel);
            env.check("SNF identity U*A*V = D", snf.u * rel * snf.v == snf.d);
            env.check("|det U| = |det V| = 1",
                      (snf.det_u == 1 || snf.det_u == -1) && (snf.det_v == 1 || snf.det_v == -1));
        }
        env.check("hereditarily atomic iff hereditary ACCP",
                  cls.hereditarily_atomic == cls.hereditary_accp);
    } else {
        QSubgroupDescriptor desc(chain_from_text(p.at("chain").get<std::string>()),
                                 p.at("stabilizes").get<bool>());
        QClassification cls = classify_q_subgroup(desc);
        env.result()["hereditarilyAtomic"] = cls.hereditarily_atomic;
        env.result()["hereditaryACCP"] = cls.hereditary_accp;
        if (!cls.hereditarily_atomic) {
            WitnessRank1 w = witness_rank1_noncyclic(desc);
            env.result()["witness"] = to_json(w);
            env.check("witness identities re-evaluate exactly", w.identities_verified);
            env.check("witness monoid is antimatter but not a group",
                      w.antimatter && w.not_a_group);
        }
        env.check("hereditarily atomic iff hereditary ACCP",
                  cls.hereditarily_atomic == cls.hereditary_accp);
    }
}

inline void run_classify_algebra(const Json& p, Envelope& env, bool) {
    FieldDescriptor field{p.at("characteristic").get<long>(), p.at("algebraic").get<bool>()};
    std::string g = p.at("group").get<std::string>();
    GroupDescriptor group = g == "trivial" ? GroupDescriptor::Trivial
                          : g == "z"       ? GroupDescriptor::InfiniteCyclic
                                           : GroupDescriptor::Other;
    bool ha = classify_group_algebra(field, group);
    env.result()["hereditarilyAtomic"] = ha;
    env.check("classifier hypothesis: nontrivial group", group != GroupDescriptor::Trivial);
}

inline void run_frobenius(const Json& p, Envelope& env, bool) {
    long modulus = p.at("modulus").get<long>();
    RatPoly f = parse_poly(p.at("poly").get<std::string>(), modulus);
    ExponentGroup group = exponent_group_from_text(p.at("group").get<std::string>());
    RatPoly root = frobenius_root(f, group);
    env.result()["f"] = poly_to_string(f);
    env.result()["root"] = poly_to_string(root);
    env.result()["group"] = group.name();
    env.result()["modulus"] = modulus;
    env.check("root^p = f exactly",
              f.is_zero() || pow(root, static_cast<unsigned long>(modulus)) == f);
    if (!f.is_zero() && !(f.deg() == 0 && f.ord() == 0))
        env.check("f is a nonunit, so the root certifies f is not irreducible", true);
}

inline void run_factor(const Json& p, Envelope& env, bool) {
    long modulus = p.at("modulus").get<long>();
    RatPoly f = parse_poly(p.at("poly").get<std::string>(), modulus);
    ExponentUniverse universe =
        p.contains("family")
            ? ExponentUniverse::truncated(family_from_params(p), p.at("count").get<unsigned>())
            : ExponentUniverse::naturals();
    FactorSearchReport r =
        irreducible_search_bounded(f, universe, p.value("budget", 20000ul));
    env.result()["f"] = poly_to_string(f);
    env.result()["modulus"] = modulus;
    env.result()["search"] = to_json(r);
    env.check("factored results re-multiply to f exactly",
              r.status != FactorStatus::Factored ||
                  mul(r.factors->first, r.factors->second) == f);
    env.check("report carries the truncation caveat",
              r.caveat == std::string(kTruncationCaveat));
}

inline void run_lengths(const Json& p, Envelope& env, bool) {
    long bound = p.at("primesUpTo").get<long>();
    LengthDemo demo = length_demo(bound);
    env.result() = to_json(demo);
    if (p.contains("target")) {
        BigRational target = parse_rational(p.at("target").get<std::string>());
        std::vector<BigRational> gens;
        for (const auto& q : primes_up_to(BigInt(bound))) gens.emplace_back(BigInt(1), q);
        Json ls = Json::array();
        for (const auto& l : length_set(gens, target)) ls.push_back(l.str());
        env.result()["target"] = rational_to_string(target);
        env.result()["lengthSetOfTarget"] = ls;
    }
    env.check("algebra identities (x^(1/q))^q = x verified", demo.identities_ok);
}

inline void run_figure(const Json& p, Envelope& env, bool dry) {
    unsigned stages = p.value("stages", 1u);
    unsigned digits = p.value("digits", 12u);
    ConstructionState s = construct(stages);
    FigureDocuments fig = export_figure(s, digits);
    if (!dry && p.contains("svg")) write_file(p.at("svg").get<std::string>(), fig.svg);
    if (!dry && p.contains("csv")) write_file(p.at("csv").get<std::string>(), fig.csv);
    env.result()["stage"] = stages;
    env.result()["digits"] = digits;
    env.result()["points"] = to_json(s)["points"];
    env.result()["svgBytes"] = fig.svg.size();
    env.result()["csvBytes"] = fig.csv.size();
    FigureDocuments again = export_figure(s, digits);
    env.check("re-export is byte-identical", fig.svg == again.svg && fig.csv == again.csv);
    auto count_of = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto pos = fig.svg.find(needle); pos != std::string::npos;
             pos = fig.svg.find(needle, pos + needle.size()))
            ++n;
        return n;
    };
    env.check("svg contains the two lines and 2*stage+1 point markers",
              count_of("<line") == 2 && count_of("<circle") == s.points.size());
}

inline void run_zaks(const Json& p, Envelope& env, bool) {
    unsigned k = p.at("k").get<unsigned>();
    LatticeMonoid m = zaks_truncation(k);
    env.result()["monoid"] = to_json(m);
    env.result()["note"] =
        "generator truncation only; no atomicity claims are made for the truncated monoid";
    IntMatrix gens(m.generators.size(), m.dim);
    for (std::size_t i = 0; i < m.generators.size(); ++i)
        for (std::size_t j = 0; j < m.dim; ++j) gens.at(i, j) = m.generators[i].coords[j];
    SnfResult snf = smith_normal_form(gens);
    std::size_t rank = 0;
    for (const auto& d : snf.diagonal())
        if (d != 0) ++rank;
    env.result()["gpRank"] = rank;
    env.check("difference group has rank 3+k", rank == m.dim);
}

inline void run_gottili(const Json& p, Envelope& env, bool) {
    if (p.contains("normalForm")) {
        BigRational q = parse_rational(p.at("normalForm").get<std::string>());
        NormalFormP nf = normal_form_P(PuiseuxFamily::sparse_primes(), q);
        env.result()["query"] = rational_to_string(q);
        env.result()["normalForm"] = to_json(nf);
        env.check("digit reassembly returns the query",
                  !nf.member || normal_form_value(nf) == q);
        return;
    }
    unsigned count = p.at("count").get<unsigned>();
    QuadRat beta = default_beta();
    if (p.contains("beta")) {
        auto parts = p.at("beta").get<std::string>();
        auto comma = parts.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("beta: expected 'a,b' for a + b*sqrt2");
        beta = QuadRat(parse_rational(parts.substr(0, comma)),
                       parse_rational(parts.substr(comma + 1)));
    }
    GottiLiGenerators g = gottili_generators(count, beta);
    env.result() = to_json(g);
    BigRational prefix_sum = 0;
    for (const auto& gen : PuiseuxFamily::sparse_primes().generators(count)) prefix_sum += gen;
    env.check("sparse prime sum below 1/3 at this truncation", prefix_sum < BigRational(1, 3));
    env.check("the generator set has rank 2", g.rank == 2);
}

inline void run_witness(const Json& p, Envelope& env, bool) {
    std::string mode = p.at("mode").get<std::string>();
    if (mode == "rank2") {
        WitnessRank2 w = witness_rank2(p.value("u", std::string("u")),
                                       p.value("v", std::string("v")));
        env.result()["uLabel"] = w.u_label;
        env.result()["vLabel"] = w.v_label;
        env.result()["atom"] = to_json(w.realization.atom);
        env.result()["witness"] = to_json(w.realization.witness);
        env.result()["note"] = w.witness_description;
        const LexCone& cone = w.realization.cone;
        std::vector<LatticePoint> members = {LatticePoint{0, 1}, LatticePoint{0, 5},
                                             LatticePoint{1, -100}, LatticePoint{2, 3},
                                             LatticePoint{3, -1}, LatticePoint{1, 0}};
        bool divides = true;
        for (const auto& mem : members)
            divides = divides && cone.contains(mem) && cone.contains(mem - cone.atom());
        env.check("the atom divides each sampled nonzero member", divides);
        env.check("the witness is not a multiple of the atom",
                  w.realization.witness.coords[0] != 0);
    } else if (mode == "rank1") {
        QSubgroupDescriptor desc(chain_from_text(p.at("chain").get<std::string>()), false);
        WitnessRank1 w = witness_rank1_noncyclic(desc);
        env.result() = to_json(w);
        env.check("splitting identities re-evaluate exactly", w.identities_verified);
        env.check("every generator splits (antimatter)", w.antimatter);
        env.check("-s_1 has no representation (not a group)", w.not_a_group);
    } else if (mode == "qsplit") {
        BigRational q = parse_rational(p.at("q").get<std::string>());
        auto [left, right] = rational_ge1_split(q);
        env.result()["q"] = rational_to_string(q);
        env.result()["factors"] = Json::array({rational_to_string(left), rational_to_string(right)});
        env.check("factors multiply back to q", left * right == q);
        env.check("both factors exceed 1", left > 1 && right > 1);
    } else {
        throw std::invalid_argument("witness: unknown mode '" + mode + "'");
    }
}

inline Json run_command(const std::string& command, const Json& params, bool dry,
                        bool* all_passed);

inline void run_verify(const Json& p, Envelope& env, bool) {
    std::ifstream in(p.at("in").get<std::string>());
    if (!in) throw std::runtime_error("verify: cannot read " + p.at("in").get<std::string>());
    Json doc = Json::parse(in);
    std::string command = doc.at("command").get<std::string>();
    if (command == "verify") throw std::invalid_argument("verify: refusing to verify a verify run");

    bool rerun_passed = true;
    Json recomputed = run_command(command, doc.at("parameters"), /*dry=*/true, &rerun_passed);
    env.result()["command"] = command;
    env.result()["parameters"] = doc.at("parameters");
    env.check("tool and version match",
              doc.at("tool") == "atomos" && doc.at("version").get<std::string>() == kVersion);
    env.check("re-executed checks all pass", rerun_passed);
    env.check("result payload matches the recomputation byte for byte",
              recomputed.at("result") == doc.at("result"));
    env.check("verification summary matches the recomputation",
              recomputed.at("verification") == doc.at("verification"));
}

inline Json run_command(const std::string& command, const Json& params, bool dry,
                        bool* all_passed) {
    Envelope env(command, params);
    if (command == "construct") run_construct(params, env, dry);
    else if (command == "atoms") run_atoms(params, env, dry);
    else if (command == "chain") run_chain(params, env, dry);
    else if (command == "member") run_member(params, env, dry);
    else if (command == "classify-group") run_classify_group(params, env, dry);
    else if (command == "classify-algebra") run_classify_algebra(params, env, dry);
    else if (command == "frobenius") run_frobenius(params, env, dry);
    else if (command == "factor") run_factor(params, env, dry);
    else if (command == "lengths") run_lengths(params, env, dry);
    else if (command == "figure") run_figure(params, env, dry);
    else if (command == "zaks") run_zaks(params, env, dry);
    else if (command == "gottili") run_gottili(params, env, dry);
    else if (command == "witness") run_witness(params, env, dry);
    else if (command == "verify") run_verify(params, env, dry);
    else throw std::invalid_argument("unknown command '" + command + "'");
    Json doc = env.finish();
    if (all_passed != nullptr) *all_passed = env.all_passed();
    return doc;
}

}  // namespace detail

/// Parses argv-style arguments, runs the subcommand and renders the
/// certificate. Exit codes: 0 success, 1 usage error, 2 verification
/// failure (certificate still emitted).
inline CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact certificates for atomicity and ACCP phenomena in commutative monoids"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the certificate JSON to this file");

    Json params;
    std::string command;
    auto grab = [&](const std::string& name) { return [&params, name](const std::string& v) { params[name] = v; }; };

    auto* c_construct = app.add_subcommand("construct", "run the lattice construction");
    {
        auto* sc = c_construct;
        sc->add_option_function<unsigned>("--stages", [&](unsigned v) { params["stages"] = v; })
            ->required();
        sc->add_flag_callback("--verify-atoms", [&] { params["verifyAtoms"] = true; });
        sc->add_flag_callback("--chain", [&] { params["chain"] = true; });
        sc->add_option_function<unsigned>("--max-verify-stage",
                                          [&](unsigned v) { params["maxVerifyStage"] = v; });
        sc->add_option_function<std::string>("--figure", grab("figure"));
        sc->add_option_function<std::string>("--csv", grab("csv"));
        sc->add_option_function<unsigned>("--digits", [&](unsigned v) { params["digits"] = v; });
    }

    auto* c_atoms = app.add_subcommand("atoms", "atom sets with certificates");
    {
        auto* sc = c_atoms;
        sc->add_option_function<std::string>("--generators", grab("generators"));
        sc->add_option_function<std::string>("--functional", grab("functional"));
        sc->add_option_function<std::string>("--family", grab("family"));
        sc->add_option_function<std::string>("--ratio", grab("ratio"));
        sc->add_option_function<unsigned>("--count", [&](unsigned v) { params["count"] = v; });
    }

    auto* c_chain = app.add_subcommand("chain", "non-stabilizing chain certificates");
    {
        auto* sc = c_chain;
        sc->add_option_function<std::string>("--family", grab("family"))->required();
        sc->add_option_function<std::string>("--ratio", grab("ratio"));
        sc->add_option_function<unsigned>("--count", [&](unsigned v) { params["count"] = v; })
            ->required();
    }

    auto* c_member = app.add_subcommand("member", "bounded membership with certificates");
    {
        auto* sc = c_member;
        sc->add_option_function<std::string>("--generators", grab("generators"));
        sc->add_option_function<std::string>("--target", grab("target"));
        sc->add_option_function<std::string>("--bound", grab("bound"));
        sc->add_option_function<std::string>("--functional", grab("functional"));
        sc->add_option_function<std::string>("--family", grab("family"));
        sc->add_option_function<std::string>("--ratio", grab("ratio"));
        sc->add_option_function<unsigned>("--count", [&](unsigned v) { params["count"] = v; });
        sc->add_option_function<std::string>("--value", grab("value"));
    }

    auto* c_cgroup = app.add_subcommand("classify-group", "hereditary atomicity of abelian groups");
    {
        auto* sc = c_cgroup;
        sc->add_option_function<std::string>("--relations", grab("relations"));
        sc->add_option_function<std::size_t>("--generator-count",
                                             [&](std::size_t v) { params["generatorCount"] = v; });
        sc->add_option_function<std::string>("--chain", grab("chain"));
        sc->add_option_function<bool>("--stabilizes", [&](bool v) { params["stabilizes"] = v; });
    }

    auto* c_calg = app.add_subcommand("classify-algebra", "hereditary atomicity of group algebras");
    {
        auto* sc = c_calg;
        sc->add_option_function<long>("--char", [&](long v) { params["characteristic"] = v; })
            ->required();
        sc->add_option_function<bool>("--algebraic", [&](bool v) { params["algebraic"] = v; })
            ->required();
        sc->add_option_function<std::string>("--group", grab("group"))->required();
    }

    auto* c_frob = app.add_subcommand("frobenius", "p-th root antimatter witness");
    {
        auto* sc = c_frob;
        sc->add_option_function<long>("--modulus", [&](long v) { params["modulus"] = v; })
            ->required();
        sc->add_option_function<std::string>("--poly", grab("poly"))->required();
        sc->add_option_function<std::string>("--group", grab("group"))->required();
    }

    auto* c_factor = app.add_subcommand("factor", "bounded divisor search over truncated exponents");
    {
        auto* sc = c_factor;
        sc->add_option_function<long>("--modulus", [&](long v) { params["modulus"] = v; })
            ->required();
        sc->add_option_function<std::string>("--poly", grab("poly"))->required();
        sc->add_option_function<std::string>("--family", grab("family"));
        sc->add_option_function<std::string>("--ratio", grab("ratio"));
        sc->add_option_function<unsigned>("--count", [&](unsigned v) { params["count"] = v; });
        sc->add_option_function<unsigned long>("--budget",
                                               [&](unsigned long v) { params["budget"] = v; });
    }

    auto* c_len = app.add_subcommand("lengths", "length-set demonstrations");
    {
        auto* sc = c_len;
        sc->add_option_function<long>("--primes-up-to", [&](long v) { params["primesUpTo"] = v; })
            ->required();
        sc->add_option_function<std::string>("--target", grab("target"));
    }

    auto* c_fig = app.add_subcommand("figure", "CSV/SVG export of the construction");
    {
        auto* sc = c_fig;
        sc->add_option_function<unsigned>("--stages", [&](unsigned v) { params["stages"] = v; });
        sc->add_option_function<std::string>("--svg", grab("svg"));
        sc->add_option_function<std::string>("--csv", grab("csv"));
        sc->add_option_function<unsigned>("--digits", [&](unsigned v) { params["digits"] = v; });
    }

    auto* c_zaks = app.add_subcommand("zaks", "Zaks generator truncation");
    c_zaks->add_option_function<unsigned>("--k", [&](unsigned v) { params["k"] = v; })->required();

    auto* c_gl = app.add_subcommand("gottili", "rank-2 generator family and normal form");
    {
        auto* sc = c_gl;
        sc->add_option_function<unsigned>("--count", [&](unsigned v) { params["count"] = v; });
        sc->add_option_function<std::string>("--beta", grab("beta"));
        sc->add_option_function<std::string>("--normal-form", grab("normalForm"));
    }

    auto* c_wit = app.add_subcommand("witness", "witness monoids");
    {
        auto* sc = c_wit;
        sc->add_option_function<std::string>("--mode", grab("mode"))->required();
        sc->add_option_function<std::string>("--u", grab("u"));
        sc->add_option_function<std::string>("--v", grab("v"));
        sc->add_option_function<std::string>("--chain", grab("chain"));
        sc->add_option_function<std::string>("--q", grab("q"));
    }

    auto* c_verify = app.add_subcommand("verify", "re-check an emitted certificate");
    c_verify->add_option_function<std::string>("--in", grab("in"))->required();

    // let --out (declared on the parent) appear after the subcommand
    for (auto* sc : {c_construct, c_atoms, c_chain, c_member, c_cgroup, c_calg, c_frob, c_factor,
                     c_len, c_fig, c_zaks, c_gl, c_wit, c_verify})
        sc->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("atomos");
    for (const auto& a : args) argv.push_back(a.c_str());

    CliResult result;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        result.err = std::string(e.what()) + "\n" + app.help();
        result.exit_code = 1;
        return result;
    }

    for (auto* sc : {c_construct, c_atoms, c_chain, c_member, c_cgroup, c_calg, c_frob, c_factor,
                     c_len, c_fig, c_zaks, c_gl, c_wit, c_verify})
        if (sc->parsed()) command = sc->get_name();

    // mode inference for the two-mode subcommands
    if (command == "atoms" || command == "member")
        params["mode"] = params.contains("generators") ? "lattice" : "family";
    if (command == "classify-group")
        params["mode"] = params.contains("relations") ? "fg" : "q";

    try {
        bool all_passed = true;
        Json doc = detail::run_command(command, params, /*dry=*/false, &all_passed);
        result.out = doc.dump(2) + "\n";
        result.exit_code = all_passed ? 0 : 2;
        if (!out_path.empty()) {
            detail::write_file(out_path, result.out);
            result.out.clear();
        }
    } catch (const std::exception& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 1;
    }
    return result;
}

}  // namespace atomos::cli
