#include "atomos/lattice.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace atomos;
namespace oracle = atomos::testing;

namespace {

LatticeMonoid monoid2(std::initializer_list<LatticePoint> pts) {
    return LatticeMonoid(2, std::vector<LatticePoint>(pts));
}

const LatticeMonoid stage1{2, {LatticePoint{0, 1}, LatticePoint{125, 177}, LatticePoint{-5, -7}}};

}  // namespace

TEST_CASE("member_bounded pinned examples") {
    LatticeMonoid basis = monoid2({LatticePoint{1, 0}, LatticePoint{0, 1}});
    auto res = member_bounded(basis, LatticePoint{2, 3}, 5);
    REQUIRE(res.found());
    CHECK(res.certificate->coefficients.at(0) == 2);
    CHECK(res.certificate->coefficients.at(1) == 3);

    LatticeMonoid skew = monoid2({LatticePoint{2, 1}, LatticePoint{1, 2}});
    CHECK_FALSE(member_bounded(skew, LatticePoint{1, 1}, 3).found());

    auto zero = member_bounded(basis, LatticePoint{0, 0}, 5);
    REQUIRE(zero.found());
    CHECK(zero.certificate->coefficients.empty());

    CHECK_THROWS_AS(member_bounded(basis, LatticePoint{std::vector<BigInt>{1, 2, 3}}, 5),
                    std::invalid_argument);
}

TEST_CASE("member_bounded agrees with plain box enumeration") {
    std::mt19937_64 rng(20241001);
    std::uniform_int_distribution<int> coord(-3, 3), k_gens(1, 3), dims(2, 3), bound_d(0, 4);
    int checked = 0;
    while (checked < 200) {
        std::size_t d = dims(rng);
        std::vector<LatticePoint> gens;
        for (int i = 0, k = k_gens(rng); i < k; ++i) {
            LatticePoint p;
            for (std::size_t j = 0; j < d; ++j) p.coords.emplace_back(coord(rng));
            if (p.is_zero()) continue;
            if (std::find(gens.begin(), gens.end(), p) != gens.end()) continue;
            gens.push_back(p);
        }
        if (gens.empty()) continue;
        LatticeMonoid m(d, gens);
        long bound = bound_d(rng);

        LatticePoint target;
        if (checked % 2 == 0) {
            // plant a member: a random combination within the box
            target.coords.assign(d, BigInt(0));
            for (const auto& g : m.generators)
                target = target + BigInt(bound_d(rng) % (bound + 1)) * g;
        } else {
            for (std::size_t j = 0; j < d; ++j) target.coords.emplace_back(coord(rng) * 2);
        }

        auto fast = member_bounded(m, target, bound);
        auto slow = oracle::member_box_oracle(m, target, bound);
        CHECK(fast.found() == slow.has_value());
        ++checked;
    }
}

TEST_CASE("member_bounded: positivity pruning never changes the outcome") {
    std::mt19937_64 rng(20241005);
    std::uniform_int_distribution<int> coord(-3, 4), k_gens(1, 4), bnd(0, 5), tgt(-4, 10);
    LinearFunctional ones = LinearFunctional::ones(2);
    int checked = 0;
    while (checked < 300) {
        std::vector<LatticePoint> gens;
        for (int i = 0, k = k_gens(rng); i < k; ++i) {
            LatticePoint p{coord(rng), coord(rng)};
            if (p.is_zero() || p.coords[0] + p.coords[1] <= 0) continue;
            if (std::find(gens.begin(), gens.end(), p) != gens.end()) continue;
            gens.push_back(p);
        }
        if (gens.empty()) continue;
        LatticeMonoid m(2, gens);
        LatticePoint w{tgt(rng), tgt(rng)};
        long bound = bnd(rng);
        auto hinted = member_bounded(m, w, bound, &ones);
        auto box = oracle::member_box_oracle(m, w, bound);
        CHECK(hinted.found() == box.has_value());
        ++checked;
    }
}

TEST_CASE("positive_bound caps every representation") {
    std::mt19937_64 rng(20241006);
    std::uniform_int_distribution<int> coord(-3, 4), k_gens(1, 4), tgt(-4, 10);
    LinearFunctional ones = LinearFunctional::ones(2);
    int checked = 0;
    while (checked < 150) {
        std::vector<LatticePoint> gens;
        for (int i = 0, k = k_gens(rng); i < k; ++i) {
            LatticePoint p{coord(rng), coord(rng)};
            if (p.is_zero() || p.coords[0] + p.coords[1] <= 0) continue;
            if (std::find(gens.begin(), gens.end(), p) != gens.end()) continue;
            gens.push_back(p);
        }
        if (gens.empty()) continue;
        LatticeMonoid m(2, gens);
        LatticePoint w{tgt(rng), tgt(rng)};
        auto pb = positive_bound(m, w, ones);
        REQUIRE_FALSE(pb.unbounded);
        // a representation found in a much wider box still fits the cap
        if (auto wide = oracle::member_box_oracle(m, w, 20))
            for (const auto& c : *wide) CHECK(c <= pb.bound);
        ++checked;
    }
}

TEST_CASE("positive_bound") {
    LatticeMonoid basis = monoid2({LatticePoint{1, 0}, LatticePoint{0, 1}});
    auto pb = positive_bound(basis, LatticePoint{3, 4}, LinearFunctional::ones(2));
    CHECK_FALSE(pb.unbounded);
    CHECK(pb.bound == 7);

    // Stage-1 monoid with the tangent projection: bound ceil(2/(5*sqrt2-7))
    // = ceil(14 + 10*sqrt2) = 29, since 28 < 14 + 10*sqrt2 < 29.
    CHECK(oracle::interval_sign(BigRational(14 - 28), BigRational(10), 0) == 1);
    CHECK(oracle::interval_sign(BigRational(14 - 29), BigRational(10), 0) == -1);
    auto pb1 = positive_bound(stage1, LatticePoint{0, 2}, LinearFunctional::pi_u());
    CHECK_FALSE(pb1.unbounded);
    CHECK(pb1.bound == 29);

    auto bad = positive_bound(monoid2({LatticePoint{1, 1}}), LatticePoint{2, 2},
                              LinearFunctional::pi_u());
    CHECK(bad.unbounded);  // pi_u(1,1) = 1 - sqrt2 < 0
}

TEST_CASE("atoms_certified") {
    LatticeMonoid m = monoid2({LatticePoint{1, 0}, LatticePoint{0, 1}, LatticePoint{1, 1}});
    auto reports = atoms_certified(m, LinearFunctional::ones(2));
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].is_atom);
    CHECK(reports[1].is_atom);
    CHECK_FALSE(reports[2].is_atom);
    REQUIRE(reports[2].certificate.has_value());
    CHECK(reports[2].certificate->coefficients.at(0) == 1);
    CHECK(reports[2].certificate->coefficients.at(1) == 1);

    auto basis = atoms_certified(monoid2({LatticePoint{1, 0}, LatticePoint{0, 1}}),
                                 LinearFunctional::ones(2));
    CHECK(std::all_of(basis.begin(), basis.end(), [](const AtomReport& r) { return r.is_atom; }));

    auto s1 = atoms_certified(stage1, LinearFunctional::pi_u());
    CHECK(std::all_of(s1.begin(), s1.end(), [](const AtomReport& r) { return r.is_atom; }));

    SECTION("idempotent: re-running reproduces the reports") {
        auto again = atoms_certified(m, LinearFunctional::ones(2));
        REQUIRE(again.size() == reports.size());
        for (std::size_t i = 0; i < reports.size(); ++i) {
            CHECK(again[i].is_atom == reports[i].is_atom);
            CHECK(again[i].generator == reports[i].generator);
        }
    }

    SECTION("atom set independent of generator order") {
        std::vector<LatticePoint> pts = {LatticePoint{2, 1}, LatticePoint{1, 2},
                                         LatticePoint{3, 3}, LatticePoint{1, 0}};
        std::vector<LatticePoint> atoms_a, atoms_b;
        for (const auto& r : atoms_certified(LatticeMonoid(2, pts), LinearFunctional::ones(2)))
            if (r.is_atom) atoms_a.push_back(r.generator);
        std::reverse(pts.begin(), pts.end());
        for (const auto& r : atoms_certified(LatticeMonoid(2, pts), LinearFunctional::ones(2)))
            if (r.is_atom) atoms_b.push_back(r.generator);
        auto key = [](const LatticePoint& p) { return p.to_string(); };
        std::sort(atoms_a.begin(), atoms_a.end(),
                  [&](const auto& x, const auto& y) { return key(x) < key(y); });
        std::sort(atoms_b.begin(), atoms_b.end(),
                  [&](const auto& x, const auto& y) { return key(x) < key(y); });
        CHECK(atoms_a == atoms_b);
    }

    CHECK_THROWS_AS(atoms_certified(monoid2({LatticePoint{1, 1}, LatticePoint{0, 1}}),
                                    LinearFunctional::pi_u()),
                    std::domain_error);
}

TEST_CASE("cone membership pinned examples") {
    std::vector<LatticePoint> quadrant = {LatticePoint{1, 0}, LatticePoint{0, 1}};
    CHECK(cone_member_2d(quadrant, LatticePoint{2, 3}));
    CHECK_FALSE(cone_member_2d(quadrant, LatticePoint{-1, 2}));
    CHECK(cone_member_2d({LatticePoint{2, 1}, LatticePoint{1, 2}}, LatticePoint{1, 1}));
    CHECK(cone_member_2d(quadrant, LatticePoint{0, 0}));

    // degenerate shapes
    std::vector<LatticePoint> ray = {LatticePoint{2, 4}};
    CHECK(cone_member_2d(ray, LatticePoint{1, 2}));
    CHECK_FALSE(cone_member_2d(ray, LatticePoint{-1, -2}));
    std::vector<LatticePoint> line = {LatticePoint{1, 1}, LatticePoint{-2, -2}};
    CHECK(cone_member_2d(line, LatticePoint{-3, -3}));
    CHECK_FALSE(cone_member_2d(line, LatticePoint{1, 0}));
    std::vector<LatticePoint> half = {LatticePoint{1, 0}, LatticePoint{-1, 0}, LatticePoint{0, 1}};
    CHECK(cone_member_2d(half, LatticePoint{-7, 5}));
    CHECK_FALSE(cone_member_2d(half, LatticePoint{0, -1}));
    std::vector<LatticePoint> plane = {LatticePoint{1, 0}, LatticePoint{-1, 1},
                                       LatticePoint{-1, -1}};
    CHECK(cone_member_2d(plane, LatticePoint{123, -456}));

    SECTION("QuadRat query point") {
        std::pair<QuadRat, QuadRat> w{QuadRat(BigRational(1), BigRational(1)),
                                      QuadRat(BigRational(1), BigRational(0))};
        CHECK(cone_member_2d(quadrant, w));  // (1 + sqrt2, 1)
        std::pair<QuadRat, QuadRat> wneg{QuadRat(BigRational(0), BigRational(-1)),
                                         QuadRat(BigRational(1), BigRational(0))};
        CHECK_FALSE(cone_member_2d(quadrant, wneg));  // (-sqrt2, 1)
    }
}

TEST_CASE("cone membership: exhaustive over small generator pairs") {
    std::vector<LatticePoint> pool;
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y)
            if (x != 0 || y != 0) pool.push_back(LatticePoint{x, y});
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i; j < pool.size(); ++j) {
            std::vector<LatticePoint> gens = {pool[i], pool[j]};
            for (long wx = -3; wx <= 3; ++wx)
                for (long wy = -3; wy <= 3; ++wy) {
                    LatticePoint w{wx, wy};
                    bool got = cone_member_2d(gens, w);
                    bool want = oracle::cone_member_oracle(gens, w);
                    INFO(pool[i].to_string() << " " << pool[j].to_string() << " w="
                                             << w.to_string());
                    REQUIRE(got == want);
                }
        }
}

TEST_CASE("cone membership agrees with the pair-decomposition oracle") {
    std::mt19937_64 rng(20241002);
    std::uniform_int_distribution<int> coord(-4, 4), k_gens(1, 5);
    int checked = 0;
    while (checked < 100) {
        std::vector<LatticePoint> gens;
        for (int i = 0, k = k_gens(rng); i < k; ++i) {
            LatticePoint p{coord(rng), coord(rng)};
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        LatticePoint w{coord(rng), coord(rng)};
        CHECK(cone_member_2d(gens, w) == oracle::cone_member_oracle(gens, w));
        ++checked;
    }
}

TEST_CASE("lex cone") {
    auto report = lex_cone(2);
    CHECK(report.cone.contains(LatticePoint{0, 5}));
    CHECK_FALSE(report.cone.contains(LatticePoint{0, -1}));
    CHECK(report.cone.contains(LatticePoint{1, -100}));
    CHECK(report.atom == LatticePoint{0, 1});
    CHECK(report.witness == LatticePoint{1, 0});
    CHECK_FALSE(report.atomic);
    CHECK_THROWS_AS(lex_cone(1), std::invalid_argument);

    SECTION("the atom divides every sampled nonzero member") {
        std::mt19937_64 rng(20241003);
        std::uniform_int_distribution<int> first(0, 3), second(-50, 50);
        int seen = 0;
        while (seen < 100) {
            LatticePoint w{first(rng), second(rng)};
            if (w.is_zero() || !report.cone.contains(w)) continue;
            CHECK(report.cone.contains(w - report.atom));
            ++seen;
        }
    }

    SECTION("higher dimension") {
        auto r3 = lex_cone(3);
        CHECK(r3.cone.contains(LatticePoint{0, 0, 4}));
        CHECK(r3.cone.contains(LatticePoint{0, 2, -9}));
        CHECK_FALSE(r3.cone.contains(LatticePoint{0, -1, 7}));
        CHECK(r3.atom == LatticePoint{0, 0, 1});
    }
}

TEST_CASE("zaks truncation") {
    auto m1 = zaks_truncation(1);
    CHECK(m1.dim == 4);
    REQUIRE(m1.generators.size() == 5);
    CHECK(m1.generators[0] == LatticePoint{1, 0, 0, 0});
    CHECK(m1.generators[1] == LatticePoint{0, 1, 0, 0});
    CHECK(m1.generators[2] == LatticePoint{0, 0, 1, 0});
    CHECK(m1.generators[3] == LatticePoint{0, 0, 0, 1});
    CHECK(m1.generators[4] == LatticePoint{-1, 1, 1, -1});

    auto m2 = zaks_truncation(2);
    CHECK(m2.dim == 5);
    CHECK(m2.generators.size() == 7);
    CHECK(m2.generators.back() == LatticePoint{-2, 1, 1, 0, -1});

    CHECK_THROWS_AS(zaks_truncation(0), std::invalid_argument);
}

TEST_CASE("product with N_0^extra") {
    LatticeMonoid m(2, {LatticePoint{0, 1}});
    auto prod = product_with_n0(m, 1);
    CHECK(prod.dim == 3);
    REQUIRE(prod.generators.size() == 2);
    CHECK(prod.generators[0] == LatticePoint{0, 1, 0});
    CHECK(prod.generators[1] == LatticePoint{0, 0, 1});

    auto same = product_with_n0(m, 0);
    CHECK(same.generators == m.generators);

    SECTION("atoms of the product are the padded atoms plus the new units") {
        LatticeMonoid base = monoid2({LatticePoint{1, 0}, LatticePoint{0, 1}, LatticePoint{1, 1}});
        auto prod2 = product_with_n0(base, 2);
        LinearFunctional f = LinearFunctional::ones(4);
        auto reports = atoms_certified(prod2, f);
        std::vector<bool> expected = {true, true, false, true, true};
        REQUIRE(reports.size() == expected.size());
        for (std::size_t i = 0; i < reports.size(); ++i) CHECK(reports[i].is_atom == expected[i]);
    }
}

TEST_CASE("certificates re-sum by construction") {
    LatticeMonoid basis = monoid2({LatticePoint{1, 0}, LatticePoint{0, 1}});
    CHECK_THROWS_AS(
        MembershipCertificate(basis, LatticePoint{2, 2}, {{0, BigInt(1)}, {1, BigInt(1)}}),
        std::logic_error);
    CHECK_THROWS_AS(MembershipCertificate(basis, LatticePoint{1, 0}, {{7, BigInt(1)}}),
                    std::invalid_argument);
}

TEST_CASE("monoid validation") {
    CHECK_THROWS_AS(monoid2({LatticePoint{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(monoid2({LatticePoint{1, 2}, LatticePoint{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(LatticeMonoid(2, {LatticePoint{1, 2, 3}}), std::invalid_argument);
}
