#include "atomos/construction.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace atomos;

namespace {

QuadExt plain(const QuadRat& q) { return QuadExt(q); }

}  // namespace

TEST_CASE("tangent line configuration") {
    // The normal direction (-sqrt2, 1) has squared norm 3, so the line
    // pi_u = sqrt3 has distance exactly sqrt3/sqrt3 = 1 from the origin.
    QuadRat nx(BigRational(0), BigRational(-1));
    QuadRat ny(BigRational(1), BigRational(0));
    CHECK(nx * nx + ny * ny == QuadRat(BigRational(3), BigRational(0)));
    // Tangent point (-sqrt2, 1)/sqrt3: second quadrant.
    CHECK(quad_sign(nx) < 0);
    CHECK(quad_sign(ny) > 0);

    SECTION("no lattice point lies on L") {
        std::mt19937_64 rng(20241101);
        std::uniform_int_distribution<long> coord(-1000, 1000);
        for (int i = 0; i < 200; ++i) {
            LatticePoint p{coord(rng), coord(rng)};
            CHECK(cmp_sqrt3(TangentLine::pi_u(p), 1) != 0);
        }
    }
}

TEST_CASE("find_near_axis_point pinned examples") {
    // threshold (2 - sqrt3)/2, no pv floor -> sign-flipped convergent (7,5)
    QuadExt half_gap{QuadRat(BigRational(1), BigRational(0)), BigRational(-1, 2)};
    CHECK(find_near_axis_point(half_gap, plain(QuadRat())) == LatticePoint{-5, -7});

    // threshold 1/5 -> (2,3) qualifies already
    CHECK(find_near_axis_point(plain(QuadRat(BigRational(1, 5), BigRational(0))),
                               plain(QuadRat())) == LatticePoint{2, 3});

    // pv floor |pi_v(-5,-7)| = 5 + 7*sqrt2 pushes to the next convergent
    CHECK(find_near_axis_point(half_gap, plain(QuadRat(BigRational(5), BigRational(7)))) ==
          LatticePoint{12, 17});

    CHECK_THROWS_AS(find_near_axis_point(plain(QuadRat()), plain(QuadRat())),
                    std::invalid_argument);
}

TEST_CASE("min_multiple_into_upper") {
    CHECK(min_multiple_into_upper(LatticePoint{0, 1}) == 2);
    CHECK(min_multiple_into_upper(LatticePoint{-5, -7}) == 25);
    CHECK_THROWS_AS(min_multiple_into_upper(LatticePoint{1, 1}), std::domain_error);

    SECTION("postcondition: m reaches L^+, m-1 does not") {
        for (const auto& p : {LatticePoint{0, 1}, LatticePoint{-5, -7}, LatticePoint{2, 3},
                              LatticePoint{12, 17}}) {
            BigInt m = min_multiple_into_upper(p);
            QuadRat pu = TangentLine::pi_u(p);
            CHECK(cmp_sqrt3(pu * BigRational(m), 1) > 0);
            CHECK(cmp_sqrt3(pu * BigRational(m - 1), 1) < 0);
        }
    }
}

TEST_CASE("claim1_bound") {
    // Only a_0 = (0,1): least l with l > 4*sqrt2.
    CHECK(claim1_bound({LatticePoint{0, 1}}) == 6);

    // Stage-1 points: l = floor(10580 + 7456*sqrt2) + 1 = 21125, frozen
    // after checking the defining inequalities exactly.
    std::vector<LatticePoint> pts = {LatticePoint{0, 1}, LatticePoint{125, 177},
                                     LatticePoint{-5, -7}};
    BigInt l = claim1_bound(pts);
    QuadRat min_pu(BigRational(-7), BigRational(5));          // 5*sqrt2 - 7
    QuadRat max_pv(BigRational(125), BigRational(177));       // 125 + 177*sqrt2
    CHECK(quad_sign(min_pu * BigRational(l) - max_pv * BigRational(4)) > 0);
    CHECK(quad_sign(min_pu * BigRational(l - 1) - max_pv * BigRational(4)) <= 0);
    CHECK(l == 21125);

    SECTION("doubling the projection target at least doubles the bound") {
        QuadRat pu(BigRational(1), BigRational(0));
        QuadRat pv(BigRational(0), BigRational(1));
        BigInt l1 = claim1_bound_values(pu, pv);
        BigInt l2 = claim1_bound_values(pu, pv * BigRational(2));
        CHECK(l2 >= 2 * l1);
    }
    CHECK_THROWS_AS(claim1_bound({}), std::invalid_argument);
}

TEST_CASE("construct stages 0 and 1 match the frozen values") {
    auto s0 = construct(0);
    REQUIRE(s0.points.size() == 1);
    CHECK(s0.points[0] == LatticePoint{0, 1});
    REQUIRE(s0.multipliers.size() == 1);
    CHECK(s0.multipliers[0] == 2);

    auto s1 = construct(1);
    REQUIRE(s1.points.size() == 3);
    CHECK(s1.points[0] == LatticePoint{0, 1});
    CHECK(s1.points[1] == LatticePoint{125, 177});
    CHECK(s1.points[2] == LatticePoint{-5, -7});
    CHECK(s1.multipliers == std::vector<BigInt>{2, 25});

    // a_1 = m_0 a_0 - m_2 a_2 rearranges to 25*(-5,-7) + (125,177) = (0,2).
    CHECK(BigInt(25) * s1.points[2] + s1.points[1] == LatticePoint{0, 2});

    SECTION("pi_u strictly decreases: 1 > 177-125*sqrt2 > 5*sqrt2-7 > 0") {
        QuadRat p0 = TangentLine::pi_u(s1.points[0]);
        QuadRat p1 = TangentLine::pi_u(s1.points[1]);
        QuadRat p2 = TangentLine::pi_u(s1.points[2]);
        CHECK(quad_cmp(p1, p0) < 0);
        CHECK(quad_cmp(p2, p1) < 0);
        CHECK(quad_sign(p2) > 0);
    }
}

TEST_CASE("construct stage 2 extends consistently") {
    auto s = construct(2);
    REQUIRE(s.points.size() == 5);
    CHECK(s.points[4] == LatticePoint{13860, 19601});
    CHECK(s.multipliers[2] == 67900);
    CHECK(s.points[3] == BigInt(25) * s.points[2] - BigInt(67900) * s.points[4]);
    CHECK(s.claim1_bounds == std::vector<BigInt>{6, 21125});
    for (const auto& c : verify_conditions(s)) {
        INFO(c.name);
        CHECK(c.passed);
    }
}

TEST_CASE("conditions hold exactly through stage 3") {
    auto s = construct(3);
    for (const auto& c : verify_conditions(s)) {
        INFO(c.name);
        CHECK(c.passed);
    }
    CHECK(s.points.size() == 7);
}

TEST_CASE("deeper stages stay exact despite Pell-like coordinate growth") {
    auto s = construct(5);
    for (const auto& c : verify_conditions(s)) {
        INFO(c.name);
        CHECK(c.passed);
    }
    CHECK(s.points.size() == 11);
    // the chain keeps ascending strictly
    auto chain = accp_chain(s);
    CHECK(chain.ideal_generators.size() == 6);
    for (const auto& w : chain.witnesses) CHECK(quad_sign(TangentLine::pi_u(w)) > 0);
}

TEST_CASE("verify_atoms: both routes confirm all generators for stages 0-2") {
    auto s = construct(2);
    auto v = verify_atoms(s, 2);
    CHECK(v.passed);
    REQUIRE(v.stages.size() == 3);
    for (const auto& st : v.stages) {
        CHECK(st.geometric_passed);
        CHECK(st.algebraic_passed);
    }
    CHECK(v.stages[0].algebraic.size() == 1);
    CHECK(v.stages[1].algebraic.size() == 3);
    CHECK(v.stages[2].algebraic.size() == 5);
}

TEST_CASE("verify_atoms flags a planted non-atom with a certificate") {
    auto s = construct(1);
    // a_0 + a_2 = (-5,-6) is a sum of two other generators.
    s.points[1] = s.points[0] + s.points[2];
    auto v = verify_atoms(s, 1);
    CHECK_FALSE(v.passed);
    const auto& reports = v.stages[1].algebraic;
    REQUIRE(reports.size() == 3);
    CHECK_FALSE(reports[1].is_atom);
    REQUIRE(reports[1].certificate.has_value());
    CHECK(reports[1].certificate->coefficients.at(0) == 1);
    CHECK(reports[1].certificate->coefficients.at(2) == 1);
}

TEST_CASE("accp_chain") {
    auto s1 = construct(1);
    auto chain = accp_chain(s1);
    REQUIRE(chain.ideal_generators.size() == 2);
    CHECK(chain.ideal_generators[0] == LatticePoint{0, 2});
    CHECK(chain.ideal_generators[1] == LatticePoint{-125, -175});
    REQUIRE(chain.witnesses.size() == 1);
    CHECK(chain.witnesses[0] == LatticePoint{125, 177});

    SECTION("witness positivity and re-summation across stages") {
        auto s = construct(3);
        auto big = accp_chain(s);
        CHECK(big.ideal_generators.size() == s.stage + 1);
        for (std::size_t k = 0; k < big.witnesses.size(); ++k) {
            CHECK(big.ideal_generators[k] ==
                  big.ideal_generators[k + 1] + big.witnesses[k]);
            CHECK(quad_sign(TangentLine::pi_u(big.witnesses[k])) > 0);
        }
    }

    CHECK_THROWS_AS(accp_chain(construct(0)), std::invalid_argument);
}

TEST_CASE("figure export") {
    auto s = construct(1);
    auto fig = export_figure(s);
    auto again = export_figure(s);
    CHECK(fig.csv == again.csv);
    CHECK(fig.svg == again.svg);

    int rows = 0;
    for (char c : fig.csv) rows += c == '\n';
    CHECK(rows == 4);  // header + a_0, a_1, a_2

    auto count = [&](const std::string& needle) {
        std::size_t n = 0, pos = fig.svg.find(needle);
        while (pos != std::string::npos) {
            ++n;
            pos = fig.svg.find(needle, pos + needle.size());
        }
        return n;
    };
    CHECK(count("<line") == 2);
    CHECK(count("<circle") == 3);

    CHECK_THROWS_AS(export_figure(construct(0)), std::invalid_argument);
}

TEST_CASE("aux bound: |pi_v| of each odd point exceeds the stage bound") {
    auto s = construct(3);
    for (unsigned k = 1; k <= s.stage; ++k) {
        CHECK(cmp_sqrt3(TangentLine::pi_v_abs(s.points[2 * k - 1]),
                        BigRational(s.claim1_bounds[k - 1])) > 0);
    }
}
