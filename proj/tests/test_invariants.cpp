#include "doctest.h"

#include <chrono>

#include "trihopf/errors.hpp"
#include "trihopf/invariants.hpp"
#include "trihopf/linalg.hpp"

using namespace trihopf;

namespace {

CycScalar q(long n, long d = 1) { return CycScalar(Rational(n, d)); }

ModuliPoint pt(long a, long b, long c) { return {q(a), q(b), q(c)}; }

FamilyDatum case1(const ModuliPoint& p) { return family_datum(Family::Case1, lifting_to_B(p)); }

FamilyDatum z2(const CycScalar& b) {
    CycMatrix m(1, 1);
    m << b;
    return make_family_datum(build_character_rep(build_group({2}), {{1}}), 1, SymTensor(m));
}

// rank of B - B^{a^m} for case 1 by hand: entries scale by 1 - zeta8^{-(w_i + w_j) m}
std::size_t oracle_rank(const ModuliPoint& p, long m) {
    const long w[2] = {1, 3};
    CycMatrix d(2, 2);
    const CycScalar b[2][2] = {{p.l1, p.l3 * q(1, 2)}, {p.l3 * q(1, 2), p.l2}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d(i, j) = b[i][j] * (q(1) - CycScalar::root_of_unity(8, -(w[i] + w[j]) * m));
    return static_cast<std::size_t>(rank(d));
}

}  // namespace

TEST_CASE("coalgebra types of case 1") {
    const auto t100 = coalgebra_type(case1(pt(1, 0, 0)));
    CHECK(t100.multiset() == std::vector<std::size_t>{0, 1, 1, 1});
    CHECK(t100.ranks.front() == 0);
    CHECK(coalgebra_type(case1(pt(1, 1, 1))).multiset() == std::vector<std::size_t>{0, 2, 2, 2});
    CHECK(coalgebra_type(case1(pt(0, 0, 0))).all_zero());
    CHECK(coalgebra_type(case1(pt(0, 0, 0))).ranks.size() == 4);

    for (const auto& p : {pt(1, 0, 0), pt(1, 1, 1), pt(0, 3, 0), pt(0, 0, 1), pt(2, -1, 5)}) {
        const auto t = coalgebra_type(case1(p));
        for (long m = 0; m < 4; ++m) CHECK(t.ranks[static_cast<std::size_t>(m)] == oracle_rank(p, m));
    }
}

TEST_CASE("coalgebra type is invariant along moduli orbits") {
    // (t^2 l1, s^2 l2, ts l3) and the swap
    const ModuliPoint p = pt(3, -2, 7);
    const ModuliPoint scaled{p.l1 * q(4), p.l2 * q(9, 4), p.l3 * q(3)};
    const ModuliPoint swapped{p.l2, p.l1, p.l3};
    CHECK(coalgebra_type(case1(p)) == coalgebra_type(case1(scaled)));
    CHECK(coalgebra_type(case1(p)) == coalgebra_type(case1(swapped)));
}

TEST_CASE("Clifford blocks") {
    SUBCASE("B = 0 gives exterior blocks") {
        const FamilyDatum d = case1(pt(0, 0, 0));
        const CliffordReport r = verify_clifford_blocks(build_A(d), d);
        REQUIRE(r.blocks.size() == 4);
        CHECK(r.all_pass());
        for (const auto& b : r.blocks) {
            CHECK(b.block_dim == 8);
            CHECK(b.form.rank() == 1);
            CHECK(b.form.q(2, 2) == q(1));
        }
    }
    SUBCASE("generic rational B on case 1") {
        const FamilyDatum d = case1({q(2, 3), q(-5, 7), q(11, 4)});
        const HopfStructure a = build_A(d);
        const CliffordReport r = verify_clifford_blocks(a, d);
        REQUIRE(r.blocks.size() == 4);
        CHECK(r.all_pass());
        std::size_t total = 0;
        for (const auto& b : r.blocks) total += b.block_dim;
        CHECK(total == a.dim);
        CHECK(is_zero_matrix(CycMatrix(r.blocks[0].form.q.topLeftCorner(2, 2))));
        CHECK(r.blocks[0].form.rank() == 1);
        CHECK(r.blocks[1].form.rank() == 3);
    }
    SUBCASE("a structure with the wrong form fails with a witness") {
        const FamilyDatum d = case1(pt(1, 1, 1));
        const FamilyDatum other = case1(pt(0, 0, 0));
        const CliffordReport r = verify_clifford_blocks(build_A(other), d);
        CHECK_FALSE(r.all_pass());
        bool any = false;
        for (const auto& b : r.blocks)
            if (!b.pass) {
                any = true;
                CHECK(b.failure.find("xy+yx") != std::string::npos);
            }
        CHECK(any);
    }
    SUBCASE("Sweedler type") {
        const FamilyDatum d = z2(q(5));
        const CliffordReport r = verify_clifford_blocks(build_A(d), d);
        CHECK(r.all_pass());
        CHECK(r.blocks.size() == 1);
    }
}

TEST_CASE("pointedness") {
    CHECK(is_pointed(case1(pt(0, 0, 0))));
    CHECK_FALSE(is_pointed(case1(pt(1, 1, 1))));
    CHECK_FALSE(is_pointed(case1(pt(0, 0, 1))));
    CHECK_FALSE(is_pointed(family_datum(Family::Case3, lifting_to_B(pt(1, 0, 0)))));
    for (long b : {0, 1, -3, 7}) CHECK(is_pointed(z2(q(b))));
    CHECK(is_pointed(z2(CycScalar::root_of_unity(8, 1))));

    // V = chi + chi^-1 on Z_4 with u = a^2: e1 e2 is invariant
    auto z4 = build_group({4});
    CycMatrix m(2, 2);
    m << q(0), q(1, 2), q(1, 2), q(0);
    const FamilyDatum inv = make_family_datum(build_character_rep(z4, {{1}, {3}}), 2, SymTensor(m));
    CHECK(is_pointed(inv));
    CHECK(coalgebra_type(inv).all_zero());
}

TEST_CASE("moduli") {
    CHECK(moduli_equivalent(pt(1, 1, 1), pt(4, 1, 2), Family::Case1).equivalent);
    CHECK(moduli_equivalent(pt(1, 2, 0), pt(2, 1, 0), Family::Case2).equivalent);
    const ModuliVerdict v = moduli_equivalent(pt(1, 1, 1), pt(1, 1, 2), Family::Case1);
    CHECK_FALSE(v.equivalent);
    CHECK(*v.invariant_p == q(1));
    CHECK(*v.invariant_q == q(1, 4));

    CHECK(canonical_form(pt(0, 0, 0)) == pt(0, 0, 0));
    CHECK(canonical_form(pt(0, -3, 0)) == pt(1, 0, 0));
    CHECK(canonical_form(pt(2, -3, 0)) == pt(1, 1, 0));
    CHECK(canonical_form(pt(0, 0, 5)) == pt(0, 0, 1));
    CHECK(canonical_form(pt(3, 0, 5)) == pt(0, 1, 1));
    CHECK(canonical_form(pt(0, 3, 5)) == pt(0, 1, 1));
    CHECK(canonical_form(pt(3, 2, 5)) == ModuliPoint{q(6, 25), q(1), q(1)});
    CHECK_FALSE(moduli_equivalent(pt(1, 0, 0), pt(1, 1, 0), Family::Case3).equivalent);
    CHECK_FALSE(moduli_equivalent(pt(0, 0, 1), pt(0, 1, 1), Family::Case3).equivalent);
    CHECK_FALSE(moduli_invariant(pt(1, 1, 0)).has_value());
}

TEST_CASE("lifting to B") {
    CHECK(lifting_to_B(pt(0, 0, 0)).is_zero());
    CHECK(exactly_equal(lifting_to_B(pt(1, 1, 0)).matrix(), CycMatrix::Identity(2, 2)));
    CycMatrix anti(2, 2);
    anti << q(0), q(1), q(1), q(0);
    CHECK(exactly_equal(lifting_to_B(pt(0, 0, 2)).matrix(), anti));
}

TEST_CASE("families") {
    CHECK(parse_family("case2") == Family::Case2);
    CHECK_THROWS_AS(parse_family("case4"), DomainError);
    const SymTensor zero = SymTensor::zero(2);
    const FamilyDatum c1 = family_datum(Family::Case1, zero);
    const FamilyDatum c2 = family_datum(Family::Case2, zero);
    const FamilyDatum c3 = family_datum(Family::Case3, zero);
    CHECK(families_distinguished(c1, c2));
    CHECK(families_distinguished(c1, c3));
    CHECK(families_distinguished(c2, c3));
    CHECK_FALSE(families_distinguished(c1, c1));
    // weights {3,1} on Z8 are the image of {1,3} under a -> a^3
    const FamilyDatum c1b = make_family_datum(build_character_rep(build_group({8}), {{3}, {1}}), 4, zero);
    CHECK_FALSE(families_distinguished(c1, c1b));

    CHECK(compare_by_invariants(c1, c2) == Verdict::Distinct);
    CHECK(compare_by_invariants(case1(pt(1, 0, 0)), case1(pt(1, 1, 1))) == Verdict::Distinct);
    CHECK(compare_by_invariants(c1, c1) == Verdict::Equivalent);
    CHECK(compare_by_invariants(case1(pt(1, 1, 1)), case1(pt(4, 1, 2))) == Verdict::Inconclusive);
}

TEST_CASE("Hochschild cohomology of C[Z4] x| Lambda chi") {
    auto z4 = build_group({4});
    const Representation chi = build_character_rep(z4, {{1}});
    const HopfStructure h = build_supergroup_hopf(chi);
    const auto table = cohomology_table(h, chi, 2);
    REQUIRE(table.size() == 3);
    CHECK(table[0].bar_complex == 1);
    CHECK(table[1].bar_complex == 0);
    CHECK(table[2].bar_complex == 0);
    for (const auto& row : table) CHECK(row.agree());
    CHECK_THROWS_AS(hochschild_dim(h, 2, 100), CapacityError);
    try {
        hochschild_dim(h, 3, 1000);
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("degree 3") != std::string::npos);
    }
}

TEST_CASE("Hochschild cohomology detects invariants") {
    // Z2 acting by -1 on C: S^2 V* is invariant
    const Representation sign = build_character_rep(build_group({2}), {{1}});
    const HopfStructure h = build_supergroup_hopf(sign);
    for (const auto& row : cohomology_table(h, sign, 3)) {
        CHECK(row.agree());
        CHECK(row.bar_complex == (row.degree % 2 == 0 ? 1u : 0u));
    }
    // the group algebra alone is semisimple
    const HopfStructure c4 = group_algebra(*build_group({4}));
    CHECK(hochschild_dim(c4, 1) == 0);
    CHECK(hochschild_dim(c4, 2) == 0);
}

TEST_CASE("Hochschild H^2 of the case 1 supergroup algebra") {
    const FamilyDatum d = case1(pt(0, 0, 0));
    const HopfStructure h = build_supergroup_hopf(d.rep);
    const auto start = std::chrono::steady_clock::now();
    CHECK(hochschild_dim(h, 2) == 0);
    CHECK(symmetric_invariant_dim(d.rep, 2) == 0);
    MESSAGE("H^2 at dim 32: "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
}

TEST_CASE("Frobenius-Perron dimension") {
    const FpReport reg = fp_dimension({{1, 1}, {1, 1}}, {1, 1});
    CHECK(reg.claimed == 2);
    CHECK(reg.agrees);
    auto z4 = build_group({4});
    const auto l = abelian_fusion_matrix(*z4, {0, 1, 0, 0});
    for (const auto& row : l) CHECK(std::count(row.begin(), row.end(), 1L) == 1);
    const FpReport one = fp_dimension(l, {1, 1, 1, 1});
    CHECK(one.claimed == 1);
    CHECK(one.agrees);
    const FpReport sum = fp_dimension(abelian_fusion_matrix(*z4, {1, 0, 2, 0}), {1, 1, 1, 1});
    CHECK(sum.claimed == 3);
    CHECK(sum.agrees);
    CHECK_THROWS_AS(fp_dimension({{1, -1}, {1, 1}}, {1, 1}), DomainError);
    CHECK_THROWS_AS(fp_dimension({{1, 0}, {1, 1}}, {1, 1}), DomainError);
    CHECK_THROWS_AS(fp_dimension({{1, 0}}, {1, 1}), DomainError);
}
