#include "doctest.h"

#include <algorithm>
#include <set>

#include "trihopf/errors.hpp"
#include "trihopf/groups.hpp"
#include "trihopf/linalg.hpp"

using namespace trihopf;

namespace {

long binom(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// weight multiset of a diagonal rep read back through the generator eigenvalues
std::multiset<long> weights_z8(const Representation& rep) {
    std::multiset<long> out;
    const CycMatrix& m = rep(rep.group().generator(0));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (long k = 0; k < 8; ++k)
            if (m(i, i) == root_of_unity(8, k)) out.insert(k);
    return out;
}

}  // namespace

TEST_CASE("cyclic and product groups") {
    auto z8 = build_group({8});
    CHECK(z8->order() == 8);
    CHECK(z8->element_order(z8->generator(0)) == 8);
    CHECK(z8->label(3) == "a^3");
    CHECK(z8->label(0) == "1");
    CHECK(z8->power(z8->generator(0), 4) == 4);

    auto g = build_group({4, 2});
    CHECK(g->order() == 8);
    std::size_t exponent = 1;
    for (std::size_t x = 0; x < g->order(); ++x) exponent = std::max(exponent, g->element_order(x));
    CHECK(exponent == 4);
    CHECK(g->label(g->element({2, 1})) == "a^2b");
    for (std::size_t x = 0; x < g->order(); ++x) CHECK(g->multiply(x, g->inverse(x)) == g->identity());

    auto trivial = build_group({1});
    CHECK(trivial->order() == 1);
    CHECK(build_group({})->order() == 1);

    CHECK_THROWS_AS(build_group({0}), DomainError);
    CHECK_THROWS_AS(build_group({64, 128}), CapacityError);
}

TEST_CASE("central involution validation") {
    auto z8 = build_group({8});
    CHECK(make_central_involution(*z8, 4).element == 4);
    CHECK_THROWS_AS(make_central_involution(*z8, 2), DomainError);
    CHECK_THROWS_AS(make_central_involution(*z8, 9), DomainError);
}

TEST_CASE("character representations") {
    auto z8 = build_group({8});
    auto rep = build_character_rep(z8, {{1}, {3}});
    CHECK(rep.dim() == 2);
    CHECK(rep(1)(0, 0) == root_of_unity(8, 1));
    CHECK(rep(1)(1, 1) == root_of_unity(8, 3));
    CHECK(rep(1)(0, 1).is_zero());
    CHECK(rep.acts_by_minus_one(4));
    CHECK_FALSE(rep.acts_by_minus_one(2));
    CHECK(rep.character(4) == CycScalar(-2));

    auto g = build_group({4, 2});
    auto rep3 = build_character_rep(g, {{1, 0}, {1, 1}});
    CHECK(rep3.acts_by_minus_one(g->element({2, 0})));
    CHECK(rep3(g->generator(1))(1, 1) == CycScalar(-1));

    CHECK_THROWS_AS(build_character_rep(z8, {{1, 2}}), DomainError);

    // from_generators agrees with the character construction
    CycMatrix a(2, 2);
    a << root_of_unity(8, 1), CycScalar(0), CycScalar(0), root_of_unity(8, 3);
    auto rep_gen = Representation::from_generators(z8, {a});
    for (std::size_t x = 0; x < 8; ++x) CHECK(exactly_equal(rep_gen(x), rep(x)));

    // a non-homomorphism is rejected
    CycMatrix bad(1, 1);
    bad << root_of_unity(8, 1);
    std::vector<CycMatrix> mats(8, CycMatrix::Identity(1, 1));
    mats[1] = bad;
    CHECK_THROWS_AS(Representation(z8, mats), DomainError);
}

TEST_CASE("automorphisms fixing u") {
    auto z8 = build_group({8});
    auto autos = automorphisms_fixing(*z8, make_central_involution(*z8, 4));
    std::set<std::size_t> images;
    for (const auto& phi : autos) images.insert(phi(1));
    CHECK(images == std::set<std::size_t>{1, 3, 5, 7});

    auto g = build_group({4, 2});
    const std::size_t u = g->element({2, 0});
    auto autos2 = automorphisms_fixing(*g, make_central_involution(*g, u));
    // |Aut(Z4 x Z2)| = 8 and every automorphism fixes the unique square a^2
    CHECK(autos2.size() == 8);
    const std::size_t a = g->generator(0), b = g->generator(1);
    bool found = false;
    for (const auto& phi : autos2)
        if (phi(a) == a && phi(b) == g->element({2, 1})) found = true;
    CHECK(found);

    for (const auto& p : autos2)
        for (const auto& q : autos2) {
            auto pq = compose(p, q);
            CHECK(std::find(autos2.begin(), autos2.end(), pq) != autos2.end());
        }
    for (const auto& p : autos2) {
        auto id = compose(p, inverse(p));
        for (std::size_t x = 0; x < g->order(); ++x) CHECK(id(x) == x);
    }

    auto big = build_group({128});
    CHECK_THROWS_AS(automorphisms_fixing(*big, make_central_involution(*big, 64)), CapacityError);
}

TEST_CASE("intertwiners against pulled-back representations") {
    auto z8 = build_group({8});
    auto rep = build_character_rep(z8, {{1}, {3}});
    auto autos = automorphisms_fixing(*z8, make_central_involution(*z8, 4));
    for (const auto& phi : autos) {
        auto eta = intertwiners(phi, rep);
        if (phi(1) == 1) {
            CHECK(eta.size() == 2);
        } else if (phi(1) == 3) {
            // a -> a^3 swaps the weights 1 and 3
            REQUIRE(eta.size() == 2);
            for (const auto& m : eta) {
                CHECK(m(0, 0).is_zero());
                CHECK(m(1, 1).is_zero());
            }
        } else if (phi(1) == 5) {
            CHECK(eta.empty());
        }
        for (const auto& m : eta)
            for (std::size_t x = 0; x < 8; ++x) CHECK(exactly_equal(CycMatrix(m * rep(x)), CycMatrix(rep(phi(x)) * m)));
    }
}

TEST_CASE("symmetric powers and invariants") {
    auto z8 = build_group({8});
    auto rep1 = build_character_rep(z8, {{1}, {3}});
    auto rep2 = build_character_rep(z8, {{1}, {5}});
    auto s1 = symmetric_power(rep1, 2);
    auto s2 = symmetric_power(rep2, 2);
    CHECK(weights_z8(s1) == std::multiset<long>{2, 4, 6});
    CHECK(weights_z8(s2) == std::multiset<long>{2, 2, 6});
    CHECK(invariant_subspace(s1).cols() == 0);

    auto g = build_group({4, 2});
    auto rep3 = build_character_rep(g, {{1, 0}, {1, 1}});
    CHECK(invariant_subspace(symmetric_power(rep3, 2)).cols() == 0);

    auto trivial = build_character_rep(z8, {{0}, {0}, {4}});
    for (int k = 0; k <= 4; ++k) {
        auto s = symmetric_power(trivial, k);
        CHECK(static_cast<long>(s.dim()) == binom(3 + k - 1, k));
        auto p = averaging_projector(s);
        CHECK(exactly_equal(CycMatrix(p * p), p));
    }
    // (S^2 W)^G for weights {0,0,4}: e1^2, e1e2, e2^2, e3^2
    CHECK(invariant_subspace(symmetric_power(trivial, 2)).cols() == 4);

    // a non-diagonal rep: the swap action of Z2 on C^2
    auto z2 = build_group({2});
    CycMatrix swap(2, 2);
    swap << CycScalar(0), CycScalar(1), CycScalar(1), CycScalar(0);
    auto perm = Representation::from_generators(z2, {swap});
    auto s = symmetric_power(perm, 2);
    CHECK(s.dim() == 3);
    CHECK(invariant_subspace(s).cols() == 2);
    CHECK(invariant_subspace(dual(perm)).cols() == 1);
}

TEST_CASE("symmetric tensors and translation") {
    auto z8 = build_group({8});
    auto rep = build_character_rep(z8, {{1}, {3}});
    CycMatrix m(2, 2);
    m << CycScalar(1), CycScalar(2), CycScalar(2), CycScalar(3);
    SymTensor b(m);
    auto coords = b.s2_coordinates();
    CHECK(coords(0) == CycScalar(1));
    CHECK(coords(1) == CycScalar(4));
    CHECK(coords(2) == CycScalar(3));
    // B^g for g = a: B_ij scaled by zeta^{-(w_i + w_j)}
    auto t = translate(b, rep, 1);
    CHECK(t(0, 0) == root_of_unity(8, -2));
    CHECK(t(0, 1) == CycScalar(2) * root_of_unity(8, -4));
    CHECK(t(1, 1) == CycScalar(3) * root_of_unity(8, -6));
    CHECK_FALSE(is_invariant(b, rep));
    CHECK(is_invariant(SymTensor::zero(2), rep));
    CHECK((b - b).is_zero());
    CHECK(b + SymTensor::zero(2) == b);

    CycMatrix asym(2, 2);
    asym << CycScalar(0), CycScalar(1), CycScalar(0), CycScalar(0);
    CHECK_THROWS_AS(SymTensor{asym}, DomainError);
}

TEST_CASE("isomorphisms between factorizations") {
    auto g1 = build_group({4, 2});
    auto g2 = build_group({2, 4});
    auto isos = isomorphisms(*g1, make_central_involution(*g1, g1->element({2, 0})), *g2,
                             make_central_involution(*g2, g2->element({0, 2})));
    CHECK(isos.size() == 8);
    auto z8 = build_group({8});
    CHECK(isomorphisms(*g1, make_central_involution(*g1, g1->element({2, 0})), *z8,
                       make_central_involution(*z8, 4))
              .empty());
}
