#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "trihopf/groups.hpp"
#include "trihopf/hopf.hpp"
#include "trihopf/super_smash.hpp"

namespace trihopf {

/// (G, V, u, B) with u central, u^2 = 1 and u acting by -1 on V.
struct FamilyDatum {
    Representation rep;
    CentralInvolution u;
    SymTensor b;

    const FiniteGroup& group() const { return rep.group(); }
};

/// Validates every invariant; throws DomainError naming the violated one.
FamilyDatum make_family_datum(Representation rep, std::size_t u, SymTensor b);

/// Coset {g, gu} of <u>; `representative` is the smaller index.
struct BlockIndex {
    std::size_t representative = 0;
    std::size_t partner = 0;
};

std::vector<BlockIndex> cosets(const FiniteGroup& g, CentralInvolution u);

/// How the bar coproduct is carried from A_g to A_gu.
enum class BarVariant {
    BarOnRight,      // Delta-bar(ux) = (u (x) u) Delta-bar(x)
    TwistedOnRight,  // Delta-bar(ux) = (u (x) u) Delta^J(x)
};

std::string to_string(BarVariant v);

struct BuildReport {
    BarVariant variant = BarVariant::BarOnRight;
    std::string variant_rule;
    VerificationReport verification;
};

/// Ordinary Hopf algebra A(G,V,u,B) on the basis of C[G] x| Lambda V.
/// The coproduct is assembled blockwise by the bar construction
/// Delta-bar(x) = Delta_0(x) - (-1)^{p(x)} (u (x) 1) Delta_1(x) on A_g, the
/// antipode is solved, and the result is verified.
HopfStructure build_A(const FamilyDatum& d, BuildReport* report = nullptr);

/// Same construction with an explicit variant and no verification gate.
/// The antipode is left empty when the solver finds none.
HopfStructure build_A_unchecked(const FamilyDatum& d, BarVariant variant);

/// The variant that passes verify_hopf on the 4-dimensional case (Z_2, C, u, 1);
/// computed once.
BarVariant resolved_bar_variant();

/// J^-1 Delta(g alpha) J == Delta(g) Delta(alpha) e^{B - B^g} for every basis element.
bool coproduct_oracle_check(const FamilyDatum& d);

struct Block {
    BlockIndex index;
    std::vector<std::size_t> basis;
};

/// |G|/2 subcoalgebra blocks A_g + A_gu; each is checked to be a subcoalgebra.
std::vector<Block> block_decomposition(const HopfStructure& a, const FamilyDatum& d);

/// bos(x_1 (x) x_2) = x_1 u^{p(x_2)} (x) x_2 applied to a super tensor.
SparseVec bosonize(const SupergroupAlgebra& alg, CentralInvolution u, const SparseVec& t);

/// bos(e^B): a twist for A(G,V,u,0) whose Drinfeld twist is A(G,V,u,B).
SparseVec ordinary_twist(const FamilyDatum& d);

/// R_u = 1/2 (1 (x) 1 + u (x) 1 + 1 (x) u - u (x) u).
SparseVec r_u(const FamilyDatum& d);

}  // namespace trihopf
