#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trihopf/groups.hpp"
#include "trihopf/hopf.hpp"

namespace trihopf {

/// Basis element g e_S of C[G] x| Lambda V; `mask` bit i-1 marks e_i in S.
struct SuperBasisElement {
    std::size_t g = 0;
    std::uint32_t mask = 0;
    int parity() const;
};

/// Sign of e_S ^ e_T rewritten in increasing order; 0 when S and T overlap.
int wedge_sign(std::uint32_t s, std::uint32_t t);

/// The Hopf superalgebra C[G] x| Lambda V with basis index g * 2^n + mask.
///
/// Product: (g, alpha)(h, beta) = (gh, rho(h^-1)(alpha) beta).
/// Coproduct: Delta(g) = g (x) g, e_i super-primitive. S(g e_S) = (-1)^|S| e_S g^-1.
class SupergroupAlgebra {
public:
    explicit SupergroupAlgebra(Representation rep);

    const Representation& rep() const noexcept { return rep_; }
    const FiniteGroup& group() const noexcept { return rep_.group(); }
    std::size_t vdim() const noexcept { return n_; }
    std::size_t dim() const noexcept { return hopf_.dim; }
    const HopfStructure& hopf() const noexcept { return hopf_; }

    std::size_t index(std::size_t g, std::uint32_t mask) const { return (g << n_) | mask; }
    SuperBasisElement element(std::size_t index) const {
        return {index >> n_, static_cast<std::uint32_t>(index & ((std::size_t{1} << n_) - 1))};
    }
    std::string label(std::size_t index) const;

    SparseVec group_element(std::size_t g) const { return SparseVec::basis(index(g, 0)); }
    SparseVec letter(std::size_t i) const { return SparseVec::basis(index(0, std::uint32_t{1} << i)); }

    /// rho(g)(e_S) as a combination of exterior monomials (keys are masks).
    const SparseVec& act(std::size_t g, std::uint32_t mask) const { return act_[(g << n_) | mask]; }

    SparseVec multiply(const SparseVec& x, const SparseVec& y) const { return trihopf::multiply(hopf_, x, y); }

private:
    Representation rep_;
    std::size_t n_;
    std::vector<SparseVec> act_;
    HopfStructure hopf_;
};

/// Verified super Hopf structure of C[G] x| Lambda V.
HopfStructure build_supergroup_hopf(const Representation& rep);

/// B-hat = sum B_ij e_i (x) e_j in the tensor square.
SparseVec b_hat(const SupergroupAlgebra& alg, const SymTensor& b);

/// sum_{k <= n} X^k / k! in the super tensor square; X^{n+1} = 0 is asserted.
SparseVec tensor_exp(const SupergroupAlgebra& alg, const SparseVec& x);

struct TwistElement {
    SymTensor b;
    SparseVec j;          // e^B
    SparseVec j_inverse;  // e^-B, checked against J
};

TwistElement twist_element(const SupergroupAlgebra& alg, const SymTensor& b);

}  // namespace trihopf
