#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "trihopf/cyclotomic.hpp"

namespace trihopf {

/// Finite abelian group Z_{n_1} x ... x Z_{n_r} as an explicit Cayley table.
/// Element indices are mixed-radix exponent vectors, first factor fastest;
/// index 0 is the identity.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<int> cyclic_factors);

    std::size_t order() const noexcept { return order_; }
    std::size_t identity() const noexcept { return 0; }
    const std::vector<int>& cyclic_factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }

    std::size_t multiply(std::size_t a, std::size_t b) const { return cayley_[a * order_ + b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    std::size_t power(std::size_t a, long k) const;
    std::size_t element_order(std::size_t a) const;
    bool is_central(std::size_t a) const;

    std::vector<long> exponents(std::size_t g) const;
    std::size_t element(const std::vector<long>& exponents) const;  // reduced modulo the factors
    std::size_t generator(std::size_t j) const;

    // "1", "a^3", "a^2b", ...
    std::string label(std::size_t g) const;

private:
    std::vector<int> factors_;
    std::size_t order_ = 1;
    std::vector<std::size_t> cayley_;
    std::vector<std::size_t> inverse_;
};

/// Validated group built from cyclic factor sizes (an empty list gives the trivial group).
std::shared_ptr<const FiniteGroup> build_group(const std::vector<int>& cyclic_factors);

/// Central element u with u^2 = 1.
struct CentralInvolution {
    std::size_t element = 0;
};

CentralInvolution make_central_involution(const FiniteGroup& group, std::size_t u);

/// A group automorphism as the image of each element index.
struct Automorphism {
    std::vector<std::size_t> image;
    std::size_t operator()(std::size_t g) const { return image[g]; }
    bool operator==(const Automorphism&) const = default;
};

Automorphism compose(const Automorphism& outer, const Automorphism& inner);
Automorphism inverse(const Automorphism& phi);

/// Every isomorphism phi: from -> to with phi(u_from) = u_to, found by search
/// over generator images. Throws CapacityError when a group order exceeds
/// `order_bound` or the count exceeds `count_bound`.
std::vector<Automorphism> isomorphisms(const FiniteGroup& from, CentralInvolution u_from, const FiniteGroup& to,
                                       CentralInvolution u_to, std::size_t order_bound = 64,
                                       std::size_t count_bound = 100000);

/// isomorphisms(G, u, G, u).
std::vector<Automorphism> automorphisms_fixing(const FiniteGroup& group, CentralInvolution u,
                                               std::size_t order_bound = 64, std::size_t count_bound = 100000);

/// Exact matrix representation: one dim x dim matrix per group element.
class Representation {
public:
    /// Verifies rho(g) rho(h) = rho(gh) for every pair.
    Representation(std::shared_ptr<const FiniteGroup> group, std::vector<CycMatrix> matrices);

    /// Extends generator images multiplicatively, then verifies.
    static Representation from_generators(std::shared_ptr<const FiniteGroup> group,
                                          const std::vector<CycMatrix>& generator_images);

    const FiniteGroup& group() const noexcept { return *group_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const noexcept { return group_; }
    std::size_t dim() const noexcept { return dim_; }
    const CycMatrix& operator()(std::size_t g) const { return matrices_[g]; }
    CycScalar character(std::size_t g) const;

    bool acts_by_minus_one(std::size_t g) const;

private:
    std::shared_ptr<const FiniteGroup> group_;
    std::size_t dim_ = 0;
    std::vector<CycMatrix> matrices_;
};

/// Diagonal representation; summand k acts at g = (m_1..m_r) by prod_j zeta_{n_j}^{w_kj m_j}.
Representation build_character_rep(std::shared_ptr<const FiniteGroup> group,
                                   const std::vector<std::vector<long>>& weights);

/// V* with g acting by rho(g^-1)^T.
Representation dual(const Representation& rep);

/// phi^*V: g acts by rho(phi(g)).
Representation pullback(const Representation& rep, const Automorphism& phi);

/// S^k V on the monomial basis e_{i1}...e_{ik}, i1 <= ... <= ik (see monomial_basis).
Representation symmetric_power(const Representation& rep, int k);
std::vector<std::vector<int>> monomial_basis(std::size_t dim, int k);

/// Basis (one matrix each) of the space of eta with eta rho_from(g) = rho_to(g) eta.
std::vector<CycMatrix> intertwiners(const Representation& from, const Representation& to);

/// Basis of Hom_G(V, phi^*V).
std::vector<CycMatrix> intertwiners(const Automorphism& phi, const Representation& rep);

/// Reynolds operator (1/|G|) sum_g rho(g). Checked idempotent and G-fixed.
CycMatrix averaging_projector(const Representation& rep);

/// Basis of the fixed space W^G as the columns of the returned matrix.
CycMatrix invariant_subspace(const Representation& rep);

/// Symmetric 2-tensor B in S^2 V, stored as the symmetric coefficient matrix
/// of sum B_ij e_i (x) e_j.
class SymTensor {
public:
    SymTensor() = default;
    explicit SymTensor(CycMatrix matrix);
    static SymTensor zero(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const CycMatrix& matrix() const noexcept { return matrix_; }
    const CycScalar& operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }
    bool is_zero() const;

    friend SymTensor operator+(const SymTensor& a, const SymTensor& b);
    friend SymTensor operator-(const SymTensor& a, const SymTensor& b);
    friend bool operator==(const SymTensor& a, const SymTensor& b);

    /// Coordinates of sum_ij B_ij e_i e_j in the monomial basis of S^2 V:
    /// B_ii on e_i^2, 2 B_ij on e_i e_j (i < j). Equivariant for symmetric_power(V, 2).
    CycVector s2_coordinates() const;

private:
    CycMatrix matrix_;
};

/// B^g := (rho(g)^-1 (x) rho(g)^-1) B, i.e. rho(g)^-1 B rho(g)^-T.
SymTensor translate(const SymTensor& b, const Representation& rep, std::size_t g);

/// B^g = B for every g.
bool is_invariant(const SymTensor& b, const Representation& rep);

}  // namespace trihopf
