#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trihopf/agvub.hpp"
#include "trihopf/hopf.hpp"

namespace trihopf {

// ---------------------------------------------------------------------------
// Clifford blocks

/// Per-coset ranks of B - B^h, in coset order (identity coset first).
struct CoalgebraType {
    std::vector<BlockIndex> cosets;
    std::vector<std::size_t> ranks;

    /// The rank multiset, sorted ascending.
    std::vector<std::size_t> multiset() const;
    bool all_zero() const;
};

bool operator==(const CoalgebraType& a, const CoalgebraType& b);  // compares multisets

CoalgebraType coalgebra_type(const FamilyDatum& d);

/// Symmetric form on V* + C for block h: diag(B - B^h, 1).
struct CliffordForm {
    CycMatrix q;
    std::size_t dim() const { return static_cast<std::size_t>(q.rows()); }
    std::size_t rank() const;
};

struct CliffordBlockResult {
    BlockIndex index;
    CliffordForm form;
    std::size_t block_dim = 0;
    bool pass = true;
    std::string failure;  // block, generator pair and both sides when a relation fails
};

struct CliffordReport {
    std::vector<CliffordBlockResult> blocks;
    bool all_pass() const;
};

/// In each dual block, checks x y + y x = 2 q(x, y) 1_block for the generators
/// x_i (dual to e_i, sign -1 on the gu half) and y (the u-separating functional),
/// and that the generators span a 2^{dim V + 1}-dimensional algebra.
CliffordReport verify_clifford_blocks(const HopfStructure& a, const FamilyDatum& d);

/// B in (S^2 V)^G. Cross-checked against the all-ranks-zero criterion.
bool is_pointed(const FamilyDatum& d);

// ---------------------------------------------------------------------------
// Moduli of the dim V = 2 families

struct ModuliPoint {
    CycScalar l1, l2, l3;
};

bool operator==(const ModuliPoint& a, const ModuliPoint& b);
std::string to_string(const ModuliPoint& p);

enum class Family { Case1, Case2, Case3 };

std::string to_string(Family f);
Family parse_family(const std::string& name);

/// The datum of a classified family (group, weights and u as in the presets) with B.
FamilyDatum family_datum(Family f, const SymTensor& b);

/// B = [[l1, l3/2], [l3/2, l2]].
SymTensor lifting_to_B(const ModuliPoint& p);

/// l1 l2 / l3^2 when l3 != 0.
std::optional<CycScalar> moduli_invariant(const ModuliPoint& p);

/// Orbit representative under (l1,l2,l3) ~ (t^2 l1, s^2 l2, ts l3) and the swap:
/// (0,0,0), (1,0,0), (1,1,0), (0,0,1) or (I,1,1) with I = l1 l2 / l3^2.
ModuliPoint canonical_form(const ModuliPoint& p);

struct ModuliVerdict {
    bool equivalent = false;
    ModuliPoint canonical_p, canonical_q;
    std::optional<CycScalar> invariant_p, invariant_q;
};

ModuliVerdict moduli_equivalent(const ModuliPoint& p, const ModuliPoint& q, Family family);

enum class Verdict { Equivalent, Distinct, Inconclusive };
std::string to_string(Verdict v);

/// True when no isomorphism G1 -> G2 fixing u carries the character of V2 to that of V1.
bool families_distinguished(const FamilyDatum& a, const FamilyDatum& b);

/// Invariant comparison for general data: Distinct when (G,V,u) data or
/// coalgebra types differ, Equivalent when the data agree and B1 - B2 is
/// G-invariant, Inconclusive otherwise.
Verdict compare_by_invariants(const FamilyDatum& a, const FamilyDatum& b);

// ---------------------------------------------------------------------------
// Cohomology

constexpr std::size_t kDefaultCohomologyCapacity = std::size_t{1} << 20;

/// dim H^i(H, C) with trivial coefficients, from the normalized bar complex.
/// Throws CapacityError when dim(H)^{i+1} exceeds `capacity`.
std::size_t hochschild_dim(const HopfStructure& h, int i, std::size_t capacity = kDefaultCohomologyCapacity);

/// dim (S^i V*)^G.
std::size_t symmetric_invariant_dim(const Representation& rep, int i);

struct CohomologyRow {
    int degree = 0;
    std::size_t bar_complex = 0;
    std::size_t invariants = 0;  // dim (S^i V*)^G
    bool agree() const { return bar_complex == invariants; }
};

std::vector<CohomologyRow> cohomology_table(const HopfStructure& h, const Representation& rep, int max_degree,
                                            std::size_t capacity = kDefaultCohomologyCapacity);

// ---------------------------------------------------------------------------
// Frobenius-Perron dimension

struct FpReport {
    long claimed = 0;           // d with fusion * dims = d * dims
    bool eigen_identity = false;
    double estimate = 0.0;      // power-iteration spectral radius
    bool agrees = false;        // |estimate - d| <= tolerance
    int iterations = 0;
};

/// Throws DomainError for negative entries, non-square input or a dims
/// vector that is not an eigenvector.
FpReport fp_dimension(const std::vector<std::vector<long>>& fusion, const std::vector<long>& dims,
                      double tolerance = 1e-9);

/// Fusion matrix of tensoring with `object` in Rep(C[G]) for abelian G:
/// simples are characters indexed like group elements of the dual group,
/// `object` gives the multiplicity of each simple.
std::vector<std::vector<long>> abelian_fusion_matrix(const FiniteGroup& g, const std::vector<long>& object);

}  // namespace trihopf
