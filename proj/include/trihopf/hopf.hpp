#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trihopf/cyclotomic.hpp"
#include "trihopf/groups.hpp"

namespace trihopf {

using Key = std::uint64_t;

/// Sparse coordinate vector: terms sorted by key, no stored zeros.
/// Elements of H^{(x)k} use mixed-radix keys (i_1 .. i_k) -> ((i_1 d + i_2) d + ...) + i_k.
class SparseVec {
public:
    using Term = std::pair<Key, CycScalar>;

    SparseVec() = default;
    static SparseVec basis(Key k, const CycScalar& c = CycScalar(1));
    // sorts, merges equal keys and drops zeros
    static SparseVec from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    CycScalar coeff(Key k) const;

    SparseVec& operator+=(const SparseVec& other);
    SparseVec& operator-=(const SparseVec& other);
    SparseVec& operator*=(const CycScalar& c);
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend SparseVec operator*(const CycScalar& c, SparseVec a) { return a *= c; }
    friend bool operator==(const SparseVec& a, const SparseVec& b);
    friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

private:
    std::vector<Term> terms_;
};

/// Ordered accumulator used while assembling sparse results.
class SparseAccumulator {
public:
    void add(Key k, const CycScalar& c) {
        if (!c.is_zero()) acc_[k] += c;
    }
    void add(const SparseVec& v, const CycScalar& scale = CycScalar(1));
    SparseVec take();

private:
    std::map<Key, CycScalar> acc_;
};

/// Structure constants of a finite-dimensional (super)Hopf algebra.
/// `parity` empty means ordinary mode; otherwise one flag per basis element
/// and every tensor product follows the Koszul sign rule.
struct HopfStructure {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::uint8_t> parity;
    std::vector<SparseVec> mult;    // mult[a * dim + b] = b_a b_b
    SparseVec unit;
    std::vector<SparseVec> comult;  // comult[a] in H (x) H
    std::vector<CycScalar> counit;
    std::optional<std::vector<SparseVec>> antipode;  // antipode[a] = S(b_a)
    std::optional<SparseVec> rmatrix;

    bool super() const noexcept { return !parity.empty(); }
    int parity_of(std::size_t a) const { return parity.empty() ? 0 : parity[a]; }
};

bool operator==(const HopfStructure& a, const HopfStructure& b);

// ---------------------------------------------------------------------------
// Tensor keys

Key tensor_key(const std::vector<std::size_t>& indices, std::size_t dim);
std::vector<std::size_t> tensor_indices(Key key, std::size_t dim, int order);

// ---------------------------------------------------------------------------
// Elementary operations

SparseVec multiply(const HopfStructure& h, const SparseVec& x, const SparseVec& y);

/// Product in H^{(x)order}; in super mode
/// (a_1 (x) .. (x) a_k)(b_1 (x) .. (x) b_k) = (-1)^{sum_{i>j} |a_i||b_j|} a_1 b_1 (x) .. (x) a_k b_k.
SparseVec tensor_multiply(const HopfStructure& h, const SparseVec& x, const SparseVec& y, int order);

SparseVec tensor_unit(const HopfStructure& h, int order);

/// Applies Delta to tensor factor `position` of an order-`order` tensor.
SparseVec apply_comult(const HopfStructure& h, const SparseVec& t, int order, int position);

/// Applies epsilon to tensor factor `position`.
SparseVec apply_counit(const HopfStructure& h, const SparseVec& t, int order, int position);

/// Applies a linear map given by basis images to tensor factor `position`.
SparseVec apply_map(const HopfStructure& h, const std::vector<SparseVec>& images, const SparseVec& t, int order,
                    int position);

/// Inserts the unit as a new tensor factor at `position` (0 .. order).
SparseVec insert_unit(const HopfStructure& h, const SparseVec& t, int order, int position);

/// m(t) for t in H (x) H.
SparseVec multiply_out(const HopfStructure& h, const SparseVec& t);

/// Super flip a (x) b -> (-1)^{|a||b|} b (x) a.
SparseVec flip(const HopfStructure& h, const SparseVec& t);

/// Inverse in H^{(x)order}: geometric series when t - 1 is nilpotent, exact
/// sparse solve otherwise. nullopt when t is not invertible.
std::optional<SparseVec> tensor_inverse(const HopfStructure& h, const SparseVec& t, int order);

CycScalar counit_of(const HopfStructure& h, const SparseVec& x);

std::string format_element(const HopfStructure& h, const SparseVec& x, int order = 1);

// ---------------------------------------------------------------------------
// Verification

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::string witness;
};

struct VerificationReport {
    std::vector<AxiomCheck> checks;
    bool verified() const;
    const AxiomCheck* first_failure() const;
    std::string to_string() const;
};

/// Exact check of associativity, unitality, coassociativity, counitality,
/// bialgebra compatibility and (when present or required) the antipode.
VerificationReport verify_hopf(const HopfStructure& h, bool require_antipode = true);

/// Throws InternalError naming `context` and the first failing axiom.
void require_verified(const HopfStructure& h, const std::string& context);

/// (Delta (x) id)(J)(J (x) 1) = (id (x) Delta)(J)(1 (x) J) and (eps (x) id)J = (id (x) eps)J = 1.
/// Throws DomainError when J is not invertible.
bool twist_equation_check(const HopfStructure& h, const SparseVec& j);

/// Delta^J(x) = J^-1 Delta(x) J; antipode re-solved; R becomes J_21^-1 R J.
HopfStructure drinfeld_twist(const HopfStructure& h, const SparseVec& j);

/// Hopf 2-cocycle: phi(a, b) = matrix(a, b); `inverse` is the convolution inverse.
struct Cocycle2 {
    CycMatrix phi;
    CycMatrix inverse;
};

/// Convolution product (f * g)(a, b) = sum f(a_1, b_1) g(a_2, b_2) of bilinear forms.
CycMatrix convolve(const HopfStructure& h, const CycMatrix& f, const CycMatrix& g);

/// Solves for the convolution inverse (or verifies a supplied one).
/// Throws DomainError("... not convolution invertible") when none exists.
Cocycle2 make_cocycle(const HopfStructure& h, const CycMatrix& phi,
                      const std::optional<CycMatrix>& inverse = std::nullopt);

/// sum phi(a_1 b_1, c) phi(a_2, b_2) = sum phi(a, b_1 c_1) phi(b_2, c_2) for every basis triple.
bool verify_hopf_2_cocycle(const HopfStructure& h, const Cocycle2& phi);

/// m_phi(a (x) b) = sum phi^-1(a_1, b_1) a_2 b_2 phi(a_3, b_3);
/// S_phi(a) = sum phi^-1(a_1, S a_2) S(a_3) phi(S a_4, a_5).
HopfStructure cocycle_twist(const HopfStructure& h, const Cocycle2& phi);

/// Convolution inverse of the identity. nullopt when the bialgebra is not Hopf.
std::optional<std::vector<SparseVec>> compute_antipode(const HopfStructure& h);

/// Linear dual in the usual sense (with the super pairing sign in super mode).
HopfStructure dualize(const HopfStructure& h);

struct TriangularReport {
    AxiomCheck delta_left;    // (Delta (x) id)(R) = R_13 R_23
    AxiomCheck delta_right;   // (id (x) Delta)(R) = R_13 R_12
    AxiomCheck quasi_cocommutative;  // R Delta(x) = Delta^op(x) R
    AxiomCheck triangular;    // R_21 R = 1 (x) 1
    bool all_pass() const {
        return delta_left.pass && delta_right.pass && quasi_cocommutative.pass && triangular.pass;
    }
};

TriangularReport verify_triangular(const HopfStructure& h, const SparseVec& r);

// ---------------------------------------------------------------------------
// Structure inspection

/// Basis elements x with Delta(x) = x (x) x.
std::vector<std::size_t> grouplike_basis_elements(const HopfStructure& h);

/// dim of the Jacobson radical, from the kernel of the trace form.
std::size_t radical_dimension(const HopfStructure& h);

/// Number of grouplikes of H, counted as the characters of H*:
/// dim H* / (rad H* + ideal generated by commutators).
std::size_t grouplike_count(const HopfStructure& h);

struct SkewPrimitiveCount {
    std::size_t grouplike = 0;  // basis index of g
    std::size_t nontrivial_dim = 0;  // dim P_{1,g} modulo C(1 - g)
};

/// Nontrivial (1, g)-skew-primitives for every grouplike basis element g.
std::vector<SkewPrimitiveCount> skew_primitive_census(const HopfStructure& h);

// ---------------------------------------------------------------------------
// Constructors and serialization

HopfStructure group_algebra(const FiniteGroup& g);

/// Canonical JSON text; stable across runs.
std::string serialize(const HopfStructure& h);
HopfStructure deserialize(const std::string& text);

}  // namespace trihopf
