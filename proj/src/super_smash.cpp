#include "trihopf/super_smash.hpp"

#include <bit>

#include "trihopf/errors.hpp"

namespace trihopf {

int SuperBasisElement::parity() const { return std::popcount(mask) & 1; }

int wedge_sign(std::uint32_t s, std::uint32_t t) {
    if (s & t) return 0;
    // each letter of t passes the letters of s above it
    int swaps = 0;
    for (std::uint32_t rest = t; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        swaps += std::popcount(s >> (j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

namespace {

constexpr std::size_t kMaxLetters = 16;

// wedge of monomial combinations; keys are masks
SparseVec wedge(const SparseVec& x, const SparseVec& y) {
    SparseAccumulator acc;
    for (const auto& [s, a] : x)
        for (const auto& [t, b] : y) {
            const int sign = wedge_sign(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t));
            if (sign == 0) continue;
            acc.add(s | t, sign > 0 ? a * b : -(a * b));
        }
    return acc.take();
}

}  // namespace

SupergroupAlgebra::SupergroupAlgebra(Representation rep) : rep_(std::move(rep)), n_(rep_.dim()) {
    if (n_ > kMaxLetters) throw CapacityError("exterior algebra on more than 16 letters");
    const FiniteGroup& g = rep_.group();
    const std::size_t masks = std::size_t{1} << n_;
    const std::size_t d = g.order() * masks;
    if (d > 4096) throw CapacityError("supergroup algebra dimension " + std::to_string(d) + " exceeds 4096");

    // images of single letters, then of monomials by wedging in increasing order
    act_.resize(g.order() * masks);
    for (std::size_t x = 0; x < g.order(); ++x) {
        const CycMatrix& m = rep_(x);
        std::vector<SparseVec> letters(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::vector<SparseVec::Term> terms;
            for (std::size_t j = 0; j < n_; ++j)
                if (!m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)).is_zero())
                    terms.emplace_back(Key{1} << j, m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
            letters[i] = SparseVec::from_terms(std::move(terms));
        }
        act_[x << n_] = SparseVec::basis(0);
        for (std::uint32_t s = 1; s < masks; ++s) {
            const int top = 31 - std::countl_zero(s);
            const std::uint32_t rest = s & ~(std::uint32_t{1} << top);
            act_[(x << n_) | s] = wedge(act_[(x << n_) | rest], letters[static_cast<std::size_t>(top)]);
        }
    }

    HopfStructure& h = hopf_;
    h.dim = d;
    h.labels.resize(d);
    h.parity.resize(d);
    h.mult.resize(d * d);
    h.comult.resize(d);
    h.counit.assign(d, CycScalar(0));
    for (std::size_t i = 0; i < d; ++i) {
        h.labels[i] = label(i);
        h.parity[i] = static_cast<std::uint8_t>(element(i).parity());
    }
    for (std::size_t a = 0; a < d; ++a) {
        const auto [ga, sa] = element(a);
        for (std::size_t b = 0; b < d; ++b) {
            const auto [gb, sb] = element(b);
            const std::size_t gh = g.multiply(ga, gb);
            std::vector<SparseVec::Term> terms;
            for (const auto& [s, c] : act(g.inverse(gb), sa)) {
                const int sign = wedge_sign(static_cast<std::uint32_t>(s), sb);
                if (sign == 0) continue;
                terms.emplace_back(index(gh, static_cast<std::uint32_t>(s) | sb), sign > 0 ? c : -c);
            }
            h.mult[a * d + b] = SparseVec::from_terms(std::move(terms));
        }
    }
    h.unit = SparseVec::basis(index(g.identity(), 0));
    for (std::size_t a = 0; a < d; ++a) {
        const auto [ga, sa] = element(a);
        if (sa == 0) h.counit[a] = CycScalar(1);
        // Delta(e_S) = prod_{i in S} (e_i (x) 1 + 1 (x) e_i), expanded with the Koszul sign
        std::vector<SparseVec::Term> terms;
        for (std::uint32_t left = sa;; left = (left - 1) & sa) {
            const std::uint32_t right = sa & ~left;
            int sign = 1;
            for (std::uint32_t rest = left; rest; rest &= rest - 1) {
                const int t = std::countr_zero(rest);
                if (std::popcount(right & ((std::uint32_t{1} << t) - 1)) & 1) sign = -sign;
            }
            terms.emplace_back(static_cast<Key>(index(ga, left)) * d + index(ga, right), CycScalar(sign));
            if (left == 0) break;
        }
        h.comult[a] = SparseVec::from_terms(std::move(terms));
    }
    std::vector<SparseVec> s(d);
    for (std::size_t a = 0; a < d; ++a) {
        const auto [ga, sa] = element(a);
        SparseVec v = trihopf::multiply(h, SparseVec::basis(index(0, sa)), SparseVec::basis(index(g.inverse(ga), 0)));
        if (std::popcount(sa) & 1) v *= CycScalar(-1);
        s[a] = std::move(v);
    }
    h.antipode = std::move(s);
}

std::string SupergroupAlgebra::label(std::size_t idx) const {
    const auto [g, mask] = element(idx);
    std::string out = group().label(g);
    if (mask == 0) return out;
    std::string letters;
    for (std::size_t i = 0; i < n_; ++i)
        if (mask & (std::uint32_t{1} << i)) letters += "e" + std::to_string(i + 1);
    return g == group().identity() ? letters : out + "*" + letters;
}

HopfStructure build_supergroup_hopf(const Representation& rep) {
    SupergroupAlgebra alg(rep);
    require_verified(alg.hopf(), "build_supergroup_hopf");
    return alg.hopf();
}

SparseVec b_hat(const SupergroupAlgebra& alg, const SymTensor& b) {
    if (b.dim() != alg.vdim()) throw DomainError("B has dimension " + std::to_string(b.dim()) + ", V has " +
                                                 std::to_string(alg.vdim()));
    std::vector<SparseVec::Term> terms;
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) {
            if (b(i, j).is_zero()) continue;
            const Key left = alg.index(0, std::uint32_t{1} << i);
            const Key right = alg.index(0, std::uint32_t{1} << j);
            terms.emplace_back(left * alg.dim() + right, b(i, j));
        }
    return SparseVec::from_terms(std::move(terms));
}

SparseVec tensor_exp(const SupergroupAlgebra& alg, const SparseVec& x) {
    const HopfStructure& h = alg.hopf();
    SparseVec out = tensor_unit(h, 2);
    SparseVec power = out;
    for (std::size_t k = 1; k <= alg.vdim(); ++k) {
        // power holds X^k / k!
        power = tensor_multiply(h, power, x, 2);
        power *= CycScalar(Rational(1, static_cast<long>(k)));
        out += power;
    }
    if (!tensor_multiply(h, power, x, 2).empty()) throw InternalError("tensor_exp: argument is not nilpotent of order dim V + 1");
    return out;
}

TwistElement twist_element(const SupergroupAlgebra& alg, const SymTensor& b) {
    const SparseVec bh = b_hat(alg, b);
    TwistElement t{b, tensor_exp(alg, bh), tensor_exp(alg, CycScalar(-1) * SparseVec(bh))};
    const SparseVec one = tensor_unit(alg.hopf(), 2);
    if (tensor_multiply(alg.hopf(), t.j, t.j_inverse, 2) != one || tensor_multiply(alg.hopf(), t.j_inverse, t.j, 2) != one)
        throw InternalError("twist_element: e^B e^-B != 1 (x) 1");
    return t;
}

}  // namespace trihopf
