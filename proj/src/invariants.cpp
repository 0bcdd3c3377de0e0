#include "trihopf/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Dense>

#include "trihopf/errors.hpp"
#include "trihopf/linalg.hpp"

namespace trihopf {

// ---------------------------------------------------------------------------
// Clifford blocks

std::vector<std::size_t> CoalgebraType::multiset() const {
    auto out = ranks;
    std::sort(out.begin(), out.end());
    return out;
}

bool CoalgebraType::all_zero() const {
    return std::all_of(ranks.begin(), ranks.end(), [](std::size_t r) { return r == 0; });
}

bool operator==(const CoalgebraType& a, const CoalgebraType& b) { return a.multiset() == b.multiset(); }

CoalgebraType coalgebra_type(const FamilyDatum& d) {
    CoalgebraType out;
    out.cosets = cosets(d.group(), d.u);
    for (const auto& c : out.cosets) {
        const SymTensor bg = translate(d.b, d.rep, c.representative);
        if (!(bg == translate(d.b, d.rep, c.partner)))
            throw InternalError("B^g differs from B^{gu} at g = " + d.group().label(c.representative));
        out.ranks.push_back(static_cast<std::size_t>(rank((d.b - bg).matrix())));
    }
    return out;
}

std::size_t CliffordForm::rank() const { return static_cast<std::size_t>(trihopf::rank(q)); }

bool CliffordReport::all_pass() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const CliffordBlockResult& b) { return b.pass; });
}

CliffordReport verify_clifford_blocks(const HopfStructure& a, const FamilyDatum& d) {
    const auto blocks = block_decomposition(a, d);
    const HopfStructure dual = dualize(a);
    const std::size_t n = d.rep.dim();
    const auto ni = static_cast<Eigen::Index>(n);
    auto idx = [n](std::size_t g, std::uint32_t mask) { return static_cast<Key>((g << n) | mask); };

    CliffordReport report;
    for (const auto& block : blocks) {
        const std::size_t g = block.index.representative, gu = block.index.partner;
        CliffordBlockResult res;
        res.index = block.index;
        res.block_dim = block.basis.size();
        const CycMatrix diff = (d.b - translate(d.b, d.rep, g)).matrix();
        res.form.q = CycMatrix::Zero(ni + 1, ni + 1);
        res.form.q.topLeftCorner(ni, ni) = diff;
        res.form.q(ni, ni) = CycScalar(1);

        // generators: x_1 .. x_n, then y
        std::vector<SparseVec> gens;
        for (std::size_t i = 0; i < n; ++i)
            gens.push_back(SparseVec::basis(idx(g, 1u << i)) - SparseVec::basis(idx(gu, 1u << i)));
        gens.push_back(SparseVec::basis(idx(g, 0)) - SparseVec::basis(idx(gu, 0)));
        const SparseVec unit = SparseVec::basis(idx(g, 0)) + SparseVec::basis(idx(gu, 0));

        auto fail = [&](const std::string& why) {
            if (res.pass) {
                res.pass = false;
                res.failure = "block " + d.group().label(g) + ": " + why;
            }
        };
        for (const auto& x : gens)
            if (multiply(dual, unit, x) != x || multiply(dual, x, unit) != x) fail("block unit does not act as identity");
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i; j <= n; ++j) {
                const SparseVec lhs = multiply(dual, gens[i], gens[j]) + multiply(dual, gens[j], gens[i]);
                const SparseVec rhs =
                    CycScalar(2) * res.form.q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * SparseVec(unit);
                if (lhs != rhs)
                    fail("generators " + std::to_string(i) + "," + std::to_string(j) + ": xy+yx = " +
                         format_element(dual, lhs) + ", 2q(x,y)1 = " + format_element(dual, rhs));
            }
        // ordered monomials in the generators span the block
        SparseEchelon<CycScalar> ech(a.dim);
        for (std::uint32_t s = 0; s < (1u << (n + 1)); ++s) {
            SparseVec m = unit;
            for (std::size_t i = 0; i <= n; ++i)
                if (s & (1u << i)) m = multiply(dual, m, gens[i]);
            SparseRow<CycScalar> row;
            for (const auto& [k, c] : m) row.emplace_back(static_cast<std::size_t>(k), c);
            ech.insert(row);
        }
        if (ech.rank() != (std::size_t{1} << (n + 1)) || res.block_dim != (std::size_t{1} << (n + 1)))
            fail("generator monomials span " + std::to_string(ech.rank()) + " dimensions, block has " +
                 std::to_string(res.block_dim));
        report.blocks.push_back(std::move(res));
    }
    return report;
}

bool is_pointed(const FamilyDatum& d) {
    const Representation s2 = symmetric_power(d.rep, 2);
    const CycMatrix p = averaging_projector(s2);
    const CycVector v = d.b.s2_coordinates();
    const bool member = exactly_equal(CycVector(p * v), v);
    const bool structural = coalgebra_type(d).all_zero();
    if (member != structural || member != is_invariant(d.b, d.rep))
        throw InternalError("pointedness criteria disagree: (S^2V)^G membership " + std::string(member ? "yes" : "no") +
                            ", all Clifford forms zero " + (structural ? "yes" : "no"));
    return member;
}

// ---------------------------------------------------------------------------
// Moduli

bool operator==(const ModuliPoint& a, const ModuliPoint& b) { return a.l1 == b.l1 && a.l2 == b.l2 && a.l3 == b.l3; }

std::string to_string(const ModuliPoint& p) {
    return "(" + p.l1.to_string() + ", " + p.l2.to_string() + ", " + p.l3.to_string() + ")";
}

std::string to_string(Family f) {
    switch (f) {
        case Family::Case1: return "case1";
        case Family::Case2: return "case2";
        case Family::Case3: return "case3";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    if (name == "case1") return Family::Case1;
    if (name == "case2") return Family::Case2;
    if (name == "case3") return Family::Case3;
    throw DomainError("unknown family preset '" + name + "' (expected case1, case2 or case3)");
}

FamilyDatum family_datum(Family f, const SymTensor& b) {
    switch (f) {
        case Family::Case1: return make_family_datum(build_character_rep(build_group({8}), {{1}, {3}}), 4, b);
        case Family::Case2: return make_family_datum(build_character_rep(build_group({8}), {{1}, {5}}), 4, b);
        case Family::Case3: {
            auto g = build_group({4, 2});
            const std::size_t u = g->element({2, 0});
            return make_family_datum(build_character_rep(g, {{1, 0}, {1, 1}}), u, b);
        }
    }
    throw DomainError("unknown family");
}

SymTensor lifting_to_B(const ModuliPoint& p) {
    const CycScalar half = p.l3 * CycScalar(Rational(1, 2));
    CycMatrix m(2, 2);
    m << p.l1, half, half, p.l2;
    return SymTensor(m);
}

std::optional<CycScalar> moduli_invariant(const ModuliPoint& p) {
    if (p.l3.is_zero()) return std::nullopt;
    return p.l1 * p.l2 / (p.l3 * p.l3);
}

ModuliPoint canonical_form(const ModuliPoint& p) {
    const CycScalar zero(0), one(1);
    if (!p.l3.is_zero()) {
        if (p.l1.is_zero() && p.l2.is_zero()) return {zero, zero, one};
        return {*moduli_invariant(p), one, one};
    }
    const int nonzero = (p.l1.is_zero() ? 0 : 1) + (p.l2.is_zero() ? 0 : 1);
    if (nonzero == 0) return {zero, zero, zero};
    if (nonzero == 1) return {one, zero, zero};
    return {one, one, zero};
}

ModuliVerdict moduli_equivalent(const ModuliPoint& p, const ModuliPoint& q, Family) {
    // all three classified families carry the same Z_2 x| D action
    ModuliVerdict v;
    v.canonical_p = canonical_form(p);
    v.canonical_q = canonical_form(q);
    v.invariant_p = moduli_invariant(p);
    v.invariant_q = moduli_invariant(q);
    v.equivalent = v.canonical_p == v.canonical_q;
    return v;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Distinct: return "distinct";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

bool families_distinguished(const FamilyDatum& a, const FamilyDatum& b) {
    if (a.group().order() != b.group().order() || a.rep.dim() != b.rep.dim()) return true;
    for (const auto& phi : isomorphisms(a.group(), a.u, b.group(), b.u)) {
        bool same = true;
        for (std::size_t g = 0; g < a.group().order() && same; ++g)
            same = a.rep.character(g) == b.rep.character(phi(g));
        if (same) return false;
    }
    return true;
}

Verdict compare_by_invariants(const FamilyDatum& a, const FamilyDatum& b) {
    if (families_distinguished(a, b)) return Verdict::Distinct;
    if (!(coalgebra_type(a) == coalgebra_type(b))) return Verdict::Distinct;
    if (a.group().cyclic_factors() == b.group().cyclic_factors() && a.u.element == b.u.element) {
        bool same_rep = true;
        for (std::size_t g = 0; g < a.group().order() && same_rep; ++g) same_rep = exactly_equal(a.rep(g), b.rep(g));
        if (same_rep && is_invariant(a.b - b.b, a.rep)) return Verdict::Equivalent;
    }
    return Verdict::Inconclusive;
}

// ---------------------------------------------------------------------------
// Cohomology

namespace {

struct AugmentedProducts {
    std::size_t n = 0;                      // number of augmentation-ideal basis vectors
    std::vector<std::vector<std::pair<std::size_t, CycScalar>>> prod;  // prod[i * n + j]
};

AugmentedProducts augmented_products(const HopfStructure& h) {
    if (h.unit.size() != 1 || !h.unit.terms()[0].second.is_one())
        throw DomainError("cohomology needs the unit to be a basis element");
    const std::size_t one = static_cast<std::size_t>(h.unit.terms()[0].first);
    std::vector<std::size_t> aug, position(h.dim, h.dim);
    for (std::size_t k = 0; k < h.dim; ++k)
        if (k != one) {
            position[k] = aug.size();
            aug.push_back(k);
        }
    AugmentedProducts out;
    out.n = aug.size();
    out.prod.resize(out.n * out.n);
    for (std::size_t i = 0; i < out.n; ++i)
        for (std::size_t j = 0; j < out.n; ++j) {
            const std::size_t a = aug[i], b = aug[j];
            // (b_a - eps_a 1)(b_b - eps_b 1), dropping the unit coordinate
            SparseVec v = h.mult[a * h.dim + b];
            v -= h.counit[a] * SparseVec::basis(b);
            v -= h.counit[b] * SparseVec::basis(a);
            for (const auto& [k, c] : v)
                if (k != one) out.prod[i * out.n + j].emplace_back(position[k], c);
        }
    return out;
}

// rank of d^p : C^p -> C^{p+1} on normalized cochains
std::size_t coboundary_rank(const AugmentedProducts& ap, int p) {
    if (p <= 0) return 0;
    const std::size_t n = ap.n;
    std::size_t ncols = 1, nrows = 1;
    for (int i = 0; i < p; ++i) ncols *= n;
    nrows = ncols * n;
    std::vector<SparseRow<CycScalar>> rows;
    rows.reserve(nrows);
    std::vector<std::size_t> t(static_cast<std::size_t>(p + 1));
    for (std::size_t r = 0; r < nrows; ++r) {
        std::size_t rest = r;
        for (int i = p; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = rest % n;
            rest /= n;
        }
        std::map<std::size_t, CycScalar> row;
        for (int i = 0; i < p; ++i) {
            // (-1)^{i+1} f(t_0 .. t_i t_{i+1} .. t_p)
            const bool negative = (i % 2) == 0;
            std::size_t prefix = 0;
            for (int k = 0; k < i; ++k) prefix = prefix * n + t[static_cast<std::size_t>(k)];
            std::size_t suffix = 0, scale = 1;
            for (int k = p; k > i + 1; --k) {
                suffix += t[static_cast<std::size_t>(k)] * scale;
                scale *= n;
            }
            for (const auto& [m, c] : ap.prod[t[static_cast<std::size_t>(i)] * n + t[static_cast<std::size_t>(i + 1)]]) {
                const std::size_t col = (prefix * n + m) * scale + suffix;
                row[col] += negative ? -c : c;
            }
        }
        SparseRow<CycScalar> sr;
        for (auto& [c, v] : row)
            if (!v.is_zero()) sr.emplace_back(c, std::move(v));
        if (!sr.empty()) rows.push_back(std::move(sr));
    }
    return sparse_rank(rows, ncols);
}

void check_capacity(const HopfStructure& h, int i, std::size_t capacity) {
    if (i < 0) throw DomainError("cohomology degree must be non-negative");
    std::size_t cells = 1;
    for (int k = 0; k <= i; ++k) {
        if (cells > capacity / h.dim + 1) {
            cells = capacity + 1;
            break;
        }
        cells *= h.dim;
    }
    if (cells > capacity)
        throw CapacityError("cohomology degree " + std::to_string(i) + ": cochain space C^" + std::to_string(i + 1) +
                            " has dim^" + std::to_string(i + 1) + " > capacity " + std::to_string(capacity));
}

}  // namespace

std::size_t hochschild_dim(const HopfStructure& h, int i, std::size_t capacity) {
    check_capacity(h, i, capacity);
    const AugmentedProducts ap = augmented_products(h);
    std::size_t cochains = 1;
    for (int k = 0; k < i; ++k) cochains *= ap.n;
    return cochains - coboundary_rank(ap, i) - coboundary_rank(ap, i - 1);
}

std::size_t symmetric_invariant_dim(const Representation& rep, int i) {
    return static_cast<std::size_t>(invariant_subspace(symmetric_power(dual(rep), i)).cols());
}

std::vector<CohomologyRow> cohomology_table(const HopfStructure& h, const Representation& rep, int max_degree,
                                            std::size_t capacity) {
    // fail before any work when the top degree is out of reach
    for (int i = 0; i <= max_degree; ++i) check_capacity(h, i, capacity);
    std::vector<CohomologyRow> out;
    for (int i = 0; i <= max_degree; ++i)
        out.push_back({i, hochschild_dim(h, i, capacity), symmetric_invariant_dim(rep, i)});
    return out;
}

// ---------------------------------------------------------------------------
// Frobenius-Perron dimension

FpReport fp_dimension(const std::vector<std::vector<long>>& fusion, const std::vector<long>& dims, double tolerance) {
    const std::size_t n = fusion.size();
    if (n == 0 || dims.size() != n) throw DomainError("fusion matrix and dimension vector sizes differ");
    for (const auto& row : fusion) {
        if (row.size() != n) throw DomainError("fusion matrix must be square");
        for (long v : row)
            if (v < 0) throw DomainError("fusion matrix has a negative entry");
    }
    for (long v : dims)
        if (v <= 0) throw DomainError("object dimensions must be positive");

    FpReport rep;
    std::vector<long> image(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) image[i] += fusion[i][j] * dims[j];
    if (image[0] % dims[0] != 0)
        throw DomainError("fusion * dims is not an integer multiple of dims: not a consistent snapshot");
    rep.claimed = image[0] / dims[0];
    for (std::size_t i = 0; i < n; ++i)
        if (image[i] != rep.claimed * dims[i])
            throw DomainError("fusion * dims != d * dims at row " + std::to_string(i) +
                              ": not a consistent Grothendieck-ring snapshot");
    rep.eigen_identity = true;

    // power iteration on L + I (same Perron vector, aperiodic), Collatz-Wielandt bounds
    Eigen::MatrixXd l(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(fusion[i][j]);
    const Eigen::MatrixXd shifted = l + Eigen::MatrixXd::Identity(l.rows(), l.cols());
    Eigen::VectorXd v = Eigen::VectorXd::Ones(l.rows());
    double lo = 0.0, hi = 0.0;
    for (rep.iterations = 1; rep.iterations <= 100000; ++rep.iterations) {
        const Eigen::VectorXd w = shifted * v;
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            const double ratio = w(i) / v(i);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        v = w / w.maxCoeff();
        if (hi - lo <= tolerance * std::max(1.0, hi)) break;
    }
    rep.estimate = 0.5 * (lo + hi) - 1.0;
    rep.agrees = std::abs(rep.estimate - static_cast<double>(rep.claimed)) <= tolerance * std::max(1.0, rep.estimate);
    return rep;
}

std::vector<std::vector<long>> abelian_fusion_matrix(const FiniteGroup& g, const std::vector<long>& object) {
    const std::size_t n = g.order();
    if (object.size() != n) throw DomainError("object needs one multiplicity per simple");
    std::vector<std::vector<long>> l(n, std::vector<long>(n, 0));
    // chi_k (x) chi_j = chi_{k+j}: the entry (i, j) counts chi_k in the object with k + j = i
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) l[i][j] = object[g.multiply(i, g.inverse(j))];
    return l;
}

}  // namespace trihopf
