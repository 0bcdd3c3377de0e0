#include "trihopf/hopf.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "trihopf/errors.hpp"
#include "trihopf/linalg.hpp"

namespace trihopf {

// ---------------------------------------------------------------------------
// SparseVec

SparseVec SparseVec::basis(Key k, const CycScalar& c) {
    SparseVec v;
    if (!c.is_zero()) v.terms_.emplace_back(k, c);
    return v;
}

SparseVec SparseVec::from_terms(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    SparseVec v;
    for (auto& t : terms) {
        if (!v.terms_.empty() && v.terms_.back().first == t.first) {
            v.terms_.back().second += t.second;
        } else {
            if (!v.terms_.empty() && v.terms_.back().second.is_zero()) v.terms_.pop_back();
            v.terms_.push_back(std::move(t));
        }
    }
    if (!v.terms_.empty() && v.terms_.back().second.is_zero()) v.terms_.pop_back();
    return v;
}

CycScalar SparseVec::coeff(Key k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, Key key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return CycScalar(0);
}

namespace {

std::vector<SparseVec::Term> merge_terms(const std::vector<SparseVec::Term>& a, const std::vector<SparseVec::Term>& b,
                                         bool subtract) {
    std::vector<SparseVec::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
            ++j;
        } else {
            CycScalar c = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
            if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

SparseVec& SparseVec::operator+=(const SparseVec& other) {
    terms_ = merge_terms(terms_, other.terms_, false);
    return *this;
}

SparseVec& SparseVec::operator-=(const SparseVec& other) {
    terms_ = merge_terms(terms_, other.terms_, true);
    return *this;
}

SparseVec& SparseVec::operator*=(const CycScalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms_ == b.terms_; }

void SparseAccumulator::add(const SparseVec& v, const CycScalar& scale) {
    for (const auto& [k, c] : v) add(k, c * scale);
}

SparseVec SparseAccumulator::take() {
    std::vector<SparseVec::Term> terms;
    terms.reserve(acc_.size());
    for (auto& [k, c] : acc_)
        if (!c.is_zero()) terms.emplace_back(k, std::move(c));
    acc_.clear();
    return SparseVec::from_terms(std::move(terms));
}

bool operator==(const HopfStructure& a, const HopfStructure& b) {
    return a.dim == b.dim && a.parity == b.parity && a.mult == b.mult && a.unit == b.unit && a.comult == b.comult &&
           a.counit == b.counit && a.antipode == b.antipode && a.rmatrix == b.rmatrix;
}

// ---------------------------------------------------------------------------
// Tensor keys

Key tensor_key(const std::vector<std::size_t>& indices, std::size_t dim) {
    Key k = 0;
    for (auto i : indices) k = k * dim + i;
    return k;
}

std::vector<std::size_t> tensor_indices(Key key, std::size_t dim, int order) {
    std::vector<std::size_t> out(static_cast<std::size_t>(order));
    for (int i = order; i-- > 0;) {
        out[static_cast<std::size_t>(i)] = static_cast<std::size_t>(key % dim);
        key /= dim;
    }
    return out;
}

namespace {

Key power_of(std::size_t dim, int k) {
    Key p = 1;
    for (int i = 0; i < k; ++i) p *= dim;
    return p;
}

// splits key into (prefix, index at position, suffix) for an order-`order` tensor
struct KeySplit {
    Key prefix;
    std::size_t index;
    Key suffix;
};

KeySplit split_key(Key key, std::size_t dim, int order, int position) {
    const Key low = power_of(dim, order - position - 1);
    KeySplit s;
    s.suffix = key % low;
    key /= low;
    s.index = static_cast<std::size_t>(key % dim);
    s.prefix = key / dim;
    return s;
}

std::string label_of(const HopfStructure& h, std::size_t i) {
    if (i < h.labels.size()) return h.labels[i];
    return "b" + std::to_string(i);
}

std::string key_label(const HopfStructure& h, Key key, int order) {
    const auto idx = tensor_indices(key, h.dim, order);
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += " (x) ";
        out += label_of(h, idx[i]);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Elementary operations

SparseVec multiply(const HopfStructure& h, const SparseVec& x, const SparseVec& y) {
    SparseAccumulator acc;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) acc.add(h.mult[a * h.dim + b], ca * cb);
    return acc.take();
}

SparseVec tensor_multiply(const HopfStructure& h, const SparseVec& x, const SparseVec& y, int order) {
    if (order == 1) return multiply(h, x, y);
    SparseAccumulator acc;
    const auto n = static_cast<std::size_t>(order);
    std::vector<const SparseVec*> factors(n);
    std::function<void(std::size_t, Key, const CycScalar&)> expand = [&](std::size_t i, Key key, const CycScalar& c) {
        if (i == n) {
            acc.add(key, c);
            return;
        }
        for (const auto& [k, v] : *factors[i]) expand(i + 1, key * h.dim + k, c * v);
    };
    for (const auto& [kx, cx] : x) {
        const auto ia = tensor_indices(kx, h.dim, order);
        for (const auto& [ky, cy] : y) {
            const auto ib = tensor_indices(ky, h.dim, order);
            int sign = 0;
            if (h.super()) {
                int later = 0;  // parity of a_{j+1} .. a_k
                for (std::size_t j = n; j-- > 0;) {
                    sign ^= later & h.parity[ib[j]];
                    later ^= h.parity[ia[j]];
                }
            }
            bool zero = false;
            for (std::size_t i = 0; i < n; ++i) {
                factors[i] = &h.mult[ia[i] * h.dim + ib[i]];
                if (factors[i]->empty()) zero = true;
            }
            if (zero) continue;
            CycScalar c = cx * cy;
            if (sign) c = -c;
            expand(0, 0, c);
        }
    }
    return acc.take();
}

SparseVec tensor_unit(const HopfStructure& h, int order) {
    SparseVec out = h.unit;
    for (int i = 1; i < order; ++i) out = insert_unit(h, out, i, i);
    return out;
}

SparseVec apply_comult(const HopfStructure& h, const SparseVec& t, int order, int position) {
    SparseAccumulator acc;
    const Key low = power_of(h.dim, order - position - 1);
    for (const auto& [k, c] : t) {
        const auto s = split_key(k, h.dim, order, position);
        for (const auto& [d, v] : h.comult[s.index]) {
            const Key mid = s.prefix * h.dim * h.dim + d;
            acc.add(mid * low + s.suffix, c * v);
        }
    }
    return acc.take();
}

SparseVec apply_counit(const HopfStructure& h, const SparseVec& t, int order, int position) {
    SparseAccumulator acc;
    const Key low = power_of(h.dim, order - position - 1);
    for (const auto& [k, c] : t) {
        const auto s = split_key(k, h.dim, order, position);
        const CycScalar& e = h.counit[s.index];
        if (e.is_zero()) continue;
        acc.add(s.prefix * low + s.suffix, c * e);
    }
    return acc.take();
}

SparseVec apply_map(const HopfStructure& h, const std::vector<SparseVec>& images, const SparseVec& t, int order,
                    int position) {
    SparseAccumulator acc;
    const Key low = power_of(h.dim, order - position - 1);
    for (const auto& [k, c] : t) {
        const auto s = split_key(k, h.dim, order, position);
        for (const auto& [d, v] : images[s.index]) acc.add(((s.prefix * h.dim) + d) * low + s.suffix, c * v);
    }
    return acc.take();
}

SparseVec insert_unit(const HopfStructure& h, const SparseVec& t, int order, int position) {
    SparseAccumulator acc;
    const Key low = power_of(h.dim, order - position);
    for (const auto& [k, c] : t) {
        const Key suffix = k % low;
        const Key prefix = k / low;
        for (const auto& [d, v] : h.unit) acc.add(((prefix * h.dim) + d) * low + suffix, c * v);
    }
    return acc.take();
}

SparseVec multiply_out(const HopfStructure& h, const SparseVec& t) {
    SparseAccumulator acc;
    for (const auto& [k, c] : t) acc.add(h.mult[k], c);
    return acc.take();
}

SparseVec flip(const HopfStructure& h, const SparseVec& t) {
    std::vector<SparseVec::Term> terms;
    terms.reserve(t.size());
    for (const auto& [k, c] : t) {
        const std::size_t a = k / h.dim, b = k % h.dim;
        const bool neg = h.parity_of(a) && h.parity_of(b);
        terms.emplace_back(static_cast<Key>(b) * h.dim + a, neg ? -c : c);
    }
    return SparseVec::from_terms(std::move(terms));
}

std::optional<SparseVec> tensor_inverse(const HopfStructure& h, const SparseVec& t, int order) {
    const SparseVec one = tensor_unit(h, order);
    const SparseVec nil = t - one;
    // geometric series sum (-N)^m, exact when N is nilpotent
    SparseVec inv = one;
    SparseVec power = one;
    const int max_terms = 8 * order + static_cast<int>(h.dim);
    for (int m = 1; m <= max_terms && !power.empty(); ++m) {
        power = CycScalar(-1) * tensor_multiply(h, power, nil, order);
        inv += power;
    }
    if (power.empty() && tensor_multiply(h, t, inv, order) == one && tensor_multiply(h, inv, t, order) == one)
        return inv;

    // general case: solve t X = 1 column by column
    const Key n = power_of(h.dim, order);
    if (n > (Key{1} << 20)) throw CapacityError("tensor_inverse: tensor power too large for a direct solve");
    std::vector<SparseRow<CycScalar>> rows(n);
    for (Key col = 0; col < n; ++col) {
        const SparseVec image = tensor_multiply(h, t, SparseVec::basis(col), order);
        for (const auto& [r, c] : image) rows[r].emplace_back(static_cast<std::size_t>(col), c);
    }
    std::vector<CycScalar> rhs(n, CycScalar(0));
    for (const auto& [k, c] : one) rhs[k] = c;
    const auto sol = sparse_solve(rows, rhs, static_cast<std::size_t>(n));
    if (!sol.unique()) return std::nullopt;
    std::vector<SparseVec::Term> terms;
    for (Key k = 0; k < n; ++k)
        if (!(*sol.solution)[k].is_zero()) terms.emplace_back(k, (*sol.solution)[k]);
    SparseVec x = SparseVec::from_terms(std::move(terms));
    if (tensor_multiply(h, x, t, order) != one) return std::nullopt;
    return x;
}

CycScalar counit_of(const HopfStructure& h, const SparseVec& x) {
    CycScalar out(0);
    for (const auto& [k, c] : x)
        if (!h.counit[k].is_zero()) out += c * h.counit[k];
    return out;
}

std::string format_element(const HopfStructure& h, const SparseVec& x, int order) {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : x) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")*" + key_label(h, k, order);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification

bool VerificationReport::verified() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

const AxiomCheck* VerificationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

std::string VerificationReport::to_string() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << c.axiom << ": " << (c.pass ? "pass" : "FAIL");
        if (!c.pass) os << " [" << c.witness << "]";
        os << "\n";
    }
    return os.str();
}

namespace {

AxiomCheck check_shape(const HopfStructure& h) {
    AxiomCheck c{"shape", true, ""};
    const std::size_t d = h.dim;
    auto fail = [&](const std::string& why) {
        if (c.pass) {
            c.pass = false;
            c.witness = why;
        }
    };
    if (d == 0) fail("dimension is zero");
    if (h.mult.size() != d * d) fail("mult has " + std::to_string(h.mult.size()) + " entries");
    if (h.comult.size() != d) fail("comult has " + std::to_string(h.comult.size()) + " entries");
    if (h.counit.size() != d) fail("counit has " + std::to_string(h.counit.size()) + " entries");
    if (!h.parity.empty() && h.parity.size() != d) fail("parity vector length mismatch");
    if (h.antipode && h.antipode->size() != d) fail("antipode has wrong length");
    if (!c.pass) return c;
    auto bounded = [&](const SparseVec& v, Key limit) {
        return std::all_of(v.begin(), v.end(), [&](const SparseVec::Term& t) { return t.first < limit; });
    };
    for (const auto& v : h.mult)
        if (!bounded(v, d)) fail("mult entry out of range");
    for (const auto& v : h.comult)
        if (!bounded(v, d * d)) fail("comult entry out of range");
    if (!bounded(h.unit, d)) fail("unit out of range");
    if (h.super()) {
        for (std::size_t a = 0; a < d && c.pass; ++a)
            for (std::size_t b = 0; b < d && c.pass; ++b)
                for (const auto& [k, v] : h.mult[a * d + b])
                    if (h.parity[k] != (h.parity[a] ^ h.parity[b]))
                        fail("mult is not even: " + label_of(h, a) + " * " + label_of(h, b));
        for (std::size_t a = 0; a < d && c.pass; ++a)
            for (const auto& [k, v] : h.comult[a])
                if ((h.parity[k / d] ^ h.parity[k % d]) != h.parity[a])
                    fail("comult is not even at " + label_of(h, a));
    }
    return c;
}

}  // namespace

VerificationReport verify_hopf(const HopfStructure& h, bool require_antipode) {
    VerificationReport report;
    report.checks.push_back(check_shape(h));
    if (!report.checks.back().pass) return report;
    const std::size_t d = h.dim;
    auto basis = [](std::size_t i) { return SparseVec::basis(i); };

    AxiomCheck assoc{"associativity", true, ""};
    for (std::size_t a = 0; a < d && assoc.pass; ++a)
        for (std::size_t b = 0; b < d && assoc.pass; ++b) {
            const SparseVec& ab = h.mult[a * d + b];
            for (std::size_t c = 0; c < d; ++c) {
                const SparseVec left = multiply(h, ab, basis(c));
                const SparseVec right = multiply(h, basis(a), h.mult[b * d + c]);
                if (left != right) {
                    assoc.pass = false;
                    assoc.witness = "(" + label_of(h, a) + " " + label_of(h, b) + ") " + label_of(h, c) + " = " +
                                    format_element(h, left) + " but " + label_of(h, a) + " (" + label_of(h, b) + " " +
                                    label_of(h, c) + ") = " + format_element(h, right);
                    break;
                }
            }
        }
    report.checks.push_back(assoc);

    AxiomCheck unital{"unitality", true, ""};
    for (std::size_t a = 0; a < d; ++a) {
        if (multiply(h, h.unit, basis(a)) != basis(a) || multiply(h, basis(a), h.unit) != basis(a)) {
            unital.pass = false;
            unital.witness = "1 * " + label_of(h, a);
            break;
        }
    }
    report.checks.push_back(unital);

    AxiomCheck coassoc{"coassociativity", true, ""};
    for (std::size_t a = 0; a < d; ++a) {
        const SparseVec left = apply_comult(h, h.comult[a], 2, 0);
        const SparseVec right = apply_comult(h, h.comult[a], 2, 1);
        if (left != right) {
            coassoc.pass = false;
            coassoc.witness = label_of(h, a) + ": (D x id)D = " + format_element(h, left, 3) +
                              " but (id x D)D = " + format_element(h, right, 3);
            break;
        }
    }
    report.checks.push_back(coassoc);

    AxiomCheck counital{"counitality", true, ""};
    for (std::size_t a = 0; a < d; ++a) {
        if (apply_counit(h, h.comult[a], 2, 0) != basis(a) || apply_counit(h, h.comult[a], 2, 1) != basis(a)) {
            counital.pass = false;
            counital.witness = label_of(h, a);
            break;
        }
    }
    report.checks.push_back(counital);

    AxiomCheck compat{"compatibility", true, ""};
    {
        const SparseVec one2 = tensor_unit(h, 2);
        SparseAccumulator acc;
        for (const auto& [k, c] : h.unit) acc.add(h.comult[k], c);
        if (acc.take() != one2) {
            compat.pass = false;
            compat.witness = "Delta(1) != 1 (x) 1";
        } else if (counit_of(h, h.unit) != CycScalar(1)) {
            compat.pass = false;
            compat.witness = "eps(1) != 1";
        }
    }
    for (std::size_t a = 0; a < d && compat.pass; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const SparseVec& ab = h.mult[a * d + b];
            SparseAccumulator acc;
            for (const auto& [k, c] : ab) acc.add(h.comult[k], c);
            const SparseVec left = acc.take();
            const SparseVec right = tensor_multiply(h, h.comult[a], h.comult[b], 2);
            if (left != right) {
                compat.pass = false;
                compat.witness = "Delta(" + label_of(h, a) + " " + label_of(h, b) + ") = " + format_element(h, left, 2) +
                                 " but Delta(" + label_of(h, a) + ")Delta(" + label_of(h, b) +
                                 ") = " + format_element(h, right, 2);
                break;
            }
            if (counit_of(h, ab) != h.counit[a] * h.counit[b]) {
                compat.pass = false;
                compat.witness = "eps(" + label_of(h, a) + " " + label_of(h, b) + ") is not multiplicative";
                break;
            }
        }
    report.checks.push_back(compat);

    AxiomCheck anti{"antipode", true, ""};
    if (!h.antipode) {
        if (require_antipode) {
            anti.pass = false;
            anti.witness = "no antipode stored";
        }
    } else {
        const auto& s = *h.antipode;
        for (std::size_t a = 0; a < d; ++a) {
            const SparseVec expected = h.counit[a] * h.unit;
            const SparseVec left = multiply_out(h, apply_map(h, s, h.comult[a], 2, 0));
            const SparseVec right = multiply_out(h, apply_map(h, s, h.comult[a], 2, 1));
            if (left != expected || right != expected) {
                anti.pass = false;
                anti.witness = label_of(h, a) + ": S(x1)x2 = " + format_element(h, left) +
                               ", x1S(x2) = " + format_element(h, right);
                break;
            }
        }
    }
    report.checks.push_back(anti);
    return report;
}

void require_verified(const HopfStructure& h, const std::string& context) {
    const auto report = verify_hopf(h);
    if (const auto* f = report.first_failure())
        throw InternalError(context + ": " + f->axiom + " fails (" + f->witness + ")");
}

bool twist_equation_check(const HopfStructure& h, const SparseVec& j) {
    if (!tensor_inverse(h, j, 2)) throw DomainError("twist_equation_check: J is not invertible");
    if (apply_counit(h, j, 2, 0) != h.unit || apply_counit(h, j, 2, 1) != h.unit) return false;
    const SparseVec left = tensor_multiply(h, apply_comult(h, j, 2, 0), insert_unit(h, j, 2, 2), 3);
    const SparseVec right = tensor_multiply(h, apply_comult(h, j, 2, 1), insert_unit(h, j, 2, 0), 3);
    return left == right;
}

HopfStructure drinfeld_twist(const HopfStructure& h, const SparseVec& j) {
    if (!twist_equation_check(h, j)) throw DomainError("drinfeld_twist: J does not satisfy the twist equation");
    const SparseVec jinv = *tensor_inverse(h, j, 2);
    HopfStructure out = h;
    for (std::size_t a = 0; a < h.dim; ++a)
        out.comult[a] = tensor_multiply(h, tensor_multiply(h, jinv, h.comult[a], 2), j, 2);
    if (h.rmatrix) out.rmatrix = tensor_multiply(h, tensor_multiply(h, flip(h, jinv), *h.rmatrix, 2), j, 2);
    out.antipode.reset();
    auto s = compute_antipode(out);
    if (!s) throw InternalError("drinfeld_twist: twisted bialgebra has no antipode");
    out.antipode = std::move(*s);
    require_verified(out, "drinfeld_twist");
    return out;
}

// ---------------------------------------------------------------------------
// Cocycles

namespace {

void require_ordinary(const HopfStructure& h, const char* what) {
    if (h.super()) throw DomainError(std::string(what) + " is implemented for ordinary Hopf algebras only");
}

// coefficients of Delta^2(b_a) as (i, j, k, c)
struct Triple {
    std::size_t i, j, k;
    CycScalar c;
};

std::vector<Triple> double_comult(const HopfStructure& h, std::size_t a) {
    std::vector<Triple> out;
    for (const auto& [key, c] : apply_comult(h, h.comult[a], 2, 0)) {
        const auto idx = tensor_indices(key, h.dim, 3);
        out.push_back({idx[0], idx[1], idx[2], c});
    }
    return out;
}

}  // namespace

CycMatrix convolve(const HopfStructure& h, const CycMatrix& f, const CycMatrix& g) {
    require_ordinary(h, "convolution of bilinear forms");
    const auto d = static_cast<Eigen::Index>(h.dim);
    CycMatrix out = CycMatrix::Zero(d, d);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
            CycScalar s(0);
            for (const auto& [ka, ca] : h.comult[a])
                for (const auto& [kb, cb] : h.comult[b]) {
                    const auto a1 = static_cast<Eigen::Index>(ka / h.dim), a2 = static_cast<Eigen::Index>(ka % h.dim);
                    const auto b1 = static_cast<Eigen::Index>(kb / h.dim), b2 = static_cast<Eigen::Index>(kb % h.dim);
                    if (f(a1, b1).is_zero() || g(a2, b2).is_zero()) continue;
                    s += ca * cb * f(a1, b1) * g(a2, b2);
                }
            out(a, b) = s;
        }
    return out;
}

Cocycle2 make_cocycle(const HopfStructure& h, const CycMatrix& phi, const std::optional<CycMatrix>& inverse) {
    require_ordinary(h, "Hopf 2-cocycles");
    const auto d = static_cast<Eigen::Index>(h.dim);
    if (phi.rows() != d || phi.cols() != d) throw DomainError("cocycle matrix must be dim x dim");
    CycMatrix eps(d, d);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) eps(a, b) = h.counit[a] * h.counit[b];

    CycMatrix inv;
    if (inverse) {
        inv = *inverse;
    } else {
        // unknown psi(x, y) at column x * d + y
        std::vector<SparseRow<CycScalar>> rows;
        std::vector<CycScalar> rhs;
        for (Eigen::Index a = 0; a < d; ++a)
            for (Eigen::Index b = 0; b < d; ++b) {
                std::map<std::size_t, CycScalar> row;
                for (const auto& [ka, ca] : h.comult[a])
                    for (const auto& [kb, cb] : h.comult[b]) {
                        const CycScalar& f = phi(static_cast<Eigen::Index>(ka / h.dim), static_cast<Eigen::Index>(kb / h.dim));
                        if (f.is_zero()) continue;
                        row[(ka % h.dim) * h.dim + kb % h.dim] += ca * cb * f;
                    }
                SparseRow<CycScalar> r;
                for (auto& [c, v] : row)
                    if (!v.is_zero()) r.emplace_back(c, std::move(v));
                rows.push_back(std::move(r));
                rhs.push_back(eps(a, b));
            }
        const auto sol = sparse_solve(rows, rhs, h.dim * h.dim);
        if (!sol.solution) throw DomainError("bilinear form is not convolution invertible");
        if (!sol.unique()) throw InternalError("convolution inverse is not unique");
        inv.resize(d, d);
        for (Eigen::Index x = 0; x < d; ++x)
            for (Eigen::Index y = 0; y < d; ++y) inv(x, y) = (*sol.solution)[static_cast<std::size_t>(x * d + y)];
    }
    if (!exactly_equal(convolve(h, phi, inv), eps) || !exactly_equal(convolve(h, inv, phi), eps))
        throw DomainError("bilinear form is not convolution invertible (supplied inverse rejected)");
    return Cocycle2{phi, inv};
}

bool verify_hopf_2_cocycle(const HopfStructure& h, const Cocycle2& phi) {
    require_ordinary(h, "Hopf 2-cocycles");
    const std::size_t d = h.dim;
    // w[a * d + b] = sum phi(a_2, b_2) a_1 b_1
    std::vector<SparseVec> w(d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            SparseAccumulator acc;
            for (const auto& [ka, ca] : h.comult[a])
                for (const auto& [kb, cb] : h.comult[b]) {
                    const CycScalar& f = phi.phi(static_cast<Eigen::Index>(ka % d), static_cast<Eigen::Index>(kb % d));
                    if (f.is_zero()) continue;
                    acc.add(h.mult[(ka / d) * d + kb / d], ca * cb * f);
                }
            w[a * d + b] = acc.take();
        }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                CycScalar left(0), right(0);
                for (const auto& [k, v] : w[a * d + b])
                    left += v * phi.phi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c));
                for (const auto& [k, v] : w[b * d + c])
                    right += v * phi.phi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k));
                if (left != right) return false;
            }
    return true;
}

HopfStructure cocycle_twist(const HopfStructure& h, const Cocycle2& phi) {
    require_ordinary(h, "cocycle twisting");
    if (!h.antipode) throw DomainError("cocycle_twist needs a Hopf algebra with antipode");
    if (!verify_hopf_2_cocycle(h, phi)) throw DomainError("cocycle_twist: form is not a Hopf 2-cocycle");
    const std::size_t d = h.dim;
    std::vector<std::vector<Triple>> d2(d);
    for (std::size_t a = 0; a < d; ++a) d2[a] = double_comult(h, a);

    HopfStructure out = h;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            SparseAccumulator acc;
            for (const auto& ta : d2[a])
                for (const auto& tb : d2[b]) {
                    const CycScalar& l = phi.inverse(static_cast<Eigen::Index>(ta.i), static_cast<Eigen::Index>(tb.i));
                    if (l.is_zero()) continue;
                    const CycScalar& r = phi.phi(static_cast<Eigen::Index>(ta.k), static_cast<Eigen::Index>(tb.k));
                    if (r.is_zero()) continue;
                    acc.add(h.mult[ta.j * d + tb.j], ta.c * tb.c * l * r);
                }
            out.mult[a * d + b] = acc.take();
        }

    // S_phi(a) = sum u(a_1) S(a_2) v(a_3), u(x) = phi^-1(x_1, S x_2), v(x) = phi(S x_1, x_2)
    const auto& s = *h.antipode;
    std::vector<CycScalar> u(d, CycScalar(0)), v(d, CycScalar(0));
    for (std::size_t x = 0; x < d; ++x)
        for (const auto& [k, c] : h.comult[x]) {
            const std::size_t x1 = k / d, x2 = k % d;
            for (const auto& [sk, sc] : s[x2])
                u[x] += c * sc * phi.inverse(static_cast<Eigen::Index>(x1), static_cast<Eigen::Index>(sk));
            for (const auto& [sk, sc] : s[x1])
                v[x] += c * sc * phi.phi(static_cast<Eigen::Index>(sk), static_cast<Eigen::Index>(x2));
        }
    std::vector<SparseVec> twisted(d);
    for (std::size_t a = 0; a < d; ++a) {
        SparseAccumulator acc;
        for (const auto& t : d2[a]) {
            if (u[t.i].is_zero() || v[t.k].is_zero()) continue;
            acc.add(s[t.j], t.c * u[t.i] * v[t.k]);
        }
        twisted[a] = acc.take();
    }
    out.antipode = std::move(twisted);
    out.rmatrix.reset();
    require_verified(out, "cocycle_twist");
    return out;
}

// ---------------------------------------------------------------------------
// Antipode, dual, triangularity

std::optional<std::vector<SparseVec>> compute_antipode(const HopfStructure& h) {
    const std::size_t d = h.dim;
    // unknown S(b_i) coefficient on b_j at column i * d + j
    std::vector<SparseRow<CycScalar>> rows;
    std::vector<CycScalar> rhs;
    for (int side = 0; side < 2; ++side)
        for (std::size_t c = 0; c < d; ++c) {
            std::map<std::size_t, std::map<std::size_t, CycScalar>> eq;  // output basis k -> row
            for (const auto& [key, t] : h.comult[c]) {
                const std::size_t a = key / d, b = key % d;
                for (std::size_t j = 0; j < d; ++j) {
                    // side 0: S(b_a) b_b ; side 1: b_a S(b_b)
                    const SparseVec& prod = side == 0 ? h.mult[j * d + b] : h.mult[a * d + j];
                    const std::size_t col = (side == 0 ? a : b) * d + j;
                    for (const auto& [k, m] : prod) eq[k][col] += t * m;
                }
            }
            for (std::size_t k = 0; k < d; ++k) {
                SparseRow<CycScalar> row;
                auto it = eq.find(k);
                if (it != eq.end())
                    for (auto& [col, v] : it->second)
                        if (!v.is_zero()) row.emplace_back(col, std::move(v));
                CycScalar r = h.counit[c] * h.unit.coeff(k);
                if (row.empty() && r.is_zero()) continue;
                rows.push_back(std::move(row));
                rhs.push_back(std::move(r));
            }
        }
    const auto sol = sparse_solve(rows, rhs, d * d);
    if (!sol.solution) return std::nullopt;
    if (!sol.unique()) throw InternalError("compute_antipode: antipode is not unique, structure data are corrupted");
    std::vector<SparseVec> s(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<SparseVec::Term> terms;
        for (std::size_t j = 0; j < d; ++j)
            if (!(*sol.solution)[i * d + j].is_zero()) terms.emplace_back(j, (*sol.solution)[i * d + j]);
        s[i] = SparseVec::from_terms(std::move(terms));
    }
    return s;
}

HopfStructure dualize(const HopfStructure& h) {
    const std::size_t d = h.dim;
    HopfStructure out;
    out.dim = d;
    out.parity = h.parity;
    out.labels.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.labels[i] = "f(" + label_of(h, i) + ")";
    auto sign = [&](std::size_t a, std::size_t b) { return h.parity_of(a) && h.parity_of(b) ? -1 : 1; };

    std::vector<std::vector<SparseVec::Term>> mult_terms(d * d), comult_terms(d);
    for (std::size_t c = 0; c < d; ++c)
        for (const auto& [key, t] : h.comult[c]) {
            const std::size_t a = key / d, b = key % d;
            mult_terms[a * d + b].emplace_back(c, sign(a, b) < 0 ? -t : t);
        }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (const auto& [c, t] : h.mult[a * d + b])
                comult_terms[c].emplace_back(static_cast<Key>(a * d + b), sign(a, b) < 0 ? -t : t);
    out.mult.resize(d * d);
    for (std::size_t i = 0; i < d * d; ++i) out.mult[i] = SparseVec::from_terms(std::move(mult_terms[i]));
    out.comult.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.comult[i] = SparseVec::from_terms(std::move(comult_terms[i]));

    std::vector<SparseVec::Term> unit_terms;
    for (std::size_t c = 0; c < d; ++c)
        if (!h.counit[c].is_zero()) unit_terms.emplace_back(c, h.counit[c]);
    out.unit = SparseVec::from_terms(std::move(unit_terms));
    out.counit.assign(d, CycScalar(0));
    for (const auto& [k, c] : h.unit) out.counit[k] = c;

    if (h.antipode) {
        std::vector<std::vector<SparseVec::Term>> s_terms(d);
        for (std::size_t c = 0; c < d; ++c)
            for (const auto& [a, t] : (*h.antipode)[c]) s_terms[a].emplace_back(c, t);
        std::vector<SparseVec> s(d);
        for (std::size_t a = 0; a < d; ++a) s[a] = SparseVec::from_terms(std::move(s_terms[a]));
        out.antipode = std::move(s);
    }
    return out;
}

TriangularReport verify_triangular(const HopfStructure& h, const SparseVec& r) {
    TriangularReport rep;
    rep.delta_left.axiom = "(Delta x id)R = R13 R23";
    rep.delta_right.axiom = "(id x Delta)R = R13 R12";
    rep.quasi_cocommutative.axiom = "R Delta(x) = Delta^op(x) R";
    rep.triangular.axiom = "R21 R = 1";

    const SparseVec r13 = insert_unit(h, r, 2, 1);
    const SparseVec r23 = insert_unit(h, r, 2, 0);
    const SparseVec r12 = insert_unit(h, r, 2, 2);
    const SparseVec dl = apply_comult(h, r, 2, 0);
    const SparseVec expect_l = tensor_multiply(h, r13, r23, 3);
    if (dl != expect_l) {
        rep.delta_left.pass = false;
        rep.delta_left.witness = "lhs " + format_element(h, dl, 3) + " rhs " + format_element(h, expect_l, 3);
    }
    const SparseVec dr = apply_comult(h, r, 2, 1);
    const SparseVec expect_r = tensor_multiply(h, r13, r12, 3);
    if (dr != expect_r) {
        rep.delta_right.pass = false;
        rep.delta_right.witness = "lhs " + format_element(h, dr, 3) + " rhs " + format_element(h, expect_r, 3);
    }
    for (std::size_t a = 0; a < h.dim; ++a) {
        const SparseVec left = tensor_multiply(h, r, h.comult[a], 2);
        const SparseVec right = tensor_multiply(h, flip(h, h.comult[a]), r, 2);
        if (left != right) {
            rep.quasi_cocommutative.pass = false;
            rep.quasi_cocommutative.witness = "x = " + label_of(h, a) + ": R Delta(x) = " + format_element(h, left, 2) +
                                              ", Delta^op(x) R = " + format_element(h, right, 2);
            break;
        }
    }
    const SparseVec prod = tensor_multiply(h, flip(h, r), r, 2);
    if (prod != tensor_unit(h, 2)) {
        rep.triangular.pass = false;
        rep.triangular.witness = "R21 R = " + format_element(h, prod, 2);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Structure inspection

std::vector<std::size_t> grouplike_basis_elements(const HopfStructure& h) {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < h.dim; ++a)
        if (h.comult[a] == SparseVec::basis(static_cast<Key>(a * h.dim + a)) && h.counit[a].is_one()) out.push_back(a);
    return out;
}

namespace {

// basis of the radical of the algebra (h.mult), as dense columns
CycMatrix radical_basis(const HopfStructure& h) {
    const auto d = static_cast<Eigen::Index>(h.dim);
    std::vector<CycScalar> tr(h.dim, CycScalar(0));
    for (std::size_t k = 0; k < h.dim; ++k)
        for (std::size_t i = 0; i < h.dim; ++i) tr[k] += h.mult[k * h.dim + i].coeff(i);
    CycMatrix form(d, d);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
            CycScalar s(0);
            for (const auto& [k, c] : h.mult[static_cast<std::size_t>(a * d + b)]) s += c * tr[k];
            form(a, b) = s;
        }
    return kernel(form);
}

}  // namespace

std::size_t radical_dimension(const HopfStructure& h) { return static_cast<std::size_t>(radical_basis(h).cols()); }

std::size_t grouplike_count(const HopfStructure& h) {
    // characters of H* = dim of H* modulo (rad + commutator ideal)
    const HopfStructure dual = dualize(h);
    const std::size_t d = h.dim;
    SparseEchelon<CycScalar> ech(d);
    std::vector<SparseVec> queue;
    auto offer = [&](const SparseVec& v) {
        SparseRow<CycScalar> row;
        for (const auto& [k, c] : v) row.emplace_back(static_cast<std::size_t>(k), c);
        if (ech.insert(row)) queue.push_back(v);
    };
    const CycMatrix rad = radical_basis(dual);
    for (Eigen::Index c = 0; c < rad.cols(); ++c) {
        std::vector<SparseVec::Term> terms;
        for (Eigen::Index r = 0; r < rad.rows(); ++r)
            if (!rad(r, c).is_zero()) terms.emplace_back(static_cast<Key>(r), rad(r, c));
        offer(SparseVec::from_terms(std::move(terms)));
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) offer(dual.mult[a * d + b] - dual.mult[b * d + a]);
    for (std::size_t i = 0; i < queue.size() && ech.rank() < d; ++i) {
        const SparseVec v = queue[i];
        for (std::size_t a = 0; a < d; ++a) {
            offer(multiply(dual, SparseVec::basis(a), v));
            offer(multiply(dual, v, SparseVec::basis(a)));
        }
    }
    return d - ech.rank();
}

std::vector<SkewPrimitiveCount> skew_primitive_census(const HopfStructure& h) {
    std::vector<SkewPrimitiveCount> out;
    const std::size_t d = h.dim;
    const std::size_t unit_index = h.unit.size() == 1 && h.unit.terms()[0].second.is_one()
                                       ? static_cast<std::size_t>(h.unit.terms()[0].first)
                                       : d;
    for (std::size_t g : grouplike_basis_elements(h)) {
        SparseEchelon<CycScalar> ech(d * d);
        for (std::size_t x = 0; x < d; ++x) {
            SparseVec image = h.comult[x];
            for (const auto& [k, c] : h.unit) image -= SparseVec::basis(static_cast<Key>(x * d + k), c);
            image -= SparseVec::basis(static_cast<Key>(g * d + x));
            SparseRow<CycScalar> row;
            for (const auto& [k, c] : image) row.emplace_back(static_cast<std::size_t>(k), c);
            ech.insert(row);
        }
        const std::size_t kernel_dim = d - ech.rank();
        const std::size_t trivial = g == unit_index ? 0 : 1;
        out.push_back({g, kernel_dim - trivial});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constructors and serialization

HopfStructure group_algebra(const FiniteGroup& g) {
    HopfStructure h;
    const std::size_t n = g.order();
    h.dim = n;
    h.labels.resize(n);
    h.mult.resize(n * n);
    h.comult.resize(n);
    h.counit.assign(n, CycScalar(1));
    std::vector<SparseVec> s(n);
    for (std::size_t a = 0; a < n; ++a) {
        h.labels[a] = g.label(a);
        for (std::size_t b = 0; b < n; ++b) h.mult[a * n + b] = SparseVec::basis(g.multiply(a, b));
        h.comult[a] = SparseVec::basis(static_cast<Key>(a * n + a));
        s[a] = SparseVec::basis(g.inverse(a));
    }
    h.unit = SparseVec::basis(g.identity());
    h.antipode = std::move(s);
    require_verified(h, "group_algebra");
    return h;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json vec_json(const SparseVec& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& [k, c] : v) arr.push_back(ordered_json::array({k, c.to_string()}));
    return arr;
}

SparseVec vec_from_json(const ordered_json& arr) {
    std::vector<SparseVec::Term> terms;
    for (const auto& e : arr) terms.emplace_back(e.at(0).get<Key>(), parse_scalar(e.at(1).get<std::string>()));
    return SparseVec::from_terms(std::move(terms));
}

}  // namespace

std::string serialize(const HopfStructure& h) {
    ordered_json j;
    j["dim"] = h.dim;
    j["super"] = h.super();
    j["labels"] = h.labels;
    j["parity"] = h.parity;
    j["unit"] = vec_json(h.unit);
    ordered_json mult = ordered_json::array();
    for (std::size_t a = 0; a < h.dim; ++a)
        for (std::size_t b = 0; b < h.dim; ++b)
            for (const auto& [k, c] : h.mult[a * h.dim + b])
                mult.push_back(ordered_json::array({a, b, k, c.to_string()}));
    j["mult"] = std::move(mult);
    ordered_json comult = ordered_json::array();
    for (std::size_t a = 0; a < h.dim; ++a)
        for (const auto& [k, c] : h.comult[a])
            comult.push_back(ordered_json::array({a, k / h.dim, k % h.dim, c.to_string()}));
    j["comult"] = std::move(comult);
    ordered_json counit = ordered_json::array();
    for (const auto& c : h.counit) counit.push_back(c.to_string());
    j["counit"] = std::move(counit);
    if (h.antipode) {
        ordered_json s = ordered_json::array();
        for (std::size_t a = 0; a < h.dim; ++a)
            for (const auto& [k, c] : (*h.antipode)[a]) s.push_back(ordered_json::array({a, k, c.to_string()}));
        j["antipode"] = std::move(s);
    } else {
        j["antipode"] = nullptr;
    }
    j["rmatrix"] = h.rmatrix ? vec_json(*h.rmatrix) : ordered_json(nullptr);
    return j.dump(1);
}

HopfStructure deserialize(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid structure document: ") + e.what(), e.byte);
    }
    try {
        HopfStructure h;
        h.dim = j.at("dim").get<std::size_t>();
        const std::size_t d = h.dim;
        h.labels = j.at("labels").get<std::vector<std::string>>();
        h.parity = j.at("parity").get<std::vector<std::uint8_t>>();
        h.unit = vec_from_json(j.at("unit"));
        std::vector<std::vector<SparseVec::Term>> mult(d * d), comult(d);
        for (const auto& e : j.at("mult"))
            mult.at(e.at(0).get<std::size_t>() * d + e.at(1).get<std::size_t>())
                .emplace_back(e.at(2).get<Key>(), parse_scalar(e.at(3).get<std::string>()));
        for (const auto& e : j.at("comult"))
            comult.at(e.at(0).get<std::size_t>())
                .emplace_back(e.at(1).get<Key>() * d + e.at(2).get<Key>(), parse_scalar(e.at(3).get<std::string>()));
        for (auto& t : mult) h.mult.push_back(SparseVec::from_terms(std::move(t)));
        for (auto& t : comult) h.comult.push_back(SparseVec::from_terms(std::move(t)));
        for (const auto& e : j.at("counit")) h.counit.push_back(parse_scalar(e.get<std::string>()));
        if (!j.at("antipode").is_null()) {
            std::vector<std::vector<SparseVec::Term>> s(d);
            for (const auto& e : j.at("antipode"))
                s.at(e.at(0).get<std::size_t>()).emplace_back(e.at(1).get<Key>(), parse_scalar(e.at(2).get<std::string>()));
            std::vector<SparseVec> sv;
            for (auto& t : s) sv.push_back(SparseVec::from_terms(std::move(t)));
            h.antipode = std::move(sv);
        }
        if (!j.at("rmatrix").is_null()) h.rmatrix = vec_from_json(j.at("rmatrix"));
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed structure document: ") + e.what(), 0);
    } catch (const std::out_of_range&) {
        throw ParseError("structure document index out of range", 0);
    }
}

}  // namespace trihopf
