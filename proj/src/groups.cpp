#include "trihopf/groups.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "trihopf/errors.hpp"
#include "trihopf/linalg.hpp"

namespace trihopf {

namespace {

constexpr std::size_t kMaxGroupOrder = 4096;

}  // namespace

FiniteGroup::FiniteGroup(std::vector<int> cyclic_factors) : factors_(std::move(cyclic_factors)) {
    if (factors_.empty()) factors_.push_back(1);
    for (int n : factors_) {
        if (n < 1) throw DomainError("cyclic factor sizes must be positive");
        order_ *= static_cast<std::size_t>(n);
        if (order_ > kMaxGroupOrder) throw CapacityError("group order exceeds " + std::to_string(kMaxGroupOrder));
    }
    cayley_.resize(order_ * order_);
    inverse_.resize(order_);
    for (std::size_t a = 0; a < order_; ++a) {
        const auto ea = exponents(a);
        std::vector<long> inv(ea.size());
        for (std::size_t j = 0; j < ea.size(); ++j) inv[j] = -ea[j];
        inverse_[a] = element(inv);
        for (std::size_t b = 0; b < order_; ++b) {
            auto eb = exponents(b);
            for (std::size_t j = 0; j < eb.size(); ++j) eb[j] += ea[j];
            cayley_[a * order_ + b] = element(eb);
        }
    }
}

std::vector<long> FiniteGroup::exponents(std::size_t g) const {
    std::vector<long> out(factors_.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        out[j] = static_cast<long>(g % factors_[j]);
        g /= factors_[j];
    }
    return out;
}

std::size_t FiniteGroup::element(const std::vector<long>& exps) const {
    if (exps.size() != factors_.size()) throw DomainError("exponent vector length must match the number of factors");
    std::size_t g = 0;
    for (std::size_t j = factors_.size(); j-- > 0;) {
        long e = exps[j] % factors_[j];
        if (e < 0) e += factors_[j];
        g = g * factors_[j] + static_cast<std::size_t>(e);
    }
    return g;
}

std::size_t FiniteGroup::generator(std::size_t j) const {
    std::vector<long> e(factors_.size(), 0);
    e.at(j) = 1;
    return element(e);
}

std::size_t FiniteGroup::power(std::size_t a, long k) const {
    auto e = exponents(a);
    for (auto& x : e) x *= k;
    return element(e);
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t x = a; x != identity(); x = multiply(x, a)) ++k;
    return k;
}

bool FiniteGroup::is_central(std::size_t a) const {
    for (std::size_t b = 0; b < order_; ++b)
        if (multiply(a, b) != multiply(b, a)) return false;
    return true;
}

std::string FiniteGroup::label(std::size_t g) const {
    if (g == identity()) return "1";
    const auto e = exponents(g);
    std::string out;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        out += static_cast<char>('a' + j);
        if (e[j] > 1) out += "^" + std::to_string(e[j]);
    }
    return out;
}

std::shared_ptr<const FiniteGroup> build_group(const std::vector<int>& cyclic_factors) {
    auto group = std::make_shared<const FiniteGroup>(cyclic_factors);
    const FiniteGroup& g = *group;
    const std::size_t n = g.order();
    // Light's test: associativity against a generating set suffices.
    for (std::size_t j = 0; j < g.rank(); ++j) {
        const std::size_t s = g.generator(j);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (g.multiply(g.multiply(a, b), s) != g.multiply(a, g.multiply(b, s)))
                    throw InternalError("Cayley table is not associative");
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (g.multiply(g.identity(), a) != a || g.multiply(a, g.identity()) != a)
            throw InternalError("Cayley table identity check failed");
        if (g.multiply(g.inverse(a), a) != g.identity()) throw InternalError("Cayley table inverse check failed");
    }
    return group;
}

CentralInvolution make_central_involution(const FiniteGroup& group, std::size_t u) {
    if (u >= group.order()) throw DomainError("involution index out of range");
    if (group.multiply(u, u) != group.identity()) throw DomainError("u must satisfy u^2 = 1");
    if (!group.is_central(u)) throw DomainError("u must be central");
    return CentralInvolution{u};
}

Automorphism compose(const Automorphism& outer, const Automorphism& inner) {
    Automorphism out;
    out.image.resize(inner.image.size());
    for (std::size_t g = 0; g < inner.image.size(); ++g) out.image[g] = outer(inner(g));
    return out;
}

Automorphism inverse(const Automorphism& phi) {
    Automorphism out;
    out.image.resize(phi.image.size());
    for (std::size_t g = 0; g < phi.image.size(); ++g) out.image[phi(g)] = g;
    return out;
}

std::vector<Automorphism> isomorphisms(const FiniteGroup& from, CentralInvolution u_from, const FiniteGroup& to,
                                       CentralInvolution u_to, std::size_t order_bound, std::size_t count_bound) {
    const std::size_t n = from.order();
    if (n > order_bound || to.order() > order_bound)
        throw CapacityError("isomorphism search: group order exceeds bound " + std::to_string(order_bound));
    std::vector<Automorphism> out;
    if (to.order() != n) return out;
    const std::size_t r = from.rank();
    const auto& factors = from.cyclic_factors();

    std::vector<std::vector<std::size_t>> candidates(r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t x = 0; x < n; ++x)
            if (to.power(x, factors[j]) == to.identity()) candidates[j].push_back(x);

    std::vector<std::size_t> images(r);

    // size of the subgroup of `to` generated by the first k images
    auto generated_size = [&](std::size_t k) {
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> frontier{to.identity()};
        seen[to.identity()] = 1;
        std::size_t count = 1;
        while (!frontier.empty()) {
            const std::size_t x = frontier.back();
            frontier.pop_back();
            for (std::size_t j = 0; j < k; ++j) {
                const std::size_t y = to.multiply(x, images[j]);
                if (!seen[y]) {
                    seen[y] = 1;
                    ++count;
                    frontier.push_back(y);
                }
            }
        }
        return count;
    };

    std::function<void(std::size_t, std::size_t)> search = [&](std::size_t k, std::size_t expected) {
        if (k == r) {
            Automorphism phi;
            phi.image.resize(n);
            for (std::size_t g = 0; g < n; ++g) {
                const auto e = from.exponents(g);
                std::size_t x = to.identity();
                for (std::size_t j = 0; j < r; ++j) x = to.multiply(x, to.power(images[j], e[j]));
                phi.image[g] = x;
            }
            if (phi(u_from.element) != u_to.element) return;
            std::vector<char> hit(n, 0);
            for (auto x : phi.image) hit[x] = 1;
            if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (phi(from.multiply(a, b)) != to.multiply(phi(a), phi(b)))
                        throw InternalError("isomorphism candidate is not a homomorphism");
            if (out.size() >= count_bound)
                throw CapacityError("isomorphism count exceeds bound " + std::to_string(count_bound));
            out.push_back(std::move(phi));
            return;
        }
        const std::size_t next_expected = expected * static_cast<std::size_t>(factors[k]);
        for (std::size_t x : candidates[k]) {
            images[k] = x;
            if (generated_size(k + 1) != next_expected) continue;
            search(k + 1, next_expected);
        }
    };
    search(0, 1);
    return out;
}

std::vector<Automorphism> automorphisms_fixing(const FiniteGroup& group, CentralInvolution u, std::size_t order_bound,
                                               std::size_t count_bound) {
    return isomorphisms(group, u, group, u, order_bound, count_bound);
}

Representation::Representation(std::shared_ptr<const FiniteGroup> group, std::vector<CycMatrix> matrices)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
    if (!group_) throw DomainError("representation needs a group");
    const std::size_t n = group_->order();
    if (matrices_.size() != n) throw DomainError("one matrix per group element is required");
    dim_ = static_cast<std::size_t>(matrices_[0].rows());
    for (const auto& m : matrices_)
        if (static_cast<std::size_t>(m.rows()) != dim_ || static_cast<std::size_t>(m.cols()) != dim_)
            throw DomainError("representation matrices must all be dim x dim");
    if (!exactly_equal(matrices_[group_->identity()], CycMatrix::Identity(dim_, dim_)))
        throw DomainError("rho(1) must be the identity matrix");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const CycMatrix prod = matrices_[g] * matrices_[h];
            if (!exactly_equal(prod, matrices_[group_->multiply(g, h)]))
                throw DomainError("not a homomorphism: rho(" + group_->label(g) + ") rho(" + group_->label(h) +
                                  ") != rho(" + group_->label(group_->multiply(g, h)) + ")");
        }
}

Representation Representation::from_generators(std::shared_ptr<const FiniteGroup> group,
                                               const std::vector<CycMatrix>& generator_images) {
    if (!group) throw DomainError("representation needs a group");
    if (generator_images.size() != group->rank())
        throw DomainError("one generator matrix per cyclic factor is required");
    const Eigen::Index d = generator_images.empty() ? 0 : generator_images[0].rows();
    std::vector<CycMatrix> all(group->order());
    for (std::size_t g = 0; g < group->order(); ++g) {
        const auto e = group->exponents(g);
        CycMatrix m = CycMatrix::Identity(d, d);
        for (std::size_t j = 0; j < e.size(); ++j)
            for (long t = 0; t < e[j]; ++t) m = m * generator_images[j];
        all[g] = std::move(m);
    }
    return Representation(std::move(group), std::move(all));
}

CycScalar Representation::character(std::size_t g) const { return matrices_[g].trace(); }

bool Representation::acts_by_minus_one(std::size_t g) const {
    return exactly_equal(matrices_[g], CycMatrix(-CycMatrix::Identity(dim_, dim_)));
}

Representation build_character_rep(std::shared_ptr<const FiniteGroup> group,
                                   const std::vector<std::vector<long>>& weights) {
    if (!group) throw DomainError("representation needs a group");
    if (weights.empty()) throw DomainError("at least one weight vector is required");
    const auto& factors = group->cyclic_factors();
    const std::size_t d = weights.size();
    for (const auto& w : weights)
        if (w.size() != factors.size())
            throw DomainError("weight vector length " + std::to_string(w.size()) + " does not match " +
                              std::to_string(factors.size()) + " cyclic factors");
    std::vector<CycMatrix> mats(group->order());
    for (std::size_t g = 0; g < group->order(); ++g) {
        const auto e = group->exponents(g);
        CycMatrix m = CycMatrix::Zero(d, d);
        for (std::size_t k = 0; k < d; ++k) {
            CycScalar v(1);
            for (std::size_t j = 0; j < factors.size(); ++j) v *= root_of_unity(factors[j], weights[k][j] * e[j]);
            m(k, k) = v;
        }
        mats[g] = std::move(m);
    }
    return Representation(std::move(group), std::move(mats));
}

Representation dual(const Representation& rep) {
    const auto& g = rep.group();
    std::vector<CycMatrix> mats(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) mats[x] = rep(g.inverse(x)).transpose();
    return Representation(rep.group_ptr(), std::move(mats));
}

Representation pullback(const Representation& rep, const Automorphism& phi) {
    std::vector<CycMatrix> mats(rep.group().order());
    for (std::size_t x = 0; x < mats.size(); ++x) mats[x] = rep(phi(x));
    return Representation(rep.group_ptr(), std::move(mats));
}

std::vector<std::vector<int>> monomial_basis(std::size_t dim, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0) throw DomainError("symmetric power degree must be non-negative");
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < static_cast<int>(dim); ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Representation symmetric_power(const Representation& rep, int k) {
    const auto basis = monomial_basis(rep.dim(), k);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    const auto nb = static_cast<Eigen::Index>(basis.size());
    std::vector<CycMatrix> mats(rep.group().order());
    for (std::size_t g = 0; g < mats.size(); ++g) {
        const CycMatrix& m = rep(g);
        CycMatrix out = CycMatrix::Zero(nb, nb);
        for (std::size_t col = 0; col < basis.size(); ++col) {
            // expand prod_t (sum_j m(j, i_t) e_j) as a polynomial in commuting e_j
            std::map<std::vector<int>, CycScalar> poly{{{}, CycScalar(1)}};
            for (int i : basis[col]) {
                std::map<std::vector<int>, CycScalar> next;
                for (const auto& [mono, c] : poly)
                    for (Eigen::Index j = 0; j < m.rows(); ++j) {
                        if (m(j, i).is_zero()) continue;
                        auto key = mono;
                        key.insert(std::upper_bound(key.begin(), key.end(), static_cast<int>(j)), static_cast<int>(j));
                        next[key] += c * m(j, i);
                    }
                poly = std::move(next);
            }
            for (const auto& [mono, c] : poly)
                if (!c.is_zero()) out(static_cast<Eigen::Index>(index.at(mono)), static_cast<Eigen::Index>(col)) = c;
        }
        mats[g] = std::move(out);
    }
    if (rep.dim() == 0 || k == 0) {
        for (auto& m : mats) m = CycMatrix::Identity(nb, nb);
    }
    return Representation(rep.group_ptr(), std::move(mats));
}

std::vector<CycMatrix> intertwiners(const Representation& from, const Representation& to) {
    if (&from.group() != &to.group() && from.group().cyclic_factors() != to.group().cyclic_factors())
        throw DomainError("intertwiners need representations of the same group");
    const auto m = static_cast<Eigen::Index>(to.dim());
    const auto n = static_cast<Eigen::Index>(from.dim());
    // unknown eta (m x n), column-major vectorization: eta(i, j) -> i + j*m
    const std::size_t order = from.group().order();
    CycMatrix system = CycMatrix::Zero(static_cast<Eigen::Index>(order) * m * n, m * n);
    Eigen::Index row = 0;
    for (std::size_t g = 0; g < order; ++g) {
        const CycMatrix& a = from(g);
        const CycMatrix& b = to(g);
        // (eta a - b eta)(i, j) = sum_k eta(i,k) a(k,j) - sum_k b(i,k) eta(k,j)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < m; ++i, ++row) {
                for (Eigen::Index k = 0; k < n; ++k)
                    if (!a(k, j).is_zero()) system(row, i + k * m) += a(k, j);
                for (Eigen::Index k = 0; k < m; ++k)
                    if (!b(i, k).is_zero()) system(row, k + j * m) -= b(i, k);
            }
    }
    const CycMatrix basis = kernel(system);
    std::vector<CycMatrix> out;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        CycMatrix eta(m, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < m; ++i) eta(i, j) = basis(i + j * m, c);
        out.push_back(std::move(eta));
    }
    return out;
}

std::vector<CycMatrix> intertwiners(const Automorphism& phi, const Representation& rep) {
    return intertwiners(rep, pullback(rep, phi));
}

CycMatrix averaging_projector(const Representation& rep) {
    const auto d = static_cast<Eigen::Index>(rep.dim());
    CycMatrix p = CycMatrix::Zero(d, d);
    for (std::size_t g = 0; g < rep.group().order(); ++g) p += rep(g);
    p *= CycScalar(Rational(1, static_cast<long>(rep.group().order())));
    if (!exactly_equal(CycMatrix(p * p), p)) throw InternalError("averaging projector is not idempotent");
    for (std::size_t g = 0; g < rep.group().order(); ++g)
        if (!exactly_equal(CycMatrix(rep(g) * p), p)) throw InternalError("averaging projector image is not fixed");
    return p;
}

CycMatrix invariant_subspace(const Representation& rep) { return column_basis(averaging_projector(rep)); }

SymTensor::SymTensor(CycMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw DomainError("symmetric tensor must be square");
    if (!exactly_equal(matrix_, CycMatrix(matrix_.transpose())))
        throw DomainError("symmetric tensor matrix must equal its transpose");
}

SymTensor SymTensor::zero(std::size_t dim) {
    return SymTensor(CycMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

bool SymTensor::is_zero() const { return is_zero_matrix(matrix_); }

SymTensor operator+(const SymTensor& a, const SymTensor& b) {
    if (a.dim() != b.dim()) throw DomainError("symmetric tensor dimension mismatch");
    return SymTensor(CycMatrix(a.matrix_ + b.matrix_));
}

SymTensor operator-(const SymTensor& a, const SymTensor& b) {
    if (a.dim() != b.dim()) throw DomainError("symmetric tensor dimension mismatch");
    return SymTensor(CycMatrix(a.matrix_ - b.matrix_));
}

bool operator==(const SymTensor& a, const SymTensor& b) { return exactly_equal(a.matrix_, b.matrix_); }

CycVector SymTensor::s2_coordinates() const {
    const auto basis = monomial_basis(dim(), 2);
    CycVector v(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const CycScalar& c = matrix_(basis[k][0], basis[k][1]);
        v(static_cast<Eigen::Index>(k)) = basis[k][0] == basis[k][1] ? c : c * CycScalar(2);
    }
    return v;
}

SymTensor translate(const SymTensor& b, const Representation& rep, std::size_t g) {
    if (b.dim() != rep.dim()) throw DomainError("tensor and representation dimensions differ");
    const CycMatrix& inv = rep(rep.group().inverse(g));
    return SymTensor(CycMatrix(inv * b.matrix() * inv.transpose()));
}

bool is_invariant(const SymTensor& b, const Representation& rep) {
    for (std::size_t g = 0; g < rep.group().order(); ++g)
        if (!(translate(b, rep, g) == b)) return false;
    return true;
}

}  // namespace trihopf
