#include "trihopf/cyclotomic.hpp"

#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "trihopf/errors.hpp"

namespace trihopf {

namespace {

constexpr int kHardModulusLimit = 4096;
std::atomic<int> g_modulus_cap{256};

struct CyclotomicTable {
    int n = 1;
    int phi = 1;
    // reduction[k] = coefficients of x^k mod Phi_n, for 0 <= k < n
    std::vector<std::vector<long>> reduction;
};

using Poly = std::vector<mpz_class>;  // low degree first

Poly poly_divide_exact(Poly num, const Poly& den) {
    // den is monic
    const std::size_t dn = den.size() - 1;
    Poly quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        mpz_class c = num[i];
        quot[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (std::size_t j = 0; j < dn; ++j)
        if (num[j] != 0) throw InternalError("cyclotomic division left a remainder");
    return quot;
}

const Poly& cyclotomic_poly(int n);

std::mutex g_poly_mutex;
std::vector<std::unique_ptr<Poly>> g_polys(kHardModulusLimit + 1);

const Poly& cyclotomic_poly_locked(int n) {
    if (g_polys[n]) return *g_polys[n];
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_divide_exact(std::move(p), cyclotomic_poly_locked(d));
    g_polys[n] = std::make_unique<Poly>(std::move(p));
    return *g_polys[n];
}

const Poly& cyclotomic_poly(int n) {
    std::lock_guard<std::mutex> lock(g_poly_mutex);
    return cyclotomic_poly_locked(n);
}

std::array<std::atomic<const CyclotomicTable*>, kHardModulusLimit + 1> g_tables{};
std::mutex g_table_mutex;
std::deque<CyclotomicTable> g_table_storage;

const CyclotomicTable& build_table(int n) {
    const Poly& phi_poly = cyclotomic_poly(n);
    CyclotomicTable t;
    t.n = n;
    t.phi = static_cast<int>(phi_poly.size()) - 1;
    t.reduction.assign(n, std::vector<long>(t.phi, 0));
    std::vector<mpz_class> cur(t.phi, 0);
    cur[0] = 1;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < t.phi; ++j) {
            if (!cur[j].fits_slong_p()) throw CapacityError("cyclotomic reduction coefficient overflow");
            t.reduction[k][j] = cur[j].get_si();
        }
        // multiply by x and reduce
        mpz_class top = cur[t.phi - 1];
        for (int j = t.phi - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (int j = 0; j < t.phi; ++j) cur[j] -= top * phi_poly[j];
    }
    std::lock_guard<std::mutex> lock(g_table_mutex);
    if (const auto* existing = g_tables[n].load(std::memory_order_acquire)) return *existing;
    g_table_storage.push_back(std::move(t));
    const CyclotomicTable* ptr = &g_table_storage.back();
    g_tables[n].store(ptr, std::memory_order_release);
    return *ptr;
}

void check_modulus(int n) {
    if (n < 1) throw DomainError("cyclotomic modulus must be positive");
    if (n > g_modulus_cap.load() || n > kHardModulusLimit)
        throw CapacityError("cyclotomic modulus " + std::to_string(n) + " exceeds cap " +
                            std::to_string(g_modulus_cap.load()));
}

const CyclotomicTable& table(int n) {
    if (const auto* t = g_tables[n].load(std::memory_order_acquire)) return *t;
    check_modulus(n);
    return build_table(n);
}

long mod_floor(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

int checked_lcm(int a, int b) {
    if (a == b) return a;
    long l = std::lcm(static_cast<long>(a), static_cast<long>(b));
    if (l > g_modulus_cap.load() || l > kHardModulusLimit)
        throw CapacityError("cyclotomic modulus " + std::to_string(l) + " exceeds cap " +
                            std::to_string(g_modulus_cap.load()));
    return static_cast<int>(l);
}

// Coefficient vector of c * zeta_n^k added into acc.
void add_power(std::vector<Rational>& acc, const CyclotomicTable& t, long k, const Rational& c) {
    if (sgn(c) == 0) return;
    const long e = mod_floor(k, t.n);
    if (e < t.phi) {
        acc[e] += c;
        return;
    }
    const auto& red = t.reduction[e];
    for (int j = 0; j < t.phi; ++j)
        if (red[j] != 0) acc[j] += c * red[j];
}

}  // namespace

int euler_phi(int n) {
    if (n < 1) throw DomainError("euler_phi of non-positive integer");
    int result = n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

void set_modulus_cap(int cap) {
    if (cap < 1 || cap > kHardModulusLimit)
        throw DomainError("modulus cap must lie in [1, " + std::to_string(kHardModulusLimit) + "]");
    g_modulus_cap.store(cap);
}

int modulus_cap() { return g_modulus_cap.load(); }

CycScalar::CycScalar(int modulus, std::vector<Rational> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
    const auto& t = table(modulus);
    if (static_cast<int>(coeffs_.size()) != t.phi)
        throw DomainError("coefficient vector length must equal phi(n)");
    for (auto& c : coeffs_) c.canonicalize();
    normalize();
}

CycScalar CycScalar::root_of_unity(int n, long k) {
    const auto& t = table(n);
    std::vector<Rational> c(t.phi);
    add_power(c, t, k, Rational(1));
    return CycScalar(n, std::move(c));
}

void CycScalar::normalize() {
    if (modulus_ == 1) return;
    for (std::size_t j = 1; j < coeffs_.size(); ++j)
        if (sgn(coeffs_[j]) != 0) return;
    coeffs_.resize(1);
    modulus_ = 1;
}

bool CycScalar::is_zero() const noexcept {
    for (const auto& c : coeffs_)
        if (sgn(c) != 0) return false;
    return true;
}

bool CycScalar::is_one() const noexcept { return modulus_ == 1 && coeffs_[0] == 1; }

const Rational& CycScalar::rational_value() const {
    if (modulus_ != 1) throw DomainError("cyclotomic value is not rational: " + to_string());
    return coeffs_[0];
}

CycScalar CycScalar::promoted(int n) const {
    if (n == modulus_) return *this;
    if (n % modulus_ != 0) throw DomainError("cannot promote to a modulus that is not a multiple");
    const auto& t = table(n);
    const long step = n / modulus_;
    CycScalar out;
    out.modulus_ = n;
    out.coeffs_.assign(t.phi, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) add_power(out.coeffs_, t, static_cast<long>(k) * step, coeffs_[k]);
    return out;
}

CycScalar CycScalar::conj() const {
    if (modulus_ == 1) return *this;
    const auto& t = table(modulus_);
    std::vector<Rational> c(t.phi);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) add_power(c, t, -static_cast<long>(k), coeffs_[k]);
    return CycScalar(modulus_, std::move(c));
}

CycScalar& CycScalar::operator+=(const CycScalar& other) {
    if (modulus_ == other.modulus_) {
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    } else {
        const int n = checked_lcm(modulus_, other.modulus_);
        CycScalar a = promoted(n);
        const CycScalar b = other.promoted(n);
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k) a.coeffs_[k] += b.coeffs_[k];
        *this = std::move(a);
    }
    normalize();
    return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& other) {
    if (modulus_ == other.modulus_) {
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    } else {
        const int n = checked_lcm(modulus_, other.modulus_);
        CycScalar a = promoted(n);
        const CycScalar b = other.promoted(n);
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k) a.coeffs_[k] -= b.coeffs_[k];
        *this = std::move(a);
    }
    normalize();
    return *this;
}

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
    if (a.modulus_ == 1) {
        CycScalar out = b;
        for (auto& c : out.coeffs_) c *= a.coeffs_[0];
        out.normalize();
        return out;
    }
    if (b.modulus_ == 1) {
        CycScalar out = a;
        for (auto& c : out.coeffs_) c *= b.coeffs_[0];
        out.normalize();
        return out;
    }
    const int n = checked_lcm(a.modulus_, b.modulus_);
    const CycScalar pa = a.promoted(n);
    const CycScalar pb = b.promoted(n);
    const auto& t = table(n);
    std::vector<Rational> raw(2 * t.phi - 1);
    for (int i = 0; i < t.phi; ++i) {
        if (sgn(pa.coeffs_[i]) == 0) continue;
        for (int j = 0; j < t.phi; ++j)
            if (sgn(pb.coeffs_[j]) != 0) raw[i + j] += pa.coeffs_[i] * pb.coeffs_[j];
    }
    std::vector<Rational> c(t.phi);
    for (std::size_t k = 0; k < raw.size(); ++k) add_power(c, t, static_cast<long>(k), raw[k]);
    return CycScalar(n, std::move(c));
}

CycScalar& CycScalar::operator*=(const CycScalar& other) {
    *this = *this * other;
    return *this;
}

CycScalar& CycScalar::operator/=(const CycScalar& other) {
    if (other.modulus_ == 1) {
        if (sgn(other.coeffs_[0]) == 0) throw DomainError("division by zero");
        for (auto& c : coeffs_) c /= other.coeffs_[0];
        return *this;
    }
    *this = *this * other.inverse();
    return *this;
}

CycScalar CycScalar::operator-() const {
    CycScalar out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

CycScalar CycScalar::inverse() const {
    if (is_zero()) throw DomainError("inversion of zero");
    if (modulus_ == 1) return CycScalar(Rational(1) / coeffs_[0]);
    const auto& t = table(modulus_);
    const int m = t.phi;
    // column j of the multiplication-by-this matrix is this * zeta^j
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(m + 1));
    for (int j = 0; j < m; ++j) {
        std::vector<Rational> col(m);
        for (int k = 0; k < m; ++k) add_power(col, t, k + j, coeffs_[k]);
        for (int i = 0; i < m; ++i) aug[i][j] = col[i];
    }
    aug[0][m] = 1;
    for (int c = 0; c < m; ++c) {
        int piv = c;
        while (piv < m && sgn(aug[piv][c]) == 0) ++piv;
        if (piv == m) throw InternalError("singular multiplication matrix for nonzero cyclotomic value");
        std::swap(aug[piv], aug[c]);
        const Rational inv = Rational(1) / aug[c][c];
        for (int k = c; k <= m; ++k) aug[c][k] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == c || sgn(aug[r][c]) == 0) continue;
            const Rational f = aug[r][c];
            for (int k = c; k <= m; ++k) aug[r][k] -= f * aug[c][k];
        }
    }
    std::vector<Rational> x(m);
    for (int i = 0; i < m; ++i) x[i] = aug[i][m];
    return CycScalar(modulus_, std::move(x));
}

CycScalar CycScalar::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    CycScalar result(1);
    CycScalar base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return result;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
    if (a.modulus_ == b.modulus_) return a.coeffs_ == b.coeffs_;
    const int n = checked_lcm(a.modulus_, b.modulus_);
    return a.promoted(n).coeffs_ == b.promoted(n).coeffs_;
}

std::string CycScalar::to_string() const {
    if (modulus_ == 1) return coeffs_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
        if (sgn(c) == 0) continue;
        const bool negative = sgn(c) < 0;
        const Rational mag = abs(c);
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << '*';
        os << 'z' << modulus_ << '^' << k;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycScalar& x) { return os << x.to_string(); }

std::complex<double> to_complex(const CycScalar& x) {
    std::complex<double> acc = 0.0;
    const double n = x.modulus();
    for (std::size_t k = 0; k < x.coeffs().size(); ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
        acc += x.coeffs()[k].get_d() * std::polar(1.0, angle);
    }
    return acc;
}

namespace {

class ScalarParser {
public:
    explicit ScalarParser(std::string_view text) : text_(text) {}

    CycScalar parse() {
        CycScalar v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("scalar: " + msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    mpz_class integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    long signed_small_integer() {
        bool negative = accept('-');
        if (!negative) accept('+');
        mpz_class v = integer();
        if (!v.fits_slong_p()) fail("exponent too large");
        return negative ? -v.get_si() : v.get_si();
    }

    CycScalar expr() {
        CycScalar acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    CycScalar term() {
        CycScalar acc = factor();
        for (;;) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                CycScalar d = factor();
                if (d.is_zero()) throw ParseError("scalar: division by zero", at);
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    CycScalar factor() {
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        CycScalar base = primary();
        if (accept('^')) {
            const std::size_t at = pos_;
            const long k = signed_small_integer();
            if (k < 0 && base.is_zero()) throw ParseError("scalar: zero to a negative power", at);
            base = base.pow(k);
        }
        return base;
    }

    CycScalar primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            CycScalar v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (c == 'z') {
            ++pos_;
            const std::size_t at = pos_;
            mpz_class n = integer();
            if (n < 1 || !n.fits_sint_p()) throw ParseError("scalar: bad root-of-unity order", at);
            return root_of_unity(static_cast<int>(n.get_si()), 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return CycScalar(Rational(integer()));
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

CycScalar parse_scalar(std::string_view text) { return ScalarParser(text).parse(); }

}  // namespace trihopf
