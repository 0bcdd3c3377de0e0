#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace trihopf {

using Rational = mpq_class;

int euler_phi(int n);

// Upper bound on the modulus n of any Q(zeta_n) value. Default 256.
void set_modulus_cap(int cap);
int modulus_cap();

/// Exact element of the cyclotomic field Q(zeta_n).
///
/// Stored as the coefficient vector of a polynomial in zeta_n of degree
/// < phi(n), reduced modulo the n-th cyclotomic polynomial. Values whose
/// coefficients vanish above degree 0 are demoted to modulus 1, so rationals
/// stay cheap. Binary operations promote both operands to lcm(n_a, n_b).
class CycScalar {
public:
    CycScalar() : modulus_(1), coeffs_(1) {}
    CycScalar(int value) : modulus_(1), coeffs_{Rational(value)} {}
    CycScalar(long value) : modulus_(1), coeffs_{Rational(value)} {}
    CycScalar(const Rational& value) : modulus_(1), coeffs_{value} { coeffs_[0].canonicalize(); }

    // Takes ownership of a raw coefficient vector of length phi(n).
    CycScalar(int modulus, std::vector<Rational> coeffs);

    static CycScalar root_of_unity(int n, long k);

    int modulus() const noexcept { return modulus_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_rational() const noexcept { return modulus_ == 1; }
    const Rational& rational_value() const;

    CycScalar promoted(int n) const;
    CycScalar conj() const;
    CycScalar inverse() const;
    CycScalar pow(long k) const;

    CycScalar& operator+=(const CycScalar& other);
    CycScalar& operator-=(const CycScalar& other);
    CycScalar& operator*=(const CycScalar& other);
    CycScalar& operator/=(const CycScalar& other);

    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
    friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
    friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
    CycScalar operator-() const;

    friend bool operator==(const CycScalar& a, const CycScalar& b);
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    // Canonical text form, e.g. "1/2", "z8^3", "1 + 2*z8^1 - 1/3*z8^2".
    // Round-trips through parse_scalar.
    std::string to_string() const;

private:
    void normalize();

    int modulus_;
    std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycScalar& x);

inline CycScalar root_of_unity(int n, long k) { return CycScalar::root_of_unity(n, k); }

inline bool is_zero(const CycScalar& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline CycScalar conj(const CycScalar& x) { return x.conj(); }

/// Parses "p/q", "z{n}^{k}" and sums/products/parentheses of them.
/// Throws ParseError with the offending offset.
CycScalar parse_scalar(std::string_view text);

/// Nearest complex double; used only by floating-point estimators and test oracles.
std::complex<double> to_complex(const CycScalar& x);

using CycMatrix = Eigen::Matrix<CycScalar, Eigen::Dynamic, Eigen::Dynamic>;
using CycVector = Eigen::Matrix<CycScalar, Eigen::Dynamic, 1>;

}  // namespace trihopf

namespace Eigen {

template <>
struct NumTraits<trihopf::CycScalar> {
    using Real = trihopf::CycScalar;
    using NonInteger = trihopf::CycScalar;
    using Nested = trihopf::CycScalar;
    using Literal = trihopf::CycScalar;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 64
    };
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
