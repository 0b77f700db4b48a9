#ifndef QHL_CYCLOTOMIC_HPP
#define QHL_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qhl/complex_float.hpp"
#include "qhl/error.hpp"

namespace qhl {

using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws DivisionByZero on den == 0.
inline Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero();
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact element of Q(zeta), zeta = exp(i*pi/4):
///   c0 + c1*zeta + c2*zeta^2 + c3*zeta^3,  zeta^4 = -1.
///
/// {1, zeta, zeta^2, zeta^3} is a Q-basis, so the coefficient tuple is a
/// canonical form and equality is coefficient-wise. The real subfield is
/// Q(sqrt2) with sqrt2 = zeta - zeta^3, and i = zeta^2.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long v) : c_{Rational(v), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(Rational v) : c_{std::move(v), 0, 0, 0} { c_[0].canonicalize(); }  // NOLINT(google-explicit-constructor)
  Cyclotomic(Rational c0, Rational c1, Rational c2, Rational c3)
      : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {
    for (auto& c : c_) c.canonicalize();
  }

  static Cyclotomic zeta() { return {0, 1, 0, 0}; }
  static Cyclotomic imag_unit() { return {0, 0, 1, 0}; }
  static Cyclotomic sqrt2() { return {0, 1, 0, -1}; }

  /// a + b*sqrt2 for rationals a, b.
  static Cyclotomic from_real_parts(const Rational& a, const Rational& b) { return {a, b, 0, -b}; }

  const Rational& operator[](std::size_t k) const { return c_[k]; }
  const std::array<Rational, 4>& coefficients() const { return c_; }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_real() const { return c_[2] == 0 && c_[3] == -c_[1]; }

  Cyclotomic operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) {
    *this = *this * o;
    return *this;
  }
  Cyclotomic& operator/=(const Cyclotomic& o) {
    *this = *this * o.inverse();
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    std::array<Rational, 4> r{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (b.c_[j] == 0) continue;
        const int k = i + j;
        if (k < 4)
          r[k] += a.c_[i] * b.c_[j];
        else
          r[k - 4] -= a.c_[i] * b.c_[j];
      }
    }
    Cyclotomic out;
    out.c_ = std::move(r);
    return out;
  }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Complex conjugate: zeta -> zeta^-1 = -zeta^3.
  Cyclotomic conj() const { return {c_[0], -c_[3], -c_[2], -c_[1]}; }

  /// Galois automorphism zeta -> zeta^5 = -zeta; maps sqrt2 to -sqrt2.
  Cyclotomic galois5() const { return {c_[0], -c_[1], c_[2], -c_[3]}; }

  /// Multiplicative inverse. a*conj(a) lies in Q(sqrt2); multiplying once
  /// more by its sqrt2-conjugate leaves the rational norm.
  Cyclotomic inverse() const {
    if (is_zero()) throw DivisionByZero();
    const Cyclotomic ac = conj();
    const Cyclotomic real = *this * ac;
    const Cyclotomic real_bar = real.galois5();
    const Cyclotomic norm = real * real_bar;
    // norm is rational: only c0 survives.
    const Rational inv_norm = 1 / norm.c_[0];
    Cyclotomic out = ac * real_bar;
    for (auto& c : out.c_) c *= inv_norm;
    return out;
  }

  /// Real part as a + b*sqrt2 (returned as {a, b}).
  std::array<Rational, 2> real_part() const {
    return {c_[0], Rational((c_[1] - c_[3]) / 2)};
  }
  /// Imaginary part as a + b*sqrt2 (returned as {a, b}).
  std::array<Rational, 2> imag_part() const {
    return {c_[2], Rational((c_[1] + c_[3]) / 2)};
  }

  /// Exact sign of a real element. Throws NotReal otherwise.
  int real_sign() const;

  ComplexFloat to_float() const {
    const double h = std::sqrt(2.0) / 2.0;
    const double a0 = c_[0].get_d(), a1 = c_[1].get_d(), a2 = c_[2].get_d(), a3 = c_[3].get_d();
    return {a0 + (a1 - a3) * h, a2 + (a1 + a3) * h};
  }

  /// Expression over {rationals, sqrt2, i} accepted by the matrix-file parser.
  std::string to_string() const;

 private:
  std::array<Rational, 4> c_{0, 0, 0, 0};
};

namespace detail {

inline int sign_of(const Rational& q) { return sgn(q); }

/// Sign of a + b*sqrt2.
inline int sign_a_plus_b_sqrt2(const Rational& a, const Rational& b) {
  const int sa = sign_of(a);
  const int sb = sign_of(b);
  if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  // Mixed signs: compare a^2 with 2 b^2 (never equal, sqrt2 is irrational).
  const Rational lhs = a * a;
  const Rational rhs = 2 * b * b;
  const int cmp_sign = lhs > rhs ? 1 : -1;
  return sa > 0 ? cmp_sign : -cmp_sign;
}

inline void append_term(std::ostringstream& os, bool& first, const Rational& coef, const char* unit) {
  if (coef == 0) return;
  Rational mag = abs(coef);
  if (first) {
    if (coef < 0) os << "-";
  } else {
    os << (coef < 0 ? " - " : " + ");
  }
  first = false;
  if (*unit == '\0') {
    os << mag.get_str();
  } else if (mag == 1) {
    os << unit;
  } else {
    os << mag.get_str() << "*" << unit;
  }
}

}  // namespace detail

inline int Cyclotomic::real_sign() const {
  if (!is_real()) throw NotReal(to_string());
  return detail::sign_a_plus_b_sqrt2(c_[0], c_[1]);
}

inline std::string Cyclotomic::to_string() const {
  if (is_zero()) return "0";
  const auto re = real_part();
  const auto im = imag_part();
  std::ostringstream os;
  bool first = true;
  detail::append_term(os, first, re[0], "");
  detail::append_term(os, first, re[1], "sqrt2");
  detail::append_term(os, first, im[0], "i");
  detail::append_term(os, first, im[1], "sqrt2*i");
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& a) { return os << a.to_string(); }

inline Cyclotomic conj(const Cyclotomic& a) { return a.conj(); }
inline bool is_zero(const Cyclotomic& a) { return a.is_zero(); }
inline ComplexFloat to_float(const Cyclotomic& a) { return a.to_float(); }
inline int real_sign(const Cyclotomic& a) { return a.real_sign(); }

}  // namespace qhl

#endif  // QHL_CYCLOTOMIC_HPP
