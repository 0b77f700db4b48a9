#ifndef QHL_COMPLEX_FLOAT_HPP
#define QHL_COMPLEX_FLOAT_HPP

#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace qhl {

/// Complex double-precision scalar. Arithmetic never checks finiteness by
/// itself; matrix operations on this backend do (see Matrix).
struct ComplexFloat {
  double re = 0.0;
  double im = 0.0;

  constexpr ComplexFloat() = default;
  constexpr ComplexFloat(double r) : re(r) {}  // NOLINT(google-explicit-constructor)
  constexpr ComplexFloat(double r, double i) : re(r), im(i) {}

  bool is_finite() const { return std::isfinite(re) && std::isfinite(im); }
  bool is_zero() const { return re == 0.0 && im == 0.0; }
  double abs() const { return std::hypot(re, im); }
  ComplexFloat conj() const { return {re, -im}; }

  ComplexFloat operator-() const { return {-re, -im}; }
  ComplexFloat& operator+=(const ComplexFloat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexFloat& operator-=(const ComplexFloat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexFloat& operator*=(const ComplexFloat& o) { return *this = *this * o; }
  ComplexFloat& operator/=(const ComplexFloat& o) { return *this = *this / o; }

  friend ComplexFloat operator+(ComplexFloat a, const ComplexFloat& b) { return a += b; }
  friend ComplexFloat operator-(ComplexFloat a, const ComplexFloat& b) { return a -= b; }
  friend ComplexFloat operator*(const ComplexFloat& a, const ComplexFloat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexFloat operator/(const ComplexFloat& a, const ComplexFloat& b) {
    const std::complex<double> q = std::complex<double>(a.re, a.im) / std::complex<double>(b.re, b.im);
    return {q.real(), q.imag()};
  }
  friend bool operator==(const ComplexFloat& a, const ComplexFloat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const ComplexFloat& a, const ComplexFloat& b) { return !(a == b); }

  std::string to_string() const {
    if (im == 0.0) return format(re);
    if (re == 0.0) return format(im) + "*i";
    return format(re) + (std::signbit(im) ? " - " : " + ") + format(std::abs(im)) + "*i";
  }

 private:
  // Always carries a '.' or exponent so the matrix-file parser reads it back as a float.
  static std::string format(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    std::string s = os.str();
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
  }
};

inline std::ostream& operator<<(std::ostream& os, const ComplexFloat& a) { return os << a.to_string(); }

inline ComplexFloat conj(const ComplexFloat& a) { return a.conj(); }
inline bool is_zero(const ComplexFloat& a) { return a.is_zero(); }
inline ComplexFloat to_float(const ComplexFloat& a) { return a; }

}  // namespace qhl

#endif  // QHL_COMPLEX_FLOAT_HPP
