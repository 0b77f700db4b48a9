#ifndef QHL_MATRIX_HPP
#define QHL_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "qhl/complex_float.hpp"
#include "qhl/cyclotomic.hpp"
#include "qhl/error.hpp"

namespace qhl {

enum class Backend { Exact, Float };

inline const char* backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

/// The operations every scalar backend provides.
template <class S>
concept Scalar = std::regular<S> && requires(const S a, const S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { conj(a) } -> std::convertible_to<S>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { to_float(a) } -> std::convertible_to<ComplexFloat>;
  { a.to_string() } -> std::convertible_to<std::string>;
};

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Cyclotomic>;

template <class S>
inline constexpr Backend backend_of_v = is_exact_v<S> ? Backend::Exact : Backend::Float;

/// Default entrywise tolerance for Hermiticity and unitarity on the float backend.
inline constexpr double kHermitianTol = 1e-9;

/// Dense square matrix, row-major.
template <Scalar S>
class Matrix {
 public:
  using scalar_type = S;

  Matrix() = default;

  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, S(0)) {
    if (dim == 0) throw DimensionMismatch("matrix dimension must be positive");
  }

  /// Builds from rows; every row must have rows.size() entries.
  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw DimensionMismatch("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                " entries, expected " + std::to_string(rows.size()));
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<S>> rows) {
    std::vector<std::vector<S>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
  }

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = S(1);
    return m;
  }

  static Matrix zero(std::size_t dim) { return Matrix(dim); }

  /// |row><col|
  static Matrix unit(std::size_t dim, std::size_t row, std::size_t col) {
    Matrix m(dim);
    m(row, col) = S(1);
    return m;
  }

  static Matrix diagonal(const std::vector<S>& d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  std::span<const S> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<const S> entries() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.dim_ == b.dim_ && a.data_ == b.data_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix& operator+=(const Matrix& o) {
    require_same_dim(o, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    check_finite("add");
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_dim(o, "subtract");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    check_finite("subtract");
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.require_same_dim(b, "multiply");
    const std::size_t n = a.dim_;
    Matrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const S& bkj = b(k, j);
          if (is_zero(bkj)) continue;
          r(i, j) += aik * bkj;
        }
      }
    }
    r.check_finite("multiply");
    return r;
  }

  friend Matrix operator*(const S& s, Matrix m) {
    for (auto& x : m.data_) x = s * x;
    m.check_finite("scale");
    return m;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < dim_; ++i) {
      out += i == 0 ? "[" : ",\n [";
      for (std::size_t j = 0; j < dim_; ++j) {
        if (j) out += ", ";
        out += (*this)(i, j).to_string();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  void require_same_dim(const Matrix& o, const char* op) const {
    if (dim_ != o.dim_)
      throw DimensionMismatch(std::string(op) + ": " + std::to_string(dim_) + " vs " + std::to_string(o.dim_));
  }

  void check_finite(const char* op) const {
    if constexpr (std::is_same_v<S, ComplexFloat>) {
      for (const auto& x : data_)
        if (!x.is_finite()) throw Overflow(op);
    }
  }

  std::size_t dim_ = 0;
  std::vector<S> data_;
};

template <Scalar S>
std::ostream& operator<<(std::ostream& os, const Matrix<S>& m) {
  return os << m.to_string();
}

template <Scalar S>
Matrix<S> mat_add(const Matrix<S>& a, const Matrix<S>& b) {
  return a + b;
}

template <Scalar S>
Matrix<S> mat_mult(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b;
}

/// Conjugate transpose.
template <Scalar S>
Matrix<S> dagger(const Matrix<S>& a) {
  Matrix<S> r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(j, i) = conj(a(i, j));
  return r;
}

template <Scalar S>
S trace(const Matrix<S>& a) {
  S t(0);
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

/// Kronecker product; result(i*db + k, j*db + l) = a(i, j) * b(k, l).
template <Scalar S>
Matrix<S> tensor(const Matrix<S>& a, const Matrix<S>& b) {
  const std::size_t da = a.dim(), db = b.dim();
  Matrix<S> r(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const S& aij = a(i, j);
      if (is_zero(aij)) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) r(i * db + k, j * db + l) = aij * b(k, l);
    }
  return r;
}

/// U^dagger * P * U
template <Scalar S>
Matrix<S> conjugate_by(const Matrix<S>& u, const Matrix<S>& p) {
  return dagger(u) * p * u;
}

/// Largest absolute row sum; bounds the spectral radius.
template <Scalar S>
double inf_norm(const Matrix<S>& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double s = 0.0;
    for (const auto& x : a.row(i)) s += to_float(x).abs();
    best = std::max(best, s);
  }
  return best;
}

/// Largest entrywise |a - b|.
template <Scalar S>
double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff");
  double best = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    best = std::max(best, (to_float(a.entries()[k]) - to_float(b.entries()[k])).abs());
  return best;
}

/// Exact equality with the adjoint on the exact backend; entrywise within tol otherwise.
template <Scalar S>
bool is_hermitian(const Matrix<S>& a, double tol = kHermitianTol) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return a == dagger(a);
  } else {
    return max_abs_diff(a, dagger(a)) <= tol;
  }
}

template <Scalar S>
bool is_unitary(const Matrix<S>& u, double tol = kHermitianTol) {
  const Matrix<S> prod = dagger(u) * u;
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return prod == Matrix<S>::identity(u.dim());
  } else {
    return max_abs_diff(prod, Matrix<S>::identity(u.dim())) <= tol;
  }
}

/// Numeric embedding of an exact matrix.
inline Matrix<ComplexFloat> to_float(const Matrix<Cyclotomic>& a) {
  Matrix<ComplexFloat> r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = a(i, j).to_float();
  return r;
}

inline const Matrix<ComplexFloat>& to_float(const Matrix<ComplexFloat>& a) { return a; }

}  // namespace qhl

#endif  // QHL_MATRIX_HPP
