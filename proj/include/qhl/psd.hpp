#ifndef QHL_PSD_HPP
#define QHL_PSD_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qhl/matrix.hpp"

namespace qhl {

inline constexpr double kDefaultPsdTol = 1e-9;

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// Reduces a to upper Hessenberg form by elementary similarity transforms
/// (row operation on the left, inverse column operation on the right), so the
/// characteristic polynomial is unchanged. Exact field arithmetic only.
inline Matrix<Cyclotomic> hessenberg_similar(Matrix<Cyclotomic> a) {
  const std::size_t n = a.dim();
  for (std::size_t m = 0; m + 2 < n; ++m) {
    std::size_t pivot = m + 1;
    while (pivot < n && a(pivot, m).is_zero()) ++pivot;
    if (pivot == n) continue;
    if (pivot != m + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(m + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, pivot), a(i, m + 1));
    }
    const Cyclotomic inv_pivot = a(m + 1, m).inverse();
    for (std::size_t i = m + 2; i < n; ++i) {
      if (a(i, m).is_zero()) continue;
      const Cyclotomic t = a(i, m) * inv_pivot;
      for (std::size_t j = 0; j < n; ++j)
        if (!a(m + 1, j).is_zero()) a(i, j) -= t * a(m + 1, j);
      for (std::size_t r = 0; r < n; ++r)
        if (!a(r, i).is_zero()) a(r, m + 1) += t * a(r, i);
    }
  }
  return a;
}

/// Coefficients e_0..e_n with det(xI - a) = sum_k (-1)^k e_k x^(n-k), e_0 = 1.
/// For a Hermitian input these are the elementary symmetric functions of
/// the (real) eigenvalues.
inline std::vector<Cyclotomic> charpoly_elementary(const Matrix<Cyclotomic>& a) {
  const std::size_t n = a.dim();
  const Matrix<Cyclotomic> h = hessenberg_similar(a);
  // polys[k] = characteristic polynomial of the leading k x k block,
  // coefficients in ascending degree.
  std::vector<std::vector<Cyclotomic>> polys(n + 1);
  polys[0] = {Cyclotomic(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t kk = k - 1;  // 0-based index of the new row/column
    std::vector<Cyclotomic> p(k + 1, Cyclotomic(0));
    // (x - h_kk) * p_{k-1}
    for (std::size_t d = 0; d < polys[k - 1].size(); ++d) {
      p[d + 1] += polys[k - 1][d];
      p[d] -= h(kk, kk) * polys[k - 1][d];
    }
    // - sum_{i<k} h(i, kk) * prod_{j=i+1}^{kk} h(j, j-1) * p_i
    Cyclotomic sub_prod(1);
    for (std::size_t step = 0; step < kk; ++step) {
      const std::size_t i = kk - 1 - step;
      sub_prod *= h(i + 1, i);
      if (sub_prod.is_zero()) break;
      if (h(i, kk).is_zero()) continue;
      const Cyclotomic coef = h(i, kk) * sub_prod;
      for (std::size_t d = 0; d < polys[i].size(); ++d) p[d] -= coef * polys[i][d];
    }
    polys[k] = std::move(p);
  }
  std::vector<Cyclotomic> e(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    e[k] = polys[n][n - k];
    if (k % 2 == 1) e[k] = -e[k];
  }
  return e;
}

/// Exact positive-semidefiniteness of a Hermitian matrix. The characteristic
/// polynomial of a Hermitian matrix is real-rooted, so every root is >= 0
/// exactly when each elementary symmetric function e_k is >= 0.
inline bool psd_exact(const Matrix<Cyclotomic>& a) {
  if (!is_hermitian(a)) throw NonHermitian("psd_exact");
  for (const auto& ek : charpoly_elementary(a))
    if (ek.real_sign() < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Float backend
// ---------------------------------------------------------------------------

inline constexpr int kJacobiMaxSweeps = 100;

/// Eigenvalues (ascending) of a symmetric real matrix by cyclic Jacobi.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  double total = 0.0;
  for (double x : a) total += x * x;
  const double threshold = 1e-30 * std::max(total, 1e-300);
  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off <= threshold) break;
    if (sweep == kJacobiMaxSweeps)
      throw NonConvergence("Jacobi eigenvalue iteration after " + std::to_string(kJacobiMaxSweeps) + " sweeps");
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Eigenvalues (ascending) of a Hermitian matrix via the real embedding
/// [[Re, -Im], [Im, Re]], whose spectrum is each eigenvalue twice.
template <Scalar S>
std::vector<double> hermitian_eigenvalues(const Matrix<S>& m) {
  const Matrix<ComplexFloat> a = to_float(m);
  const std::size_t n = a.dim();
  const std::size_t n2 = 2 * n;
  std::vector<double> emb(n2 * n2, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrise to absorb rounding-level non-Hermiticity.
      const double re = 0.5 * (a(i, j).re + a(j, i).re);
      const double im = 0.5 * (a(i, j).im - a(j, i).im);
      emb[i * n2 + j] = re;
      emb[(i + n) * n2 + (j + n)] = re;
      emb[i * n2 + (j + n)] = -im;
      emb[(i + n) * n2 + j] = im;
    }
  const std::vector<double> doubled = symmetric_eigenvalues(std::move(emb), n2);
  std::vector<double> ev(n);
  for (std::size_t k = 0; k < n; ++k) ev[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
  return ev;
}

template <Scalar S>
double min_eigenvalue(const Matrix<S>& a) {
  return hermitian_eigenvalues(a).front();
}

/// The tolerance actually applied to lambda_min: tol * max(1, ||a||_inf).
template <Scalar S>
double scaled_tolerance(const Matrix<S>& a, double tol) {
  return tol * std::max(1.0, inf_norm(a));
}

inline bool psd_float(const Matrix<ComplexFloat>& a, double tol = kDefaultPsdTol) {
  if (!is_hermitian(a)) throw NonHermitian("psd_float");
  return min_eigenvalue(a) >= -scaled_tolerance(a, tol);
}

// ---------------------------------------------------------------------------
// Loewner order
// ---------------------------------------------------------------------------

/// p below q in the Loewner order: q - p is positive semidefinite.
inline bool loewner_leq(const Matrix<Cyclotomic>& p, const Matrix<Cyclotomic>& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("loewner_leq");
  if (!is_hermitian(p) || !is_hermitian(q)) throw NonHermitian("loewner_leq operand");
  return psd_exact(q - p);
}

inline bool loewner_leq(const Matrix<ComplexFloat>& p, const Matrix<ComplexFloat>& q, double tol = kDefaultPsdTol) {
  if (p.dim() != q.dim()) throw DimensionMismatch("loewner_leq");
  if (!is_hermitian(p) || !is_hermitian(q)) throw NonHermitian("loewner_leq operand");
  return psd_float(q - p, tol);
}

/// 0 below a below I.
template <Scalar S>
bool is_predicate(const Matrix<S>& a) {
  if (!is_hermitian(a)) return false;
  const auto id = Matrix<S>::identity(a.dim());
  return loewner_leq(Matrix<S>::zero(a.dim()), a) && loewner_leq(a, id);
}

}  // namespace qhl

#endif  // QHL_PSD_HPP
