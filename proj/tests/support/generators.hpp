// Random generators and independent oracles shared by the unit and
// acceptance suites. Nothing here calls into the code paths it is used to check.
#ifndef QHL_TESTS_GENERATORS_HPP
#define QHL_TESTS_GENERATORS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "qhl/matrix.hpp"

namespace qhl::testing {

using Rng = std::mt19937_64;

inline Rational random_small_rational(Rng& rng, int num_bound = 3, int den_bound = 3) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  return make_rational(num(rng), den(rng));
}

/// Random element of Q(zeta) with small coefficients; roughly half the
/// coefficients are zero.
inline Cyclotomic random_cyclotomic(Rng& rng, int num_bound = 3, int den_bound = 3) {
  std::bernoulli_distribution keep(0.5);
  Rational c[4];
  for (auto& x : c) x = keep(rng) ? random_small_rational(rng, num_bound, den_bound) : Rational(0);
  return {c[0], c[1], c[2], c[3]};
}

inline Cyclotomic random_nonzero_cyclotomic(Rng& rng) {
  for (;;) {
    Cyclotomic a = random_cyclotomic(rng);
    if (!a.is_zero()) return a;
  }
}

inline Matrix<Cyclotomic> random_matrix(Rng& rng, std::size_t dim, int num_bound = 2, int den_bound = 2) {
  Matrix<Cyclotomic> m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = random_cyclotomic(rng, num_bound, den_bound);
  return m;
}

/// (B + B^dagger) / 2 for random B.
inline Matrix<Cyclotomic> random_hermitian(Rng& rng, std::size_t dim) {
  const Matrix<Cyclotomic> b = random_matrix(rng, dim);
  return Cyclotomic(Rational(1, 2)) * (b + dagger(b));
}

/// B B^dagger, optionally of reduced rank.
inline Matrix<Cyclotomic> random_psd(Rng& rng, std::size_t dim, std::size_t rank) {
  Matrix<Cyclotomic> b(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < rank; ++j) b(i, j) = random_cyclotomic(rng, 2, 2);
  return b * dagger(b);
}

/// Random density matrix (trace 1).
inline Matrix<Cyclotomic> random_density(Rng& rng, std::size_t dim) {
  std::uniform_int_distribution<std::size_t> rank_dist(1, dim);
  for (;;) {
    Matrix<Cyclotomic> p = random_psd(rng, dim, rank_dist(rng));
    const Cyclotomic t = trace(p);
    if (t.is_zero()) continue;
    return t.inverse() * p;
  }
}

/// Independent PSD oracle: symmetric Gaussian elimination with diagonal
/// pivots. A zero pivot forces its whole row to vanish; a negative pivot
/// refutes. No characteristic polynomial involved.
inline bool psd_by_elimination(Matrix<Cyclotomic> a) {
  const std::size_t n = a.dim();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // Choose any remaining index with a positive diagonal entry.
    std::size_t piv = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const int s = a(k, k).real_sign();
      if (s < 0) return false;
      if (s > 0 && piv == n) piv = k;
    }
    if (piv == n) {
      // All remaining diagonals are zero: the remaining block must vanish.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && !a(i, j).is_zero()) return false;
      return true;
    }
    done[piv] = true;
    const Cyclotomic inv = a(piv, piv).inverse();
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, piv).is_zero()) continue;
      const Cyclotomic f = a(i, piv) * inv;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) a(i, j) -= f * a(piv, j);
    }
  }
  return true;
}

/// Permutation-matrix construction of an operator embedding: the basis map
/// that moves the listed variables to the front (in list order), then
/// pi^dagger (op (x) I_rest) pi. Independent of the stride-based lift.
inline Matrix<Cyclotomic> lift_by_permutation(const Matrix<Cyclotomic>& op, const std::vector<std::size_t>& vars,
                                              const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> order = vars;
  for (std::size_t v = 0; v < dims.size(); ++v)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) order.push_back(v);
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  Matrix<Cyclotomic> perm(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    // Decode digits in declaration order (first variable most significant).
    std::vector<std::size_t> digit(dims.size());
    std::size_t rem = idx;
    for (std::size_t v = dims.size(); v-- > 0;) {
      digit[v] = rem % dims[v];
      rem /= dims[v];
    }
    std::size_t permuted = 0;
    for (auto v : order) permuted = permuted * dims[v] + digit[v];
    perm(permuted, idx) = Cyclotomic(1);
  }
  std::size_t listed = 1;
  for (auto v : vars) listed *= dims[v];
  const Matrix<Cyclotomic> big = tensor(op, Matrix<Cyclotomic>::identity(total / listed));
  return dagger(perm) * big * perm;
}

}  // namespace qhl::testing

#endif  // QHL_TESTS_GENERATORS_HPP
