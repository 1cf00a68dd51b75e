#pragma once

// Small dense linear algebra over an arbitrary field scalar: Gaussian
// elimination with partial pivoting, inverses, and a cyclic Jacobi
// eigenvalue sweep for small real symmetric matrices. Everything here is
// O(n^3) on matrices of size <= a dozen; no library dependency is warranted.

#include "forge/errors.hpp"
#include "forge/numreal.hpp"

#include <vector>

namespace forge {

template <class T>
using matrix = std::vector<std::vector<T>>;

using rmatrix = matrix<real>;

template <class T>
matrix<T> identity_matrix(int n) {
  matrix<T> m(static_cast<size_t>(n), std::vector<T>(static_cast<size_t>(n), T(0)));
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = T(1);
  return m;
}

template <class T>
std::vector<T> solve_dense(matrix<T> a, std::vector<T> b) {
  using std::abs;
  const size_t n = a.size();
  if (n == 0 || b.size() != n) throw forge_error(errc::domain_data, "solve_dense: bad shapes");
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col] == T(0)) {
      throw forge_error(errc::interpolation, "singular linear system");
    }
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == T(0)) continue;
      T f = a[r][col] / a[col][col];
      for (size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<T> x(n, T(0));
  for (size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

template <class T>
matrix<T> mat_mul(const matrix<T>& a, const matrix<T>& b) {
  size_t n = a.size(), m = b[0].size(), inner = b.size();
  matrix<T> r(n, std::vector<T>(m, T(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < inner; ++k)
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

template <class T>
matrix<T> mat_transpose(const matrix<T>& a) {
  size_t n = a.size(), m = a[0].size();
  matrix<T> r(m, std::vector<T>(n, T(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

template <class T>
matrix<T> mat_inverse(const matrix<T>& a) {
  const size_t n = a.size();
  matrix<T> inv(n, std::vector<T>(n, T(0)));
  for (size_t col = 0; col < n; ++col) {
    std::vector<T> e(n, T(0));
    e[col] = T(1);
    std::vector<T> x = solve_dense(a, e);
    for (size_t r = 0; r < n; ++r) inv[r][col] = x[r];
  }
  return inv;
}

template <class T>
T mat_max_abs(const matrix<T>& a) {
  using std::abs;
  T m(0);
  for (const auto& row : a)
    for (const auto& v : row)
      if (abs(v) > m) m = abs(v);
  return m;
}

// Eigenvalues of a small real symmetric matrix via cyclic Jacobi rotations.
std::vector<real> jacobi_eigenvalues(rmatrix a, int sweeps = 30);

}  // namespace forge
