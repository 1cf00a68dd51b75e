#pragma once

// The discrete degree identities: partial degrees delta_j, the total degree
// delta with its closed form, the Vandermonde residual, the v_j basis
// vectors, and the coefficients of the distinguished torus generators in the
// X_j basis. Exact over `rat`, numeric over `real`.

#include "forge/errors.hpp"
#include "forge/linsolve.hpp"
#include "forge/numreal.hpp"
#include "forge/poly.hpp"
#include "forge/roots.hpp"

#include <string>
#include <vector>

namespace forge {

// delta_j = q(alpha_j) sigma_{ell-1}(alpha-hat-j) / ((d_j+1) Delta(alpha_j)), 0-based j.
template <class T>
T partial_degree(const poly<T>& q, const root_tuple<T>& roots, int j) {
  if (j < 0 || j >= roots.ell())
    throw forge_error(errc::domain_data, "partial_degree: index out of range");
  T sig = elem_symmetric_hat(roots.alpha, roots.ell() - 1, j);
  return q(roots.alpha[static_cast<size_t>(j)]) * sig /
         (T(roots.d[static_cast<size_t>(j)] + 1) * roots.delta_at(j));
}

template <class T>
struct degree_pair {
  T direct;  // sum_j (d_j+1) delta_j
  T closed;  // q_ell sigma_ell(alpha) + (-1)^(ell-1) q(0)
};

// Computes the total degree both by direct summation and by the closed form.
// Over `rat` the two are asserted equal (they are an exact identity); over
// `real` both values are returned for the caller to compare.
template <class T>
degree_pair<T> total_degree(const poly<T>& q, const root_tuple<T>& roots) {
  const int l = roots.ell();
  T direct(0);
  for (int j = 0; j < l; ++j)
    direct += T(roots.d[static_cast<size_t>(j)] + 1) * partial_degree(q, roots, j);
  T sig_l = elem_symmetric(roots.alpha, l);
  T closed = q.coeff(l) * sig_l + (l % 2 == 1 ? q(T(0)) : -q(T(0)));
  if constexpr (std::is_same_v<T, rat>) {
    if (direct != closed) {
      throw forge_error(errc::internal,
                        "total degree: direct sum " + rat_to_string(direct) +
                            " disagrees with closed form " + rat_to_string(closed));
    }
  }
  return {direct, closed};
}

// M - I where M_{sr} = sum_j [sigma_{s-1}(alpha-hat-j)/Delta(alpha_j)] *
// [(-1)^(r-1) alpha_j^(ell-r)]; exactly zero for distinct roots.
template <class T>
matrix<T> vandermonde_residual(const root_tuple<T>& roots) {
  const int l = roots.ell();
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      if (roots.alpha[static_cast<size_t>(i)] == roots.alpha[static_cast<size_t>(j)])
        throw forge_error(errc::domain_data,
                          "repeated roots at indices " + std::to_string(i + 1) + "," +
                              std::to_string(j + 1));
  matrix<T> m(static_cast<size_t>(l), std::vector<T>(static_cast<size_t>(l), T(0)));
  for (int s = 1; s <= l; ++s) {
    for (int r = 1; r <= l; ++r) {
      T acc(0);
      for (int j = 0; j < l; ++j) {
        T term = elem_symmetric_hat(roots.alpha, s - 1, j) / roots.delta_at(j);
        T p(1);
        for (int k = 0; k < l - r; ++k) p *= roots.alpha[static_cast<size_t>(j)];
        if (r % 2 == 0) p = -p;
        acc += term * p;
      }
      if (s == r) acc -= T(1);
      m[static_cast<size_t>(s) - 1][static_cast<size_t>(r) - 1] = acc;
    }
  }
  return m;
}

// v_j = ((d_j+1)/q(alpha_j)) * (alpha_j^(ell-1), -alpha_j^(ell-2), ...,
// (-1)^(ell-1)): the weight vectors spanning the moment cone at the vertex.
template <class T>
std::vector<std::vector<T>> v_basis(const poly<T>& q, const root_tuple<T>& roots) {
  const int l = roots.ell();
  std::vector<std::vector<T>> v(static_cast<size_t>(l), std::vector<T>(static_cast<size_t>(l)));
  for (int j = 0; j < l; ++j) {
    T scale = T(roots.d[static_cast<size_t>(j)] + 1) / q(roots.alpha[static_cast<size_t>(j)]);
    for (int r = 1; r <= l; ++r) {
      T p(1);
      for (int k = 0; k < l - r; ++k) p *= roots.alpha[static_cast<size_t>(j)];
      if (r % 2 == 0) p = -p;
      v[static_cast<size_t>(j)][static_cast<size_t>(r) - 1] = scale * p;
    }
  }
  return v;
}

// Coefficients of the lowest torus generator in the X_j basis:
// q(alpha_j) / ((d_j+1) Delta(alpha_j)).
template <class T>
std::vector<T> k1_coefficients(const poly<T>& q, const root_tuple<T>& roots) {
  std::vector<T> c(static_cast<size_t>(roots.ell()));
  for (int j = 0; j < roots.ell(); ++j)
    c[static_cast<size_t>(j)] = q(roots.alpha[static_cast<size_t>(j)]) /
                                (T(roots.d[static_cast<size_t>(j)] + 1) * roots.delta_at(j));
  return c;
}

// Coefficients of the top generator: exactly the partial degrees delta_j.
template <class T>
std::vector<T> kell_coefficients(const poly<T>& q, const root_tuple<T>& roots) {
  std::vector<T> c(static_cast<size_t>(roots.ell()));
  for (int j = 0; j < roots.ell(); ++j) c[static_cast<size_t>(j)] = partial_degree(q, roots, j);
  return c;
}

}  // namespace forge
