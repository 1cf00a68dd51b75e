#pragma once

// Gauss-Legendre quadrature at working precision: fixed-order panels with
// cached nodes (per order and precision) and an adaptive bisection driver.
// Integrands are smooth exponential-polynomials throughout this project, so
// moderate orders converge fast; adaptivity exists for the small-rate
// regimes where closed forms cancel catastrophically.

#include "forge/errors.hpp"
#include "forge/numreal.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace forge {

// Nodes and weights on [-1, 1], computed by Newton iteration on the Legendre
// recurrence at the current working precision. Cached.
const std::vector<std::pair<real, real>>& gauss_legendre(int order);

template <class Fn>
real integrate_panel(Fn&& f, const real& lo, const real& hi, int order) {
  const auto& nw = gauss_legendre(order);
  real mid = (lo + hi) / 2, half = (hi - lo) / 2;
  real acc(0);
  for (const auto& [x, w] : nw) acc += w * f(mid + half * x);
  return acc * half;
}

// Adaptive bisection: accepts a panel when the order-n and order-2n values
// agree to rel_tol (relative to the accumulated magnitude, with an absolute
// floor). max_depth guards runaway recursion on bad integrands.
real integrate_adaptive(const std::function<real(const real&)>& f, const real& lo,
                        const real& hi, const real& rel_tol, int order = 12,
                        int max_depth = 48);

}  // namespace forge
