#pragma once

// Hermite (Lagrange-Sylvester) interpolation over exact rationals: the unique
// polynomial of bounded degree matching prescribed values of derivatives at
// prescribed nodes. Used to realize the constrained constructions that the
// profile builders phrase as interpolation problems, and tested against the
// moment-constraint route.

#include "forge/errors.hpp"
#include "forge/linsolve.hpp"
#include "forge/numreal.hpp"
#include "forge/poly.hpp"

#include <string>
#include <vector>

namespace forge {

struct hermite_constraint {
  rat node;
  int order = 0;  // derivative order; 0 = value
  rat value;
};

inline poly<rat> hermite_interpolate(const std::vector<hermite_constraint>& constraints,
                                     int degree_bound) {
  const size_t n = constraints.size();
  if (degree_bound < 0 || n != static_cast<size_t>(degree_bound) + 1) {
    throw forge_error(errc::domain_data,
                      "hermite_interpolate: need exactly degree_bound+1 constraints");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (constraints[i].node == constraints[j].node &&
          constraints[i].order == constraints[j].order) {
        throw forge_error(errc::interpolation,
                          "duplicate interpolation constraint at node " +
                              rat_to_string(constraints[i].node) + " order " +
                              std::to_string(constraints[i].order));
      }
  matrix<rat> a(n, std::vector<rat>(n, rat(0)));
  std::vector<rat> b(n);
  for (size_t row = 0; row < n; ++row) {
    const auto& con = constraints[row];
    b[row] = con.value;
    for (size_t j = 0; j < n; ++j) {
      int jj = static_cast<int>(j), k = con.order;
      if (jj < k) continue;
      rat fall(1);
      for (int i = 0; i < k; ++i) fall *= rat(jj - i);
      rat powv(1);
      for (int i = 0; i < jj - k; ++i) powv *= con.node;
      a[row][j] = fall * powv;
    }
  }
  std::vector<rat> x;
  try {
    x = solve_dense(a, b);
  } catch (const forge_error&) {
    throw forge_error(errc::interpolation, "singular Hermite constraint system");
  }
  return poly<rat>(std::move(x));
}

}  // namespace forge
