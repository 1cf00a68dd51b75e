#pragma once

// Independent curvature check in pluriharmonic coordinates. The coordinates
// x_r are the potentials of the closed one-forms sum_j (-1)^(r-1)
// xi_j^(ell-r)/Theta_j dxi_j; the complex structure pairs dx_r with theta_r,
// so the x_r are the real parts of holomorphic torus coordinates. In this
// chart the structure equation reduces to
//
//   -1/4 Hess_x log det G + q_top G - 1/4 Hess_x (a sigma_1 + d_B log|sigma_ell|) = 0
//
// with G = 1/2 d(sigma)/dx, which this module evaluates through quadrature
// for x, Newton inversion of x(xi), and Richardson-extrapolated second
// differences. Everything here is built from the profiles and the chart
// change alone; none of the solver's structure constants enter, so a passing
// residual is evidence independent of the construction path.

#include "forge/linsolve.hpp"
#include "forge/solvers.hpp"

#include <vector>

namespace forge {

struct oracle_options {
  double fd_scale = 1e-4;    // finite-difference step as a fraction of the interior margin
  double quad_rel = 1e-25;   // relative tolerance of the chart quadratures
  int max_newton = 30;
  bool with_pluriharmonic = true;
};

struct oracle_report {
  std::vector<real> x;         // chart image of the point
  matrix<real> g_hermitian;    // G at the point
  matrix<real> residual;       // structure-equation residual matrix
  real max_abs{0};             // max |residual|
  real cr_residual{0};         // transported J against the constant chart J
  int z_sign = 0;              // +1 when J dx_r = +theta_r, -1 for the conjugate
  real metric_consistency{0};  // G against the transported coordinate block
  real pluriharmonic_residual{0};  // second differences of the chart map itself
};

// Requires two fiber coordinates and no projectivized summands (d = 0); other
// configurations have no two-coordinate chart reduction implemented.
oracle_report ricci_oracle(const soliton_model& m, const std::vector<real>& xi,
                           const oracle_options& opt = {});

}  // namespace forge
