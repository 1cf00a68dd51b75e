#pragma once

// Pointwise geometry of a solved model: the 2ell x 2ell fiber metric block in
// the (dxi, theta) coframe, the complex structure and its compatibility
// residuals, the rank-two fiber curvature surrogate with its extreme values,
// Killing-norm closed forms, two-sided distance bounds along the unbounded
// ends, ball-volume growth regression, curvature decay scans, and membership
// of sampled points in the moment-image orthant.

#include "forge/linsolve.hpp"
#include "forge/solvers.hpp"

#include <string>
#include <vector>

namespace forge {

// One evaluation of the metric data at an interior point xi of the coordinate
// box. The angular coordinates t enter nothing (the metric is torus
// invariant) but are carried so samples can be exported as full chart points.
struct metric_sample {
  std::vector<real> xi;
  std::vector<real> t;
  matrix<real> g;      // fiber block, coframe order (dxi_1..dxi_ell, theta_1..theta_ell)
  matrix<real> J;      // complex structure on the same coframe
  matrix<real> omega;  // J g; must be antisymmetric with d sigma_r wedge theta_r shape
  std::vector<real> eigenvalues;    // of g, ascending
  std::vector<real> base_factors;   // eps_B p_nc(0), then eps_j p_nc(alpha_j) per summand
  real compat_residual{0};          // max |J g J^T - g|
  real omega_skew_residual{0};      // max |omega + omega^T|
  real j_square_residual{0};        // max |J^2 + I|
  std::vector<real> k_norms;        // ell = 2: |K_1|^2, |K_ell|^2, <K_1,K_ell>
  real k_norm_residual{0};          // closed forms vs the assembled angular block
};

// Evaluates the metric block at xi (angles default to zero). Throws
// errc::domain_data when xi is outside the open box or closer to a finite
// interval end than 1e-6 times the interval scale.
metric_sample eval_metric(const soliton_model& m, const std::vector<real>& xi,
                          const std::vector<real>& t = {});

// Rank-two fiber curvature data: the scalar curvature, the two auxiliary
// invariants, and the quadratic surrogate f(t1,t2) whose range over
// [-1,1]^2 controls every fiber sectional curvature.
struct sec_data {
  real scal;
  real kappa;
  real lambda;
  real f_min;
  real f_max;
  real sup_abs;  // max(|f_min|, |f_max|)
};

// Requires ell = 2 and xi_1 != xi_2 (coincident coordinates are outside every
// admissible box; asking for them is a domain error).
sec_data sec_curvature(const soliton_model& m, const std::vector<real>& xi);

// Two-sided bounds on the distance from a fixed interior reference point to
// xi_target: the upper bound is the length of a broken path that adjusts one
// coordinate at a time, the lower bound sweeps each unbounded coordinate
// against the minimum of its metric coefficient over the enclosing box.
struct distance_report {
  real lower{0};
  real upper{0};
  real predicted_exponent{0};  // (ell + 1 - beta)/2 in the top coordinate
};

distance_report distance_bounds(const soliton_model& m, const std::vector<real>& xi_target);

// Ball-volume growth. analytic_exponent is the closed-form prediction stored
// on the model; slope is a log-log regression of measured volume against
// radius over a geometric radius ladder spanning `decades` decades. When the
// end structure rules out a meaningful comparison volume (split-sign models
// at nonzero rate reach the bottom end at finite distance with infinite
// volume) the report comes back with measured = false and a caveat.
struct growth_report {
  real analytic_exponent{0};
  real slope{0};
  bool measured = false;
  std::vector<real> radii;
  std::vector<real> volumes;
  std::vector<real> tops;  // top-coordinate ladder (single-end models only)
  std::string caveat;
};

growth_report volume_exponent(const soliton_model& m, int decades = 2,
                              int samples_per_decade = 8);

// Curvature decay along the top end: at each radius, the sup over a fiber
// cross-section of the rank-two curvature surrogate and of the horizontal
// estimate (|K_1|^2 + |<K_1,K_ell>| + |K_ell|^2 + 1)/xi_ell^2, weighted by
// d^power. Requires ell = 2 (the surrogate is the rank-two one).
struct decay_report {
  int power = 0;
  std::vector<real> radii;
  std::vector<real> sups;      // unweighted sup of the curvature estimate
  std::vector<real> weighted;  // sups[k] * radii[k]^power
  real last_decade_variation{0};  // (max - min)/max of weighted over the last decade
  std::string note;
};

decay_report curvature_decay_scan(const soliton_model& m, int power, int decades = 3,
                                  int samples_per_decade = 6);

// Moment-image membership: over an interior sample grid, the orthant
// coordinate of the moment image along each face direction, computed both as
// the v-frame pairing of the shifted elementary moments and through the
// closed form -(d_j+1) p_nc(alpha_j)/q(alpha_j), where p_nc runs over the
// sampled xi. Both must agree and stay nonnegative inside the box.
struct cone_report {
  real min_coordinate{0};  // over all samples and face directions
  real cross_residual{0};  // max relative gap between the two computations
  bool inside = false;     // min_coordinate >= -1e-12
};

cone_report moment_image_check(const soliton_model& m, int samples_per_axis = 8);

}  // namespace forge
