#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/ansatz.hpp"
#include "forge/degrees.hpp"
#include "forge/linsolve.hpp"
#include "forge/profiles.hpp"
#include "forge/roots.hpp"

namespace forge {

// A fully assembled model: root configuration, defining polynomial, profile
// functions, partial degrees, frame data, and growth exponents.  Produced by
// the solve_* entry points below and consumed by the geometry layer, the
// certification driver, and the model file writer.
struct soliton_model {
  ansatz_config config;
  roots_r alphas;
  std::optional<roots_q> alphas_x;  // exact twin when solved over rationals
  real a{0};                        // rate actually used (solved, for shrinkers)
  profile_set profiles;
  std::vector<real> deltas;         // partial degrees at the solution
  std::vector<real> delta_targets;  // signed twist targets, same indexing
  matrix<real> v_frame;             // rows: lattice frame vectors v_j
  std::vector<real> k1_coeffs;      // K_1 expressed in the X_j frame
  std::vector<real> kell_coeffs;    // K_ell expressed in the X_j frame
  int beta = 0;                     // growth degree of the top profile
  real dist_exponent{0};            // distance ~ xi^this toward unbounded ends
  real vol_exponent{0};             // volume growth exponent in the distance
  int ddc_factor = 2;               // potential convention marker, see README
  bool experimental = false;        // true when produced outside proved regimes
  std::vector<real> inner_rate_roots;  // shrinking: every rate root found
  real rate_residual{0};               // shrinking: |mismatch| at chosen rate
  real degree_identity_residual{0};    // |sum (d_j+1) delta_j - closed form|
  std::string notes;
};

// Ricci-flat family with all roots positive at ell = 2: alpha_1 = 1 is a
// normalization, the top root is found by exact bisection over dyadic
// rationals against the first partial degree.  ell = 1 is closed form.
soliton_model solve_type1_cy(const ansatz_config& config);

// Exact first partial degree of that family as a function of the free top
// root; exposed for bracket diagnostics and sweep tables.
rat type1_cy_partial_degree(const ansatz_config& config, const rat& alpha);

// Split-sign family at ell = 2: the root ratio has the closed form
// (d_1 + 1) m_1 / m_2, independent of the rate, so one routine covers both
// the Ricci-flat member (a = 0) and the steady solitons (a > 0).
soliton_model solve_type2_rank2(const ansatz_config& config, const real& a);

// Split-sign family at ell = 3 with alpha_2 = -1 normalized: damped Newton
// on (alpha_1, alpha_3) against the first and last partial degrees.  Again
// a = 0 gives the Ricci-flat member and a > 0 the steady solitons.
soliton_model solve_type2_rank3(const ansatz_config& config, const real& a);

// Steady solitons at rate a > 0; dispatches on case and rank.
soliton_model solve_steady(const ansatz_config& config, const real& a);

// Shrinking-family rate mismatch at a given root ratio: difference between
// the value of the linear q coefficient forced by the interior moment and
// the value forced by the decay condition at the top end.  A zero in a < 0
// makes both hold simultaneously.
real shrinker_rate_mismatch(const ansatz_config& config, const real& alpha, const real& a);

// First partial degree of the shrinking family at a given root ratio, with
// the rate solved internally; optionally reports the rate and every rate
// root the sign scan found.
real shrinker_partial_degree(const ansatz_config& config, const real& alpha,
                             real* rate_out = nullptr,
                             std::vector<real>* rate_roots_out = nullptr);

// Shrinkers at ell = 2 over a point base: nested bisection, rate inside,
// root ratio outside against the first partial degree.
soliton_model solve_shrinker(const ansatz_config& config);

// First partial degree of the expanding family at a given root ratio and
// fixed rate a > 0.
real expander_partial_degree(const ansatz_config& config, const real& alpha, const real& a);

// Expanders at ell = 2 over a point base: bisection in the root ratio.
soliton_model solve_expander(const ansatz_config& config, const real& a);

// General-rank damped Newton on the partial-degree system.  This regime has
// no existence proof backing it; callers must opt in, and the result is
// flagged experimental.
soliton_model solve_general(const ansatz_config& config, const real& a, bool experimental_ok);

// Route a configuration to the matching solver.  Reads the rate from
// config.a except for shrinkers, where the rate is an output.
soliton_model solve_model(const ansatz_config& config, bool experimental_ok = false);

// One row of a root-ratio sweep table.
struct sweep_row {
  real alpha;
  real a{0};
  std::vector<real> deltas;
  real mismatch{0};  // shrinking rate mismatch when applicable
};

std::vector<sweep_row> sweep_alpha(const ansatz_config& config, const real& lo, const real& hi,
                                   int count);

}  // namespace forge
