#pragma once

// Construction of the defining polynomial q(t) and the profile functions
// F_j(t), Theta_j(t) = F_j/p_c for each soliton class, plus the certification
// machinery: interval positivity, C^1 boundary pairs, ODE residual, growth
// degree, and the shrinking-class rationality checks.
//
// Every profile is stored in the closed form F(t) = t^(-d_B) (P(t) + c e^(-a t))
// (with c t^(-d_B) when a = 0); exact rational twins are kept whenever the
// construction ran at rate zero on rational roots.

#include "forge/ansatz.hpp"
#include "forge/errors.hpp"
#include "forge/numreal.hpp"
#include "forge/poly.hpp"
#include "forge/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace forge {

struct profile_rep {
  poly<real> P;   // polynomial part of t^{d_B} F
  real c{0};      // homogeneous coefficient
  // Exact twins, present when built at a = 0 from rational data.
  bool exact = false;
  poly<rat> P_x;
  rat c_x{0};
  // Deflated numerator quotient (P + c)/p_c when the interval closure meets
  // a repeated root; removable singularities evaluate through this.
  std::optional<poly<rat>> theta_num_x;
  std::optional<poly<real>> theta_num_r;
};

struct profile_set {
  int d_B = 0;
  real a{0};
  int q_top = 0;  // class coefficient: the t^ell coefficient of q
  poly<real> q;
  std::optional<poly<rat>> q_x;
  poly<real> p_c;
  std::optional<poly<rat>> p_c_x;
  std::vector<profile_rep> F;  // one per coordinate interval
  int beta = 0;                // analytic growth degree of Theta

  real F_value(int j, const real& t) const;
  real F_deriv(int j, const real& t) const;
  real theta(int j, const real& t) const;
  real theta_deriv(int j, const real& t) const;
  real theta_deriv2(int j, const real& t) const;
};

// ---- defining polynomial builders ----------------------------------------

// All-positive-roots CY: degree ell-1, q(0) = (-1)^(ell-1) i_B, vanishing
// weighted moments on the ell-1 bounded gaps; sign alternation verified.
poly<rat> build_q_cy_type1(const roots_q& roots, const ansatz_config& config);

// Split-sign CY: degree ell-2, q(0) = +i_B, moments on the ell-2 bounded
// negative gaps; the split-sign alternation pattern verified.
poly<rat> build_q_cy_type2(const roots_q& roots, const ansatz_config& config);

// Steady variants of the two above with weight e^{ax}, a > 0.
poly<real> build_q_steady(const roots_r& roots, const ansatz_config& config, const real& a);

// Shrinking/expanding: degree ell with forced leading coefficient -1/+1,
// q(0) fixed, interior moment constraints on the bounded gaps. The shrinking
// tail constraint is NOT imposed here; it is the solver's equation for a.
poly<real> build_q_shrink_expand(const roots_r& roots, const ansatz_config& config,
                                 const real& a);

// ---- profile assembly ------------------------------------------------------

// Exact path (rate zero, rational roots).
profile_set build_profiles(const poly<rat>& q, const roots_q& roots,
                           const ansatz_config& config);
// Numeric path (any admissible rate).
profile_set build_profiles(const poly<real>& q, const roots_r& roots,
                           const ansatz_config& config, const real& a);

// ---- certification ----------------------------------------------------------

struct cert_check {
  std::string name;
  bool pass = false;
  real measured{0};
  real tolerance{0};
  std::string detail;
};

struct certification {
  std::vector<cert_check> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string summary() const;
};

struct certify_options {
  int positivity_points = 200;
  int ode_points = 50;
  int beta_points = 25;
  bool crosscheck = true;  // run the quadrature cross-checks (verification mode)
};

certification certify_profiles(const profile_set& ps, const roots_r& roots,
                               const ansatz_config& config,
                               const certify_options& opt = {});

// Log-log growth slope of |Theta_j| measured over [10 s, 1e4 s] toward the
// unbounded end of interval j (s = a scale set by the outermost root), with
// a first-order finite-size correction term in the fit.
real numeric_growth_slope(const profile_set& ps, const roots_r& roots, int j);

}  // namespace forge
