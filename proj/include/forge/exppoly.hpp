#pragma once

// Closed-form calculus for exponential-polynomial integrands
// x^d_B e^{ax} p_c(x) q(x): antiderivatives by the iterated-derivative
// formula, definite and tail integrals, with adaptive quadrature as the
// small-|a| fallback and as an independent cross-check.

#include "forge/errors.hpp"
#include "forge/numreal.hpp"
#include "forge/poly.hpp"

#include <optional>

namespace forge {

// Below this |a| the closed form's alternating sum cancels catastrophically
// and moments switch to adaptive quadrature.
inline real small_rate_threshold() { return real(1) / 10000; }

struct exp_poly {
  poly<real> P;  // the function is e^{ax} P(x)
  real a;

  real operator()(const real& x) const { return boost::multiprecision::exp(a * x) * P(x); }
  // Derivative is e^{ax} (aP + P'), again an exp_poly.
  exp_poly derivative() const { return {a * P + P.derivative(), a}; }
};

// Antiderivative of e^{ax} Q(x) for a != 0:
// e^{ax} * sum_k (-1)^k a^{-k-1} Q^{(k)}(x).
exp_poly exp_antiderivative(const poly<real>& Q, const real& a);

// Exact definite integral of x^d_B p_c(x) q(x) over [lo, hi] (the a = 0 case).
rat weighted_moment_exact(const rat& lo, const rat& hi, int d_B, const poly<rat>& p_c,
                          const poly<rat>& q);

// Definite integral of x^d_B e^{ax} p_c(x) q(x) over [lo, hi]. Closed form
// for |a| above the small-rate threshold, adaptive quadrature below; when
// `crosscheck` is set the other method is also run and disagreement beyond
// 1e-10 relative raises a numeric-integrity error.
real weighted_moment(const real& lo, const real& hi, int d_B, const poly<real>& p_c,
                     const poly<real>& q, const real& a, bool crosscheck = false);

// Integral of x^d_B e^{ax} Q(x) over [lo, infinity); requires a < 0.
// Equals -e^{a lo} P-tilde(lo) for the closed-form antiderivative e^{ax} P-tilde.
real tail_moment(const real& lo, int d_B, const poly<real>& Q, const real& a,
                 bool crosscheck = false);

}  // namespace forge
