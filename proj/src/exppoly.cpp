#include "forge/exppoly.hpp"

#include "forge/quadrature.hpp"

namespace forge {

exp_poly exp_antiderivative(const poly<real>& Q, const real& a) {
  if (a == 0) {
    throw forge_error(errc::domain_data,
                      "exp_antiderivative requires a != 0; use exact polynomial "
                      "antidifferentiation for the rate-zero path");
  }
  poly<real> acc;
  poly<real> dk = Q;
  real inv_a = real(1) / a;
  real coef = inv_a;  // (-1)^k a^{-k-1}, starting at k = 0
  for (int k = 0; k <= Q.degree(); ++k) {
    acc = acc + coef * dk;
    dk = dk.derivative();
    coef = -coef * inv_a;
  }
  return {acc, a};
}

namespace {

poly<rat> full_integrand_exact(int d_B, const poly<rat>& p_c, const poly<rat>& q) {
  return poly<rat>::monomial(d_B, rat(1)) * p_c * q;
}

poly<real> full_integrand(int d_B, const poly<real>& p_c, const poly<real>& q) {
  return poly<real>::monomial(d_B, real(1)) * p_c * q;
}

}  // namespace

rat weighted_moment_exact(const rat& lo, const rat& hi, int d_B, const poly<rat>& p_c,
                          const poly<rat>& q) {
  poly<rat> anti = full_integrand_exact(d_B, p_c, q).antiderivative();
  return anti(hi) - anti(lo);
}

real weighted_moment(const real& lo, const real& hi, int d_B, const poly<real>& p_c,
                     const poly<real>& q, const real& a, bool crosscheck) {
  if (!(lo < hi) && !(lo == hi)) {
    throw forge_error(errc::domain_data, "weighted_moment: bad interval");
  }
  poly<real> f = full_integrand(d_B, p_c, q);
  auto by_quadrature = [&]() {
    auto integrand = [&](const real& x) { return boost::multiprecision::exp(a * x) * f(x); };
    return integrate_adaptive(integrand, lo, hi, real(1) / real(1000000000000LL));
  };
  auto by_closed_form = [&]() {
    if (a == 0) {
      poly<real> anti = f.antiderivative();
      return anti(hi) - anti(lo);
    }
    exp_poly A = exp_antiderivative(f, a);
    return A(hi) - A(lo);
  };

  bool closed_ok = (a == 0) || boost::multiprecision::abs(a) >= small_rate_threshold();
  real value = closed_ok ? by_closed_form() : by_quadrature();
  if (crosscheck) {
    real other = closed_ok ? by_quadrature() : by_closed_form();
    real scale = boost::multiprecision::abs(value);
    if (scale < 1) scale = 1;
    real tol = scale / real(10000000000LL);
    // In the cancellation regime the closed form is the one allowed to be
    // off; quadrature is authoritative there, so only flag disagreement when
    // the closed form was trusted.
    if (closed_ok && boost::multiprecision::abs(value - other) > tol) {
      throw forge_error(errc::numeric,
                        "weighted_moment: closed form and quadrature disagree: " +
                            real_to_decimal(value) + " vs " + real_to_decimal(other));
    }
  }
  return value;
}

real tail_moment(const real& lo, int d_B, const poly<real>& Q, const real& a, bool crosscheck) {
  if (!(a < 0)) {
    throw forge_error(errc::domain_data, "tail_moment: divergent integral, needs a < 0");
  }
  poly<real> f = poly<real>::monomial(d_B, real(1)) * Q;
  exp_poly A = exp_antiderivative(f, a);
  real value = -A(lo);
  if (crosscheck) {
    // Spot-check over [lo, lo + 50/|a|]; the rest of the tail is below
    // e^{-50} of the peak and irrelevant at the 1e-10 comparison level.
    real hi = lo + 50 / boost::multiprecision::abs(a);
    auto integrand = [&](const real& x) { return boost::multiprecision::exp(a * x) * f(x); };
    real other = integrate_adaptive(integrand, lo, hi, real(1) / real(1000000000000LL));
    real scale = boost::multiprecision::abs(value);
    if (scale < 1) scale = 1;
    if (boost::multiprecision::abs(value - other) > scale / real(10000000000LL)) {
      throw forge_error(errc::numeric,
                        "tail_moment: closed form and quadrature disagree: " +
                            real_to_decimal(value) + " vs " + real_to_decimal(other));
    }
  }
  return value;
}

}  // namespace forge
