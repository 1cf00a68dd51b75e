#include "doctest.h"

#include "forge/exppoly.hpp"
#include "forge/profiles.hpp"
#include "fixtures.hpp"
#include "support.hpp"

#include <string>

using namespace forge;
using forge::testing::gap;
using forge::testing::tol;

namespace {

roots_q rational_roots(case_kind kind, std::vector<rat> alpha, std::vector<int> d) {
  roots_q r;
  r.kind = kind;
  r.alpha = std::move(alpha);
  r.d = std::move(d);
  r.validate();
  return r;
}

roots_r to_real_roots(const roots_q& rq) {
  roots_r r;
  r.kind = rq.kind;
  for (const auto& a : rq.alpha) r.alpha.push_back(to_real(a));
  r.d = rq.d;
  return r;
}

}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("defining polynomial, all-positive roots: frozen coefficients") {
  const auto cfg = fixtures::t1_config();
  // Roots (1, 2): the zero-moment condition fixes the slope at 28/15 with
  // the constant pinned to -3 by the base index.
  const auto q2 = build_q_cy_type1(rational_roots(case_kind::type1, {rat(1), rat(2)}, {0, 0}), cfg);
  CHECK(q2.degree() == 1);
  CHECK(q2.coeff(0) == rat(-3));
  CHECK(q2.coeff(1) == rat(28, 15));

  // Roots (1, 3/2) move the slope to 152/65.
  const auto q32 =
      build_q_cy_type1(rational_roots(case_kind::type1, {rat(1), rat(3, 2)}, {0, 0}), cfg);
  CHECK(q32.coeff(0) == rat(-3));
  CHECK(q32.coeff(1) == rat(152, 65));
}

TEST_CASE("defining polynomial, split-sign rank two: the constant two") {
  const auto cfg = fixtures::t2_rank2_config();
  const auto q = build_q_cy_type2(rational_roots(case_kind::type2, {rat(-1), rat(1)}, {0, 0}), cfg);
  CHECK(q.degree() == 0);
  CHECK(q.coeff(0) == rat(2));
}

TEST_CASE("closed-form rank-two profile: boundary data and interior values") {
  // The solved split-sign model carries Theta(t) = 2t - 2/t on both
  // intervals: double roots of the numerator at t = -1 and t = 1, slope
  // 2 q(t)/(d_j + 1) = 4 at each, and plain values elsewhere.
  const auto& m = fixtures::t2_cy_rank2();
  const auto& ps = m.profiles;

  CHECK(gap(ps.theta(0, real(-1)), real(0)) <= tol(-35));
  CHECK(gap(ps.theta(1, real(1)), real(0)) <= tol(-35));
  CHECK(gap(ps.theta_deriv(0, real(-1)), real(4)) <= tol(-33));
  CHECK(gap(ps.theta_deriv(1, real(1)), real(4)) <= tol(-33));

  CHECK(gap(ps.theta(1, real(3)), real(16) / 3) <= tol(-33));
  CHECK(gap(ps.theta(0, real(-3)), real(-16) / 3) <= tol(-33));
  CHECK(gap(ps.theta_deriv2(1, real(2)), real(-1) / 2) <= tol(-33));

  CHECK(ps.beta == 1);
  CHECK(ps.q_top == 0);
}

TEST_CASE("profile ODE holds pointwise for every class construction") {
  // One interior point of the bottom interval and two of the top one,
  // located relative to the solved roots so the probe works for any family.
  for (const soliton_model* m :
       {&fixtures::t2_cy_rank2(), &fixtures::t1_cy(), &fixtures::t1_steady_unit(),
        &fixtures::t1_expander()}) {
    const auto& ps = m->profiles;
    const real lo = m->alphas.alpha.front();
    const real hi = m->alphas.alpha.back();
    struct point_probe {
      int j;
      real t;
    };
    const real bottom = (m->alphas.kind == case_kind::type2) ? real(2 * lo) : real((lo + hi) / 2);
    const std::vector<point_probe> pts{
        {0, bottom}, {1, real(hi * 2)}, {1, real(hi * 4)}};
    for (const auto& pp : pts) {
      const real lhs =
          ps.F_deriv(pp.j, pp.t) + (real(ps.d_B) / pp.t + ps.a) * ps.F_value(pp.j, pp.t);
      const real rhs = 2 * ps.p_c(pp.t) * ps.q(pp.t);
      const real mag = abs(rhs);
      const real scale = mag > real(1) ? mag : real(1);
      const real rel = gap(lhs, rhs) / scale;
      CHECK(rel <= tol(-28));
    }
  }
}

TEST_CASE("certification passes on solved models of each class") {
  certify_options opt;
  for (const soliton_model* m :
       {&fixtures::t2_cy_rank2(), &fixtures::t1_cy(), &fixtures::t1_steady_unit(),
        &fixtures::t1_shrinker(), &fixtures::t1_expander()}) {
    const auto cert = certify_profiles(m->profiles, m->alphas, m->config, opt);
    CAPTURE(m->notes);
    CAPTURE(cert.summary());
    CHECK(cert.all_pass());
  }
}

TEST_CASE("certification flags a defining polynomial off its moment locus") {
  // Bump the slope coefficient and rebuild: the left boundary still anchors,
  // so the damage lands on a boundary or sign check, and certification as a
  // whole must fail.
  const auto& m = fixtures::t1_cy();
  const poly<real> bumped = m.profiles.q + poly<real>::monomial(1, tol(-2));
  const auto broken = build_profiles(bumped, m.alphas, m.config, real(0));
  const auto cert = certify_profiles(broken, m.alphas, m.config);
  CHECK(!cert.all_pass());
  bool boundary_hit = false;
  for (const auto& c : cert.checks)
    if (!c.pass && c.name.find("boundary") != std::string::npos) boundary_hit = true;
  CHECK(boundary_hit);
}

TEST_CASE("steady defining polynomial approaches the rate-zero one") {
  const auto cfg = fixtures::t1_config(soliton_class::steady);
  const auto rq = rational_roots(case_kind::type1, {rat(1), rat(2)}, {0, 0});
  const auto exact = build_q_cy_type1(rational_roots(case_kind::type1, {rat(1), rat(2)}, {0, 0}),
                                      fixtures::t1_config());
  // Below the closed-form threshold the moments run through quadrature; the
  // coefficients must still land within O(rate) of the rate-zero polynomial.
  const auto qs = build_q_steady(to_real_roots(rq), cfg, tol(-6));
  CHECK(gap(qs.coeff(0), to_real(exact.coeff(0))) <= tol(-5));
  CHECK(gap(qs.coeff(1), to_real(exact.coeff(1))) <= tol(-5));
}

TEST_CASE("shrink and expand polynomials satisfy their interior moment") {
  const auto& ex = fixtures::t1_expander();
  const real moment = weighted_moment(ex.alphas.alpha[0], ex.alphas.alpha[1], ex.config.d_B,
                                      ex.profiles.p_c, ex.profiles.q, ex.a, false);
  CHECK(gap(moment, real(0)) <= tol(-25));
  CHECK(ex.profiles.q.degree() == 2);
  CHECK(gap(ex.profiles.q.coeff(2), real(1)) <= tol(-30));
  CHECK(gap(ex.profiles.q(real(0)), real(-2)) <= tol(-30));

  const auto& sh = fixtures::t1_shrinker();
  const real smoment = weighted_moment(sh.alphas.alpha[0], sh.alphas.alpha[1], sh.config.d_B,
                                       sh.profiles.p_c, sh.profiles.q, sh.a, false);
  CHECK(gap(smoment, real(0)) <= tol(-25));
  CHECK(gap(sh.profiles.q.coeff(2), real(-1)) <= tol(-30));
  CHECK(gap(sh.profiles.q(real(0)), real(-4)) <= tol(-30));
}

TEST_CASE("numeric growth degree matches the analytic one") {
  const auto& t2 = fixtures::t2_cy_rank2();
  CHECK(gap(numeric_growth_slope(t2.profiles, t2.alphas, 1), real(1)) <= real(5) / 100);
  CHECK(gap(numeric_growth_slope(t2.profiles, t2.alphas, 0), real(1)) <= real(5) / 100);

  const auto& t1 = fixtures::t1_cy();
  CHECK(t1.profiles.beta == 2);
  CHECK(gap(numeric_growth_slope(t1.profiles, t1.alphas, 1), real(2)) <= real(5) / 100);

  const auto& st = fixtures::t1_steady_unit();
  CHECK(st.profiles.beta == 1);
  CHECK(gap(numeric_growth_slope(st.profiles, st.alphas, 1), real(1)) <= real(5) / 100);
}

}  // TEST_SUITE
