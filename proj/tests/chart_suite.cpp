#include "doctest.h"

#include "forge/chart.hpp"
#include "forge/profiles.hpp"
#include "fixtures.hpp"
#include "support.hpp"

#include <vector>

using namespace forge;
using forge::testing::gap;
using forge::testing::raised_kind;
using forge::testing::tol;

namespace {

std::vector<real> interior_point(const soliton_model& m, int which) {
  const real lo = m.alphas.alpha.front();
  const real hi = m.alphas.alpha.back();
  if (m.alphas.kind == case_kind::type2) {
    if (which == 0) return {real(3 * lo), real(3 * hi)};
    return {real(2 * lo), real(5 * hi)};
  }
  const real span = hi - lo;
  if (which == 0) return {real(lo + span / 3), real(hi + span)};
  return {real(lo + 2 * span / 3), real(hi + 3 * span)};
}

}  // namespace

TEST_SUITE("chart") {

TEST_CASE("structure equation residual sits at the quadrature floor") {
  // Every potential branch in one sweep: flat, steady, shrinking, expanding,
  // plus the split-sign chart. The bound is far above the observed floor but
  // far below anything a wrong term could produce.
  for (const soliton_model* m :
       {&fixtures::t2_cy_rank2(), &fixtures::t1_cy(), &fixtures::t1_steady_unit(),
        &fixtures::t1_shrinker(), &fixtures::t1_expander()}) {
    for (int which = 0; which < 2; ++which) {
      const auto rep = ricci_oracle(*m, interior_point(*m, which));
      CAPTURE(m->notes);
      CAPTURE(which);
      CHECK(rep.max_abs <= tol(-8));
      CHECK(rep.cr_residual <= tol(-8));
      CHECK(rep.metric_consistency <= tol(-8));
      CHECK(rep.pluriharmonic_residual <= tol(-6));
      CHECK((rep.z_sign == 1 || rep.z_sign == -1));
      // The hermitian block must be positive: diagonal entries and the
      // determinant of the two-by-two matrix.
      CHECK(rep.g_hermitian[0][0] > 0);
      CHECK(rep.g_hermitian[1][1] > 0);
      const real det = rep.g_hermitian[0][0] * rep.g_hermitian[1][1] -
                       rep.g_hermitian[0][1] * rep.g_hermitian[1][0];
      CHECK(det > 0);
    }
  }
}

TEST_CASE("oracle is blind to subleading defining-polynomial shifts") {
  // Rebuilding the profiles through the same first-order equation after
  // bumping a subleading coefficient keeps the identity exact: the equation
  // sees the defining polynomial only through its leading coefficient. The
  // boundary certification, not this oracle, owns subleading errors.
  const auto& m = fixtures::t1_cy();
  const auto pt = interior_point(m, 0);
  const real clean = ricci_oracle(m, pt).max_abs;

  soliton_model shifted = m;
  shifted.profiles =
      build_profiles(m.profiles.q + poly<real>::monomial(1, tol(-2)), m.alphas, m.config, real(0));
  const real sub = ricci_oracle(shifted, pt).max_abs;
  CHECK(sub <= tol(-10));
  CHECK(sub <= clean * 100 + tol(-20));
}

TEST_CASE("oracle catches a leading-coefficient violation at full strength") {
  // The same rebuild with a bumped leading coefficient leaves the stated
  // class, and the residual must rise from the quadrature floor to the size
  // of the perturbation times the metric, many orders of magnitude.
  const auto& m = fixtures::t1_cy();
  const auto pt = interior_point(m, 0);
  const real clean = ricci_oracle(m, pt).max_abs;

  soliton_model off = m;
  off.profiles =
      build_profiles(m.profiles.q + poly<real>::monomial(2, tol(-2)), m.alphas, m.config, real(0));
  const real wrong = ricci_oracle(off, pt).max_abs;
  CHECK(wrong >= tol(-6));
  CHECK(wrong >= clean * 1000);
}

TEST_CASE("oracle guards: shape requirements and branch toggles") {
  CHECK(raised_kind([] {
          ricci_oracle(fixtures::t2_rank3_cy(), {real(-9), real(-2), real(9)});
        }) == errc::domain_data);

  soliton_model proj = fixtures::t1_cy();
  proj.config.d = {1, 0};
  CHECK(raised_kind([&] {
          ricci_oracle(proj, interior_point(proj, 0));
        }) == errc::domain_data);

  oracle_options opt;
  opt.with_pluriharmonic = false;
  const auto rep = ricci_oracle(fixtures::t2_cy_rank2(),
                                interior_point(fixtures::t2_cy_rank2(), 0), opt);
  CHECK(rep.max_abs <= tol(-8));
  CHECK(rep.pluriharmonic_residual == 0);
}

TEST_CASE("oracle evaluation is bit-deterministic") {
  const auto& m = fixtures::t2_cy_rank2();
  const auto pt = interior_point(m, 1);
  const auto r1 = ricci_oracle(m, pt);
  const auto r2 = ricci_oracle(m, pt);
  CHECK(real_to_record(r1.max_abs) == real_to_record(r2.max_abs));
  REQUIRE(r1.x.size() == r2.x.size());
  for (size_t i = 0; i < r1.x.size(); ++i)
    CHECK(real_to_record(r1.x[i]) == real_to_record(r2.x[i]));
}

}  // TEST_SUITE
