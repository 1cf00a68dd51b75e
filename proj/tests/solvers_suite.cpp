#include "doctest.h"

#include "forge/modelfile.hpp"
#include "forge/profiles.hpp"
#include "forge/solvers.hpp"
#include "fixtures.hpp"
#include "support.hpp"

#include <string>

using namespace forge;
using forge::testing::gap;
using forge::testing::raised_kind;
using forge::testing::tol;

TEST_SUITE("solvers") {

TEST_CASE("first partial degree at rational roots: frozen exact values") {
  const auto cfg = fixtures::t1_config();
  CHECK(type1_cy_partial_degree(cfg, rat(3, 2)) == rat(129, 65));
  CHECK(type1_cy_partial_degree(cfg, rat(2)) == rat(34, 15));
}

TEST_CASE("all-positive-roots Ricci-flat solve hits its twist targets") {
  const auto& m = fixtures::t1_cy();
  REQUIRE(m.deltas.size() == 2);
  CHECK(gap(m.deltas[0], real(2)) <= tol(-10));
  CHECK(gap(m.deltas[1], real(1)) <= tol(-10));
  CHECK(m.alphas_x.has_value());
  CHECK(gap(m.alphas.alpha[0], real(1)) <= tol(-35));
  CHECK(m.beta == 2);
  CHECK(gap(m.dist_exponent, real(1) / 2) <= tol(-30));
  CHECK(gap(m.vol_exponent, real(8)) <= tol(-30));
  CHECK(m.a == 0);

  // The bracketing interval for the top root is (3/2, 2): the frozen degree
  // values sit on either side of the target twist 2.
  CHECK(m.alphas.alpha[1] > real(3) / 2);
  CHECK(m.alphas.alpha[1] < real(2));
}

TEST_CASE("split-sign rank-two solve is the closed-form model") {
  const auto& m = fixtures::t2_cy_rank2();
  CHECK(gap(m.alphas.alpha[0], real(-1)) <= tol(-35));
  CHECK(gap(m.alphas.alpha[1], real(1)) <= tol(-35));
  CHECK(gap(m.deltas[0], real(-1)) <= tol(-32));
  CHECK(gap(m.deltas[1], real(-1)) <= tol(-32));
  CHECK(gap(m.delta_targets[0], real(-1)) <= tol(-35));
  CHECK(gap(m.vol_exponent, real(5)) <= tol(-30));
  CHECK(gap(m.dist_exponent, real(1)) <= tol(-30));
  CHECK(m.beta == 1);

  // The root ratio does not move with the rate: the steady solve at rate one
  // lands on the same roots and partial degrees.
  const auto st = solve_type2_rank2(fixtures::t2_rank2_config(soliton_class::steady), real(1));
  CHECK(gap(st.alphas.alpha[0], m.alphas.alpha[0]) <= tol(-32));
  CHECK(gap(st.alphas.alpha[1], m.alphas.alpha[1]) <= tol(-32));
  CHECK(gap(st.deltas[0], m.deltas[0]) <= tol(-30));
  CHECK(gap(st.deltas[1], m.deltas[1]) <= tol(-30));
}

TEST_CASE("steady solve keeps degree one growth and hits targets") {
  const auto& m = fixtures::t1_steady_unit();
  CHECK(m.beta == 1);
  CHECK(gap(m.deltas[0], real(2)) <= tol(-9));
  CHECK(gap(m.deltas[1], real(1)) <= tol(-9));
  CHECK(gap(m.vol_exponent, real(4)) <= tol(-30));
  CHECK(gap(m.a, real(1)) <= tol(-35));
}

TEST_CASE("shrinking solve: nested rate, rationality, root product") {
  const auto& m = fixtures::t1_shrinker();
  CHECK(m.a < 0);
  CHECK(m.rate_residual <= tol(-10));
  CHECK(gap(m.deltas[0], real(2)) <= tol(-8));
  for (const auto& rep : m.profiles.F) CHECK(gap(rep.c, real(0)) <= tol(-10));

  // Roots come as (1/s, b s) with b = 1 here, so their product is one.
  const real product = m.alphas.alpha[0] * m.alphas.alpha[1];
  CHECK(gap(product, real(1)) <= tol(-25));
  CHECK(gap(m.profiles.q.coeff(2), real(-1)) <= tol(-33));
  CHECK(!m.inner_rate_roots.empty());
  CHECK(m.degree_identity_residual <= tol(-20));
}

TEST_CASE("expanding solve certifies and sits inside its range") {
  const auto& m = fixtures::t1_expander();
  CHECK(gap(m.a, real(1)) <= tol(-35));
  CHECK(gap(m.deltas[0], real(2)) <= tol(-8));
  const auto cert = certify_profiles(m.profiles, m.alphas, m.config);
  CHECK(cert.all_pass());
  CHECK(m.degree_identity_residual <= tol(-20));
}

TEST_CASE("rank-three split-sign solves meet targets and the degree identity") {
  for (const soliton_model* m : {&fixtures::t2_rank3_cy(), &fixtures::t2_rank3_steady()}) {
    REQUIRE(m->deltas.size() == 3);
    for (size_t j = 0; j < 3; ++j)
      CHECK(gap(m->deltas[j], m->delta_targets[j]) <= tol(-8));
    CHECK(m->degree_identity_residual <= tol(-8));
  }
  // Rank three split-sign is a covered regime for both classes; the
  // experimental marker belongs to the general-rank path only.
  CHECK(!fixtures::t2_rank3_cy().experimental);
  CHECK(!fixtures::t2_rank3_steady().experimental);
}

TEST_CASE("solver refusals: exit codes, ranges, obstructed classes") {
  // Twist target on the boundary of the provable open range.
  ansatz_config narrow = fixtures::shrinker_config();
  narrow.i_B = 3;
  narrow.d_B = 2;
  narrow.m = {1, 1};
  const auto kind = raised_kind([&] { solve_shrinker(narrow); });
  CHECK(kind == errc::infeasible);
  CHECK(forge_error(errc::infeasible, "x").exit_code() == 2);
  CHECK(forge_error(errc::numeric, "x").exit_code() == 1);

  // No complete shrinking or expanding soliton exists over split-sign roots.
  ansatz_config obstructed = fixtures::t2_rank2_config(soliton_class::shrinking);
  CHECK(raised_kind([&] { solve_model(obstructed, true); }) == errc::infeasible);

  // Shapes outside the closed-form regimes are gated behind the experimental
  // flag: a rank-three all-positive-roots bundle reaches the general solver.
  ansatz_config gated;
  gated.kind = case_kind::type1;
  gated.cls = soliton_class::cy;
  gated.ell = 3;
  gated.d_B = 3;
  gated.i_B = 4;
  gated.d = {0, 0, 0};
  gated.m = {2, 1, 1};
  CHECK(raised_kind([&] { solve_model(gated, false); }) == errc::domain_data);
}

TEST_CASE("degree sweep brackets the target twist monotonically") {
  const auto rows = sweep_alpha(fixtures::t1_config(), real(11) / 10, real(3), 5);
  REQUIRE(rows.size() == 5);
  for (size_t i = 0; i + 1 < rows.size(); ++i)
    CHECK(rows[i].deltas[0] < rows[i + 1].deltas[0]);
  CHECK(rows.front().deltas[0] < real(2));
  CHECK(rows.back().deltas[0] > real(2));
}

TEST_CASE("solving twice renders byte-identical documents") {
  const auto m1 = solve_type2_rank2(fixtures::t2_rank2_config(), real(0));
  const auto m2 = solve_type2_rank2(fixtures::t2_rank2_config(), real(0));
  model_document d1{m1, certify_profiles(m1.profiles, m1.alphas, m1.config), precision_bits()};
  model_document d2{m2, certify_profiles(m2.profiles, m2.alphas, m2.config), precision_bits()};
  CHECK(render_model(d1) == render_model(d2));
}

}  // TEST_SUITE
