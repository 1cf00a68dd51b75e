#include "doctest.h"

#include "forge/degrees.hpp"
#include "forge/hermite.hpp"
#include "forge/poly.hpp"
#include "forge/roots.hpp"
#include "support.hpp"

#include <random>
#include <vector>

using namespace forge;
using forge::testing::raised_kind;

namespace {

rat rnd_rat(std::mt19937& rng, int lo, int hi, int den_max) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, den_max);
  return rat(num(rng), den(rng));
}

// Strictly ordered admissible roots with random small-rational jitter; the
// split-sign case puts exactly the top root above zero.
root_tuple<rat> rnd_roots(std::mt19937& rng, case_kind kind, int ell) {
  std::uniform_int_distribution<int> mult(0, 2);
  root_tuple<rat> r;
  r.kind = kind;
  if (kind == case_kind::type1) {
    rat t = rat(1, 3) + rnd_rat(rng, 0, 4, 5);
    for (int j = 0; j < ell; ++j) {
      r.alpha.push_back(t);
      t += 1 + rnd_rat(rng, 0, 4, 5);
    }
  } else {
    std::vector<rat> neg;
    rat t = rat(-1, 2) - rnd_rat(rng, 0, 4, 5);
    for (int j = 0; j + 1 < ell; ++j) {
      neg.push_back(t);
      t -= 1 + rnd_rat(rng, 0, 4, 5);
    }
    r.alpha.assign(neg.rbegin(), neg.rend());
    r.alpha.push_back(rat(1, 2) + rnd_rat(rng, 0, 4, 5));
  }
  for (int j = 0; j < ell; ++j) r.d.push_back(mult(rng));
  if (kind == case_kind::type2) r.d.back() = 0;
  r.validate();
  return r;
}

poly<rat> rnd_poly(std::mt19937& rng, int degree) {
  std::vector<rat> c(static_cast<size_t>(degree) + 1);
  for (auto& v : c) v = rnd_rat(rng, -9, 9, 6);
  if (c.back() == 0) c.back() = 1;
  return poly<rat>(c);
}

}  // namespace

TEST_SUITE("polycore") {

TEST_CASE("polynomial ring basics over rationals") {
  std::mt19937 rng(91101u);
  const poly<rat> p = poly<rat>::from_roots({rat(1), rat(-1)});
  CHECK(p.coeff(0) == rat(-1));
  CHECK(p.coeff(1) == rat(0));
  CHECK(p.coeff(2) == rat(1));
  CHECK(p(rat(3)) == rat(8));

  const poly<rat> r = poly<rat>::from_roots({rat(1), rat(2)}, {1, 2});
  CHECK(r.degree() == 3);
  CHECK(r(rat(2)) == rat(0));
  CHECK(r(rat(3)) == rat(2));

  for (int it = 0; it < 20; ++it) {
    const poly<rat> u = rnd_poly(rng, 4);
    const poly<rat> v = rnd_poly(rng, 3);
    const rat x = rnd_rat(rng, -8, 8, 5);
    CHECK((u * v)(x) == u(x) * v(x));
    CHECK((u + v)(x) == u(x) + v(x));
    CHECK(u.antiderivative().derivative() == u);
    CHECK(u.derivative(2) == u.derivative().derivative());
  }
}

TEST_CASE("division with remainder reconstructs the numerator") {
  std::mt19937 rng(4242u);
  for (int it = 0; it < 25; ++it) {
    const poly<rat> num = rnd_poly(rng, 6);
    const poly<rat> den = rnd_poly(rng, 2);
    const auto [quo, rem] = divmod(num, den);
    CHECK(quo * den + rem == num);
    CHECK(rem.degree() < den.degree());
  }
}

TEST_CASE("elementary symmetric functions and the deletion recurrence") {
  const std::vector<rat> v{rat(1), rat(2), rat(3)};
  CHECK(elem_symmetric(v, 0) == rat(1));
  CHECK(elem_symmetric(v, 1) == rat(6));
  CHECK(elem_symmetric(v, 2) == rat(11));
  CHECK(elem_symmetric(v, 3) == rat(6));

  std::mt19937 rng(7321u);
  std::vector<rat> w(5);
  for (auto& x : w) x = rnd_rat(rng, -7, 7, 4);
  for (int r = 1; r <= 4; ++r)
    for (int j = 0; j < 5; ++j)
      CHECK(elem_symmetric(w, r) ==
            elem_symmetric_hat(w, r, j) + w[static_cast<size_t>(j)] * elem_symmetric_hat(w, r - 1, j));
}

TEST_CASE("Hermite interpolation: frozen quadratic and random reconstruction") {
  // Value 0 at 0, value 1 at 1, slope 0 at 1: the unique quadratic is 2t - t^2.
  const poly<rat> h = hermite_interpolate(
      {{rat(0), 0, rat(0)}, {rat(1), 0, rat(1)}, {rat(1), 1, rat(0)}}, 2);
  CHECK(h.coeff(0) == rat(0));
  CHECK(h.coeff(1) == rat(2));
  CHECK(h.coeff(2) == rat(-1));

  std::mt19937 rng(5150u);
  for (int it = 0; it < 10; ++it) {
    const poly<rat> p = rnd_poly(rng, 4);
    const std::vector<hermite_constraint> cs{
        {rat(0), 0, p(rat(0))},
        {rat(0), 1, p.derivative()(rat(0))},
        {rat(1), 0, p(rat(1))},
        {rat(1), 1, p.derivative()(rat(1))},
        {rat(2), 0, p(rat(2))},
    };
    CHECK(hermite_interpolate(cs, 4) == p);
  }

  const auto kind = raised_kind([] {
    hermite_interpolate({{rat(1), 0, rat(0)}, {rat(1), 0, rat(1)}}, 1);
  });
  CHECK(kind == errc::interpolation);
}

TEST_CASE("lattice frame residual vanishes identically") {
  std::mt19937 rng(160901u);
  for (int ell = 1; ell <= 6; ++ell) {
    for (int it = 0; it < 12; ++it) {
      const case_kind kind =
          (ell >= 2 && it % 2 == 1) ? case_kind::type2 : case_kind::type1;
      const auto roots = rnd_roots(rng, kind, ell);
      const auto res = vandermonde_residual(roots);
      for (const auto& row : res)
        for (const auto& entry : row) CHECK(entry == rat(0));
    }
  }

  root_tuple<rat> repeated;
  repeated.kind = case_kind::type1;
  repeated.alpha = {rat(1), rat(1), rat(2)};
  repeated.d = {0, 0, 0};
  CHECK(raised_kind([&] { vandermonde_residual(repeated); }) == errc::domain_data);
}

TEST_CASE("partial degree sums meet the closed form exactly") {
  // Frozen instance: roots (1, 2) with trivial multiplicities and the
  // defining polynomial -3 + (28/15) t. The two partial degrees are 34/15
  // and 11/15; their sum is 3, and the closed form -q(0) agrees.
  root_tuple<rat> roots;
  roots.kind = case_kind::type1;
  roots.alpha = {rat(1), rat(2)};
  roots.d = {0, 0};
  const poly<rat> q({rat(-3), rat(28, 15)});
  CHECK(partial_degree(q, roots, 0) == rat(34, 15));
  CHECK(partial_degree(q, roots, 1) == rat(11, 15));
  const auto pair = total_degree(q, roots);
  CHECK(pair.direct == rat(3));
  CHECK(pair.closed == rat(3));

  std::mt19937 rng(271828u);
  for (int ell = 1; ell <= 4; ++ell) {
    for (int it = 0; it < 25; ++it) {
      const case_kind kind =
          (ell >= 2 && it % 2 == 1) ? case_kind::type2 : case_kind::type1;
      const auto r = rnd_roots(rng, kind, ell);
      // Alternate full degree ell with a dropped leading coefficient.
      const poly<rat> w = rnd_poly(rng, (it % 3 == 0) ? ell - 1 : ell);
      const auto dp = total_degree(w, r);
      CHECK(dp.direct == dp.closed);

      const auto kl = kell_coefficients(w, r);
      for (int j = 0; j < ell; ++j)
        CHECK(kl[static_cast<size_t>(j)] == partial_degree(w, r, j));
    }
  }
}

}  // TEST_SUITE
