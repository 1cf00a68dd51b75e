#include "forge/chart.hpp"

#include "forge/geometry.hpp"
#include "forge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace forge {

namespace {

struct chart_ctx {
  const soliton_model* m;
  real quad_rel;
  int max_newton;
  std::vector<real> anchors;
  real span;
};

real span_of(const roots_r& roots) {
  using std::abs;
  real s(1);
  if (abs(roots.alpha.front()) > s) s = abs(roots.alpha.front());
  if (abs(roots.alpha.back()) > s) s = abs(roots.alpha.back());
  if (roots.alpha.size() > 1 && roots.alpha.back() - roots.alpha.front() > s)
    s = roots.alpha.back() - roots.alpha.front();
  return s;
}

// x_r(xi): separable 1-D quadratures of (-1)^(r-1) t^(ell-r)/Theta_j from the
// interval anchors.
std::vector<real> chart_map(const chart_ctx& cx, const std::vector<real>& xi) {
  const size_t n = xi.size();
  std::vector<real> x(n, real(0));
  for (size_t r = 0; r < n; ++r) {
    real sgn = (r % 2 == 0) ? real(1) : real(-1);
    for (size_t j = 0; j < n; ++j) {
      std::function<real(const real&)> f = [&](const real& t) {
        return sgn * pow(t, static_cast<int>(n - 1 - r)) / cx.m->profiles.theta(static_cast<int>(j), t);
      };
      real lo = cx.anchors[j], hi = xi[j];
      real flip(1);
      if (hi < lo) {
        std::swap(lo, hi);
        flip = -1;
      }
      if (lo != hi) x[r] += flip * integrate_adaptive(f, lo, hi, cx.quad_rel);
    }
  }
  return x;
}

matrix<real> chart_jacobian(const chart_ctx& cx, const std::vector<real>& xi) {
  const size_t n = xi.size();
  matrix<real> a(n, std::vector<real>(n));
  for (size_t r = 0; r < n; ++r) {
    real sgn = (r % 2 == 0) ? real(1) : real(-1);
    for (size_t j = 0; j < n; ++j)
      a[r][j] = sgn * pow(xi[j], static_cast<int>(n - 1 - r)) /
                cx.m->profiles.theta(static_cast<int>(j), xi[j]);
  }
  return a;
}

std::vector<real> newton_invert(const chart_ctx& cx, const std::vector<real>& x_target,
                                std::vector<real> seed) {
  using std::abs;
  real scale(1);
  for (const real& v : x_target)
    if (abs(v) > scale) scale = abs(v);
  // The chart map itself is only known to quadrature accuracy, so that is
  // the convergence floor, not machine epsilon.
  real tol = scale * cx.quad_rel * 16;
  real floor = scale * eps_floor() * 64;
  if (tol < floor) tol = floor;
  for (int it = 0; it < cx.max_newton; ++it) {
    std::vector<real> cur = chart_map(cx, seed);
    real err(0);
    std::vector<real> rhs(cur.size());
    for (size_t r = 0; r < cur.size(); ++r) {
      rhs[r] = x_target[r] - cur[r];
      if (abs(rhs[r]) > err) err = abs(rhs[r]);
    }
    if (err <= tol) return seed;
    std::vector<real> step = solve_dense(chart_jacobian(cx, seed), rhs);
    for (size_t j = 0; j < seed.size(); ++j) seed[j] += step[j];
  }
  throw forge_error(errc::chart, "chart inversion did not reach quadrature accuracy");
}

std::vector<real> sigma_of(const std::vector<real>& xi) {
  std::vector<real> e(xi.size() + 1, real(0));
  e[0] = 1;
  size_t used = 0;
  for (const real& v : xi) {
    ++used;
    for (size_t r = used; r >= 1; --r) e[r] += v * e[r - 1];
  }
  return std::vector<real>(e.begin() + 1, e.end());
}

// G(xi) = 1/2 d(sigma)/dx, assembled from the angular closed form.
matrix<real> hermitian_block(const chart_ctx& cx, const std::vector<real>& xi) {
  const size_t n = xi.size();
  matrix<real> g(n, std::vector<real>(n, real(0)));
  for (size_t j = 0; j < n; ++j) {
    std::vector<real> rest;
    for (size_t i = 0; i < n; ++i)
      if (i != j) rest.push_back(xi[i]);
    std::vector<real> u(n, real(0));
    u[0] = 1;
    size_t used = 0;
    for (const real& v : rest) {
      ++used;
      for (size_t r = used; r >= 1; --r) u[r] += v * u[r - 1];
    }
    real delta(1);
    for (size_t i = 0; i < n; ++i)
      if (i != j) delta *= xi[j] - xi[i];
    real w = cx.m->profiles.theta(static_cast<int>(j), xi[j]) / delta;
    for (size_t r = 0; r < n; ++r)
      for (size_t s = 0; s < n; ++s) g[r][s] += w * u[r] * u[s] / 2;
  }
  return g;
}

real log_det(const matrix<real>& g) {
  using std::abs;
  matrix<real> a = g;
  const size_t n = a.size();
  real det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col] == real(0))
      throw forge_error(errc::chart, "degenerate hermitian block in the chart");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      real f = a[r][col] / a[col][col];
      for (size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return log(abs(det));
}

}  // namespace

oracle_report ricci_oracle(const soliton_model& m, const std::vector<real>& xi,
                           const oracle_options& opt) {
  using std::abs;
  if (m.config.ell != 2)
    throw forge_error(errc::domain_data, "the chart oracle handles exactly two fiber coordinates");
  for (int dj : m.config.d)
    if (dj != 0)
      throw forge_error(errc::domain_data,
                        "the chart oracle requires a fiber without projectivized summands");

  chart_ctx cx;
  cx.m = &m;
  cx.quad_rel = real(opt.quad_rel);
  cx.max_newton = opt.max_newton;
  cx.span = span_of(m.alphas);
  const size_t n = 2;
  for (size_t j = 0; j < n; ++j) {
    interval<real> iv = m.alphas.coordinate_interval(static_cast<int>(j));
    if (iv.hi_unbounded)
      cx.anchors.push_back(iv.lo + cx.span);
    else if (iv.lo_unbounded)
      cx.anchors.push_back(iv.hi - cx.span);
    else
      cx.anchors.push_back((iv.lo + iv.hi) / 2);
  }

  // Validates interiority and provides the coframe matrices for the CR and
  // consistency checks.
  metric_sample samp = eval_metric(m, xi);

  oracle_report rep;
  rep.x = chart_map(cx, xi);
  rep.g_hermitian = hermitian_block(cx, xi);

  matrix<real> a = chart_jacobian(cx, xi);
  matrix<real> ainv = mat_inverse(a);

  // Interior margin of the point, for the finite-difference step.
  real margin = cx.span;
  for (size_t j = 0; j < n; ++j) {
    interval<real> iv = m.alphas.coordinate_interval(static_cast<int>(j));
    if (!iv.lo_unbounded && xi[j] - iv.lo < margin) margin = xi[j] - iv.lo;
    if (!iv.hi_unbounded && iv.hi - xi[j] < margin) margin = iv.hi - xi[j];
  }
  std::vector<real> h(n);
  for (size_t s = 0; s < n; ++s) {
    real colnorm(0);
    for (size_t j = 0; j < n; ++j)
      if (abs(ainv[j][s]) > colnorm) colnorm = abs(ainv[j][s]);
    h[s] = real(opt.fd_scale) * margin / colnorm;
  }

  // Scalar fields of the structure equation, evaluated through the inverse
  // chart at stencil offsets.
  const real rate = m.a;
  const int dB = m.config.d_B;
  auto fields = [&](const std::vector<real>& x_pt, const std::vector<real>& seed,
                    real& f_log, real& f_pot, std::vector<real>* echo) {
    std::vector<real> xp = newton_invert(cx, x_pt, seed);
    f_log = log_det(hermitian_block(cx, xp));
    std::vector<real> sig = sigma_of(xp);
    f_pot = rate * sig[0] + dB * log(abs(sig[n - 1]));
    if (echo) *echo = chart_map(cx, xp);
  };

  // Full 3x3-point Hessian stencil at one step level.
  auto hessian_level = [&](const real& h1, const real& h2, matrix<real>& hl, matrix<real>& hp,
                           matrix<real>* hecho) {
    real fl0, fp0;
    std::vector<real> e0;
    fields(rep.x, xi, fl0, fp0, opt.with_pluriharmonic ? &e0 : nullptr);
    real fl[3][3], fp[3][3];
    std::vector<real> ec[3][3];
    for (int i = -1; i <= 1; ++i)
      for (int k = -1; k <= 1; ++k) {
        if (i == 0 && k == 0) {
          fl[1][1] = fl0;
          fp[1][1] = fp0;
          ec[1][1] = e0;
          continue;
        }
        std::vector<real> xp = rep.x;
        xp[0] += i * h1;
        xp[1] += k * h2;
        fields(xp, xi, fl[i + 1][k + 1], fp[i + 1][k + 1],
               opt.with_pluriharmonic ? &ec[i + 1][k + 1] : nullptr);
      }
    auto second = [&](const real v[3][3]) {
      matrix<real> hh(2, std::vector<real>(2));
      hh[0][0] = (v[2][1] - 2 * v[1][1] + v[0][1]) / (h1 * h1);
      hh[1][1] = (v[1][2] - 2 * v[1][1] + v[1][0]) / (h2 * h2);
      hh[0][1] = (v[2][2] - v[2][0] - v[0][2] + v[0][0]) / (4 * h1 * h2);
      hh[1][0] = hh[0][1];
      return hh;
    };
    hl = second(fl);
    hp = second(fp);
    if (hecho) {
      hecho->assign(2, std::vector<real>(2, real(0)));
      for (size_t s = 0; s < n; ++s) {
        real v[3][3];
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k < 3; ++k) v[i][k] = ec[i][k][s];
        matrix<real> hs = second(v);
        for (size_t i = 0; i < 2; ++i)
          for (size_t k = 0; k < 2; ++k)
            if (abs(hs[i][k]) > (*hecho)[i][k]) (*hecho)[i][k] = abs(hs[i][k]);
      }
    }
  };

  matrix<real> hl1, hp1, hl2, hp2, he1, he2;
  hessian_level(h[0], h[1], hl1, hp1, opt.with_pluriharmonic ? &he1 : nullptr);
  hessian_level(h[0] / 2, h[1] / 2, hl2, hp2, opt.with_pluriharmonic ? &he2 : nullptr);

  auto richardson = [](const matrix<real>& coarse, const matrix<real>& fine) {
    matrix<real> r(coarse.size(), std::vector<real>(coarse.size()));
    for (size_t i = 0; i < coarse.size(); ++i)
      for (size_t k = 0; k < coarse.size(); ++k) r[i][k] = (4 * fine[i][k] - coarse[i][k]) / 3;
    return r;
  };
  matrix<real> hess_log = richardson(hl1, hl2);
  matrix<real> hess_pot = richardson(hp1, hp2);

  const int qtop = m.config.q_top();
  rep.residual.assign(n, std::vector<real>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      rep.residual[i][k] =
          -hess_log[i][k] / 4 + qtop * rep.g_hermitian[i][k] - hess_pot[i][k] / 4;
      if (abs(rep.residual[i][k]) > rep.max_abs) rep.max_abs = abs(rep.residual[i][k]);
    }

  if (opt.with_pluriharmonic) {
    for (size_t i = 0; i < 2; ++i)
      for (size_t k = 0; k < 2; ++k) {
        real v = he1[i][k] > he2[i][k] ? he1[i][k] : he2[i][k];
        if (v > rep.pluriharmonic_residual) rep.pluriharmonic_residual = v;
      }
  }

  // Transported complex structure against the two constant chart candidates.
  matrix<real> trans(2 * n, std::vector<real>(2 * n, real(0)));
  matrix<real> trans_inv(2 * n, std::vector<real>(2 * n, real(0)));
  matrix<real> at = mat_transpose(a);
  matrix<real> at_inv = mat_inverse(at);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      trans[i][k] = at_inv[i][k];
      trans_inv[i][k] = at[i][k];
    }
  for (size_t i = n; i < 2 * n; ++i) {
    trans[i][i] = 1;
    trans_inv[i][i] = 1;
  }
  matrix<real> jx = mat_mul(trans, mat_mul(samp.J, trans_inv));
  real res_plus(0), res_minus(0);
  for (size_t i = 0; i < 2 * n; ++i)
    for (size_t k = 0; k < 2 * n; ++k) {
      real want_plus(0), want_minus(0);
      if (i < n && k == i + n) {
        want_plus = -1;
        want_minus = 1;
      }
      if (i >= n && k == i - n) {
        want_plus = 1;
        want_minus = -1;
      }
      real dp = abs(jx[i][k] - want_plus), dm = abs(jx[i][k] - want_minus);
      if (dp > res_plus) res_plus = dp;
      if (dm > res_minus) res_minus = dm;
    }
  if (res_plus <= res_minus) {
    rep.cr_residual = res_plus;
    rep.z_sign = 1;
  } else {
    rep.cr_residual = res_minus;
    rep.z_sign = -1;
  }
  if (!(rep.cr_residual <= real(1e-6)))
    throw forge_error(errc::chart,
                      "the transported complex structure matches neither chart orientation");

  // The hermitian block against the coordinate block carried over from the
  // coframe sample.
  matrix<real> gxx(n, std::vector<real>(n, real(0)));
  for (size_t i = 0; i < n; ++i) gxx[i][i] = samp.g[i][i];
  matrix<real> carried = mat_mul(mat_transpose(ainv), mat_mul(gxx, ainv));
  real cons(0);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      real v = abs(rep.g_hermitian[i][k] - carried[i][k] / 2);
      if (v > cons) cons = v;
    }
  rep.metric_consistency = cons;
  return rep;
}

}  // namespace forge
