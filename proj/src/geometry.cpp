#include "forge/geometry.hpp"

#include "forge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace forge {

namespace {

// sigma_1..sigma_ell of the values xs (index 0 unused in callers; returned
// vector has size ell with sigma_{r+1} at slot r).
std::vector<real> elementary_moments(const std::vector<real>& xs) {
  std::vector<real> e(xs.size() + 1, real(0));
  e[0] = 1;
  size_t used = 0;
  for (const real& x : xs) {
    ++used;
    for (size_t r = used; r >= 1; --r) e[r] += x * e[r - 1];
  }
  return std::vector<real>(e.begin() + 1, e.end());
}

// sigma_{r-1} of xs with slot j removed, r = 1..ell.
std::vector<real> moments_without(const std::vector<real>& xs, size_t j) {
  std::vector<real> rest;
  rest.reserve(xs.size() - 1);
  for (size_t i = 0; i < xs.size(); ++i)
    if (i != j) rest.push_back(xs[i]);
  std::vector<real> e(xs.size(), real(0));
  e[0] = 1;
  size_t used = 0;
  for (const real& x : rest) {
    ++used;
    for (size_t r = used; r >= 1; --r) e[r] += x * e[r - 1];
  }
  e.resize(xs.size());
  return e;
}

real delta_at_point(const std::vector<real>& xs, size_t j) {
  real acc(1);
  for (size_t i = 0; i < xs.size(); ++i)
    if (i != j) acc *= xs[j] - xs[i];
  return acc;
}

// Characteristic length of the root configuration, used for anchor offsets
// and boundary-proximity scales.
real root_span(const roots_r& roots) {
  using std::abs;
  real s(1);
  const auto& al = roots.alpha;
  if (abs(al.front()) > s) s = abs(al.front());
  if (abs(al.back()) > s) s = abs(al.back());
  if (al.size() > 1 && al.back() - al.front() > s) s = al.back() - al.front();
  return s;
}

// Interior reference value for coordinate j: midpoint of a bounded interval,
// one span into an unbounded one.
real anchor_value(const roots_r& roots, int j, const real& span) {
  interval<real> iv = roots.coordinate_interval(j);
  if (iv.hi_unbounded) return iv.lo + span;
  if (iv.lo_unbounded) return iv.hi - span;
  return (iv.lo + iv.hi) / 2;
}

void require_interior(const soliton_model& m, const std::vector<real>& xi) {
  const int ell = m.config.ell;
  if (static_cast<int>(xi.size()) != ell)
    throw forge_error(errc::domain_data, "coordinate tuple has the wrong length");
  const real span = root_span(m.alphas);
  for (int j = 0; j < ell; ++j) {
    interval<real> iv = m.alphas.coordinate_interval(j);
    real scale = (!iv.lo_unbounded && !iv.hi_unbounded) ? iv.hi - iv.lo : span;
    real tol = real(1e-6) * scale;
    if (!iv.lo_unbounded && !(xi[static_cast<size_t>(j)] >= iv.lo + tol))
      throw forge_error(errc::domain_data,
                        "coordinate " + std::to_string(j + 1) + " is at or below its interval floor");
    if (!iv.hi_unbounded && !(xi[static_cast<size_t>(j)] <= iv.hi - tol))
      throw forge_error(errc::domain_data,
                        "coordinate " + std::to_string(j + 1) + " is at or above its interval ceiling");
  }
}

real det_lu(matrix<real> a) {
  using std::abs;
  const size_t n = a.size();
  real det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col] == real(0)) return real(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == real(0)) continue;
      real f = a[r][col] / a[col][col];
      for (size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

real regression_slope(const std::vector<real>& us, const std::vector<real>& vs) {
  const size_t n = us.size();
  real ub(0), vb(0);
  for (size_t k = 0; k < n; ++k) {
    ub += us[k];
    vb += vs[k];
  }
  ub /= static_cast<int>(n);
  vb /= static_cast<int>(n);
  real num(0), den(0);
  for (size_t k = 0; k < n; ++k) {
    num += (us[k] - ub) * (vs[k] - vb);
    den += (us[k] - ub) * (us[k] - ub);
  }
  if (den == real(0)) throw forge_error(errc::interpolation, "degenerate regression abscissae");
  return num / den;
}

// Arc length element of a single-coordinate sweep at coordinate value t,
// with the other coordinates frozen at cur.
real leg_element(const soliton_model& m, int j, const real& t, const std::vector<real>& cur) {
  using std::abs;
  real delta(1);
  for (size_t i = 0; i < cur.size(); ++i)
    if (static_cast<int>(i) != j) delta *= t - cur[i];
  real th = m.profiles.theta(j, t);
  return sqrt(abs(delta / th));
}

real leg_length(const soliton_model& m, int j, const real& from, const real& to,
                const std::vector<real>& cur) {
  using std::abs;
  if (from == to) return real(0);
  real lo = from < to ? from : to;
  real hi = from < to ? to : from;
  std::function<real(const real&)> f = [&](const real& t) { return leg_element(m, j, t, cur); };
  return integrate_adaptive(f, lo, hi, real(1e-10));
}

// Cumulative distance table along the unbounded side of coordinate j,
// starting from the anchor and moving away from the bounded region. Offsets
// are geometric; D is interpolated log-log between knots.
struct ray_table {
  real base;      // anchor coordinate value
  int direction;  // +1 toward +inf, -1 toward -inf
  std::vector<real> offsets;  // strictly increasing, offsets[0] > 0
  std::vector<real> dists;

  real coord(size_t k) const { return base + real(direction) * offsets[k]; }

  real dist_at(const real& x) const {
    using std::abs;
    real off = real(direction) * (x - base);
    if (off <= offsets.front()) return dists.front() * off / offsets.front();
    if (off >= offsets.back()) return dists.back();
    size_t k = 1;
    while (offsets[k] < off) ++k;
    real u = (log(off) - log(offsets[k - 1])) / (log(offsets[k]) - log(offsets[k - 1]));
    return exp(log(dists[k - 1]) + u * (log(dists[k]) - log(dists[k - 1])));
  }

  // Coordinate whose distance from the anchor equals the budget.
  real coord_of_dist(const real& budget) const {
    if (budget <= dists.front()) return coord(0);
    if (budget >= dists.back()) return coord(offsets.size() - 1);
    size_t k = 1;
    while (dists[k] < budget) ++k;
    real u = (log(budget) - log(dists[k - 1])) / (log(dists[k]) - log(dists[k - 1]));
    return base + real(direction) * exp(log(offsets[k - 1]) + u * (log(offsets[k]) - log(offsets[k - 1])));
  }
};

// Builds the table out to at least distance `target`, with `per_decade`
// knots per decade of coordinate offset starting at span/100.
ray_table build_ray_table(const soliton_model& m, int j, const real& target, int per_decade = 24) {
  const real span = root_span(m.alphas);
  interval<real> iv = m.alphas.coordinate_interval(j);
  ray_table tab;
  tab.direction = iv.hi_unbounded ? 1 : -1;
  tab.base = anchor_value(m.alphas, j, span);

  std::vector<real> cur(m.alphas.alpha.size());
  for (int i = 0; i < m.config.ell; ++i) cur[static_cast<size_t>(i)] = anchor_value(m.alphas, i, span);

  const real step = pow(real(10), real(1) / per_decade);
  real off = span / 100;
  real acc(0);
  real prev = tab.base;
  const size_t cap = 4000;
  while (tab.offsets.size() < cap) {
    real x = tab.base + real(tab.direction) * off;
    acc += leg_length(m, j, prev, x, cur);
    tab.offsets.push_back(off);
    tab.dists.push_back(acc);
    prev = x;
    if (acc > target && off > 20 * span) break;
    off *= step;
  }
  if (!(tab.dists.back() > target))
    throw forge_error(errc::interpolation, "ray distance table failed to reach the requested radius");
  return tab;
}

// Antiderivatives of t^{r-1+d_B} p_c(t), r = 1..ell, plus the sign of the
// weight t^{d_B} p_c(t) on each coordinate interval.
struct weight_system {
  std::vector<poly<real>> anti;  // size ell
  std::vector<int> sign;         // size ell
  poly<real> wpoly;
};

weight_system build_weight_system(const soliton_model& m) {
  const int ell = m.config.ell;
  weight_system ws;
  poly<real> pc = m.profiles.p_c;
  poly<real> base = poly<real>::monomial(m.config.d_B, real(1)) * pc;
  ws.wpoly = base;
  for (int r = 1; r <= ell; ++r)
    ws.anti.push_back((poly<real>::monomial(r - 1, real(1)) * base).antiderivative());
  const real span = root_span(m.alphas);
  for (int j = 0; j < ell; ++j) {
    real probe = anchor_value(m.alphas, j, span);
    ws.sign.push_back(base(probe) >= real(0) ? 1 : -1);
  }
  return ws;
}

}  // namespace

metric_sample eval_metric(const soliton_model& m, const std::vector<real>& xi,
                          const std::vector<real>& t) {
  using std::abs;
  require_interior(m, xi);
  const int ell = m.config.ell;
  const size_t n = static_cast<size_t>(ell);
  if (!t.empty() && t.size() != n)
    throw forge_error(errc::domain_data, "angle tuple has the wrong length");

  metric_sample s;
  s.xi = xi;
  s.t = t.empty() ? std::vector<real>(n, real(0)) : t;

  std::vector<real> theta(n), delta(n);
  matrix<real> u(n, std::vector<real>(n));
  for (size_t j = 0; j < n; ++j) {
    theta[j] = m.profiles.theta(static_cast<int>(j), xi[j]);
    delta[j] = delta_at_point(xi, j);
    u[j] = moments_without(xi, j);
  }

  s.g.assign(2 * n, std::vector<real>(2 * n, real(0)));
  for (size_t j = 0; j < n; ++j) s.g[j][j] = delta[j] / theta[j];
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      real acc(0);
      for (size_t j = 0; j < n; ++j) acc += (theta[j] / delta[j]) * u[j][r] * u[j][c];
      s.g[n + r][n + c] = acc;
    }

  // J sends dxi_j into the angular block and theta_r back; both use the
  // inverse-Vandermonde rows (-1)^{r-1} xi_j^{ell-r}.
  s.J.assign(2 * n, std::vector<real>(2 * n, real(0)));
  for (size_t j = 0; j < n; ++j)
    for (size_t r = 0; r < n; ++r) s.J[n + r][j] = (theta[j] / delta[j]) * u[j][r];
  for (size_t r = 0; r < n; ++r)
    for (size_t j = 0; j < n; ++j) {
      real p = pow(xi[j], static_cast<int>(n - 1 - r));
      real sgn = (r % 2 == 0) ? real(1) : real(-1);
      s.J[j][n + r] = -sgn * p / theta[j];
    }

  matrix<real> jsq = mat_mul(s.J, s.J);
  for (size_t i = 0; i < 2 * n; ++i) jsq[i][i] += real(1);
  s.j_square_residual = mat_max_abs(jsq);

  // s.J acts on covector components, so compatibility reads J g J^T = g and
  // the Kaehler form has components omega = J g (skew once J is metric).
  matrix<real> jt = mat_transpose(s.J);
  matrix<real> comp = mat_mul(s.J, mat_mul(s.g, jt));
  for (size_t i = 0; i < 2 * n; ++i)
    for (size_t k = 0; k < 2 * n; ++k) comp[i][k] -= s.g[i][k];
  s.compat_residual = mat_max_abs(comp);

  s.omega = mat_mul(s.J, s.g);
  real skew(0);
  for (size_t i = 0; i < 2 * n; ++i)
    for (size_t k = 0; k < 2 * n; ++k) {
      real v = abs(s.omega[i][k] + s.omega[k][i]);
      if (v > skew) skew = v;
    }
  s.omega_skew_residual = skew;

  s.eigenvalues = jacobi_eigenvalues(s.g);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());

  real pnc0(1);
  for (size_t i = 0; i < n; ++i) pnc0 *= -xi[i];
  s.base_factors.push_back(real(m.config.eps_B()) * pnc0);
  for (int j = 0; j < ell; ++j) {
    real pj(1);
    for (size_t i = 0; i < n; ++i) pj *= m.alphas.alpha[static_cast<size_t>(j)] - xi[i];
    s.base_factors.push_back(real(m.config.eps_j(j)) * pj);
  }

  if (ell == 2) {
    real sdiff = xi[0] - xi[1];
    real k11 = (theta[0] - theta[1]) / sdiff;
    real k22 = (xi[1] * xi[1] * theta[0] - xi[0] * xi[0] * theta[1]) / sdiff;
    real k12 = (xi[1] * theta[0] - xi[0] * theta[1]) / sdiff;
    s.k_norms = {k11, k22, k12};
    real res(0);
    const real block[3] = {s.g[2][2], s.g[3][3], s.g[2][3]};
    for (int i = 0; i < 3; ++i) {
      real denom = abs(s.k_norms[static_cast<size_t>(i)]) > real(1)
                       ? abs(s.k_norms[static_cast<size_t>(i)])
                       : real(1);
      real v = abs(s.k_norms[static_cast<size_t>(i)] - block[i]) / denom;
      if (v > res) res = v;
    }
    s.k_norm_residual = res;
  }
  return s;
}

sec_data sec_curvature(const soliton_model& m, const std::vector<real>& xi) {
  using std::abs;
  if (m.config.ell != 2)
    throw forge_error(errc::domain_data, "the curvature surrogate is defined for two fiber coordinates");
  if (xi.size() != 2) throw forge_error(errc::domain_data, "need exactly two coordinates");
  real scale = abs(xi[0]) > abs(xi[1]) ? abs(xi[0]) : abs(xi[1]);
  if (scale < real(1)) scale = 1;
  real sdiff = xi[0] - xi[1];
  if (abs(sdiff) <= real(1e-10) * scale)
    throw forge_error(errc::domain_data, "coincident coordinates are outside every admissible box");

  real t0 = m.profiles.theta(0, xi[0]), t1 = m.profiles.theta(1, xi[1]);
  real d0 = m.profiles.theta_deriv(0, xi[0]), d1 = m.profiles.theta_deriv(1, xi[1]);
  real w0 = m.profiles.theta_deriv2(0, xi[0]), w1 = m.profiles.theta_deriv2(1, xi[1]);
  real th = t0 - t1, dth = d0 - d1, wth = w0 - w1;

  sec_data out;
  out.scal = -wth / sdiff;
  out.kappa = -wth / sdiff + 6 * dth / (sdiff * sdiff) - 12 * th / (sdiff * sdiff * sdiff);
  out.lambda = (-wth / sdiff + dth / (sdiff * sdiff)) / 4;

  const real c0 = (out.scal - out.kappa) / 24;
  auto f = [&](const real& t1v, const real& t2v) {
    return t1v * t1v * out.scal / 8 + t1v * t2v * out.lambda + t2v * t2v * out.kappa / 8 + c0;
  };
  std::vector<real> vals;
  for (int s1 = -1; s1 <= 1; s1 += 2)
    for (int s2 = -1; s2 <= 1; s2 += 2) vals.push_back(f(real(s1), real(s2)));
  vals.push_back(c0);
  // Stationary points on the edge interiors of the square.
  if (out.kappa != real(0)) {
    real tc = -4 * out.lambda / out.kappa;
    if (abs(tc) < real(1)) {
      vals.push_back(f(real(1), tc));
      vals.push_back(f(real(-1), -tc));
    }
  }
  if (out.scal != real(0)) {
    real tc = -4 * out.lambda / out.scal;
    if (abs(tc) < real(1)) {
      vals.push_back(f(tc, real(1)));
      vals.push_back(f(-tc, real(-1)));
    }
  }
  out.f_min = vals.front();
  out.f_max = vals.front();
  for (const real& v : vals) {
    if (v < out.f_min) out.f_min = v;
    if (v > out.f_max) out.f_max = v;
  }
  out.sup_abs = abs(out.f_min) > abs(out.f_max) ? abs(out.f_min) : abs(out.f_max);
  return out;
}

distance_report distance_bounds(const soliton_model& m, const std::vector<real>& xi_target) {
  using std::abs;
  require_interior(m, xi_target);
  const int ell = m.config.ell;
  if (m.beta >= ell + 1)
    throw forge_error(errc::domain_data,
                      "growth degree at or above ell + 1 leaves the end at infinite spread; "
                      "no complete comparison is available");

  distance_report rep;
  rep.predicted_exponent = m.dist_exponent;
  const real span = root_span(m.alphas);

  std::vector<real> cur(static_cast<size_t>(ell));
  for (int j = 0; j < ell; ++j) cur[static_cast<size_t>(j)] = anchor_value(m.alphas, j, span);

  // Upper bound: adjust one coordinate at a time along a broken path.
  real upper(0);
  for (int j = 0; j < ell; ++j) {
    real from = cur[static_cast<size_t>(j)];
    upper += leg_length(m, j, from, xi_target[static_cast<size_t>(j)], cur);
    cur[static_cast<size_t>(j)] = xi_target[static_cast<size_t>(j)];
  }
  rep.upper = upper;

  // Lower bound: every path must sweep each unbounded coordinate across its
  // full excursion; the metric coefficient is minimized over the box.
  real lower(0);
  for (int j = 0; j < ell; ++j) {
    interval<real> iv = m.alphas.coordinate_interval(j);
    if (!iv.lo_unbounded && !iv.hi_unbounded) continue;
    real from = anchor_value(m.alphas, j, span);
    real to = xi_target[static_cast<size_t>(j)];
    bool outward = iv.hi_unbounded ? (to > from) : (to < from);
    if (!outward) continue;
    std::function<real(const real&)> f = [&](const real& t) {
      real mindelta(1);
      for (int i = 0; i < ell; ++i) {
        if (i == j) continue;
        interval<real> ii = m.alphas.coordinate_interval(i);
        real fac = iv.hi_unbounded ? t - ii.hi : ii.lo - t;
        if (fac < real(0)) fac = 0;
        mindelta *= fac;
      }
      real th = m.profiles.theta(j, t);
      return real(sqrt(abs(mindelta / th)));
    };
    real lo = from < to ? from : to;
    real hi = from < to ? to : from;
    real len = integrate_adaptive(f, lo, hi, real(1e-10));
    if (len > lower) lower = len;
  }
  rep.lower = lower;
  return rep;
}

growth_report volume_exponent(const soliton_model& m, int decades, int samples_per_decade) {
  using std::abs;
  const int ell = m.config.ell;
  growth_report rep;
  rep.analytic_exponent = m.vol_exponent;

  if (m.config.kind == case_kind::type2 && m.a != real(0)) {
    rep.caveat =
        "split-sign model at nonzero rate: the bottom end sits at finite distance with "
        "unbounded comparison volume, so no radius ladder is meaningful; exponent left analytic";
    return rep;
  }

  const real span = root_span(m.alphas);
  weight_system ws = build_weight_system(m);
  const size_t n = static_cast<size_t>(ell);
  const int count = decades * samples_per_decade + 1;

  if (m.config.kind == case_kind::type1) {
    // Fixed full-interval moment columns below the top coordinate; the top
    // column is truncated at the ladder point.
    matrix<real> cols(n, std::vector<real>(n, real(0)));
    for (size_t i = 0; i + 1 < n; ++i) {
      interval<real> iv = m.alphas.coordinate_interval(static_cast<int>(i));
      for (size_t r = 0; r < n; ++r)
        cols[r][i] = real(ws.sign[i]) * (ws.anti[r](iv.hi) - ws.anti[r](iv.lo));
    }
    const real top = m.alphas.alpha.back();
    const real x0 = top + 10 * span;
    const real x_decades = real(decades) / m.dist_exponent;
    std::vector<real> cur(n);
    for (int j = 0; j < ell; ++j) cur[static_cast<size_t>(j)] = anchor_value(m.alphas, j, span);
    real prev_x = anchor_value(m.alphas, ell - 1, span);
    real dist(0);
    for (int k = 0; k < count; ++k) {
      real xk = x0 * pow(real(10), x_decades * k / (count - 1));
      dist += leg_length(m, ell - 1, prev_x, xk, cur);
      prev_x = xk;
      matrix<real> mm = cols;
      for (size_t r = 0; r < n; ++r)
        mm[r][n - 1] = real(ws.sign[n - 1]) * (ws.anti[r](xk) - ws.anti[r](top));
      rep.radii.push_back(dist);
      rep.volumes.push_back(abs(det_lu(mm)));
      rep.tops.push_back(xk);
    }
  } else {
    // Split-sign rate-zero model: both ends are unbounded and the ball is cut
    // out by a distance budget shared between them.
    ray_table bot = build_ray_table(m, 0, real(1));
    ray_table top = build_ray_table(m, ell - 1, real(1));
    real r0 = bot.dist_at(bot.base - 10 * span) + top.dist_at(top.base + 10 * span);
    real rmax = r0 * pow(real(10), decades);
    bot = build_ray_table(m, 0, rmax * real(1.05));
    top = build_ray_table(m, ell - 1, rmax * real(1.05));

    matrix<real> mid(n, std::vector<real>(n, real(0)));
    for (size_t i = 1; i + 1 < n; ++i) {
      interval<real> iv = m.alphas.coordinate_interval(static_cast<int>(i));
      for (size_t r = 0; r < n; ++r)
        mid[r][i] = real(ws.sign[i]) * (ws.anti[r](iv.hi) - ws.anti[r](iv.lo));
    }
    const real a1 = m.alphas.alpha.front();
    const real atop = m.alphas.alpha.back();

    for (int k = 0; k < count; ++k) {
      real rk = r0 * pow(real(10), real(decades) * k / (count - 1));
      auto integrand = [&](const real& x) {
        real used = x < bot.base ? bot.dist_at(x) : real(0);
        real budget = rk - used;
        if (budget <= real(0)) return real(0);
        real y = top.coord_of_dist(budget);
        matrix<real> mm = mid;
        real p(1);
        for (size_t r = 0; r < n; ++r) {
          mm[r][0] = p;
          p *= x;
          mm[r][n - 1] = real(ws.sign[n - 1]) * (ws.anti[r](y) - ws.anti[r](atop));
        }
        return real(abs(ws.wpoly(x)) * abs(det_lu(mm)));
      };
      // Piecewise integration over the knot partition of the bottom ray plus
      // the stretch between the anchor and the first root.
      real xlo = bot.coord_of_dist(rk);
      real acc(0);
      std::vector<real> cuts;
      cuts.push_back(xlo);
      for (size_t q = bot.offsets.size(); q-- > 0;) {
        real xq = bot.coord(q);
        if (xq > xlo && xq < bot.base) cuts.push_back(xq);
      }
      for (int q = 0; q <= 8; ++q) cuts.push_back(bot.base + (a1 - bot.base) * q / 8);
      std::sort(cuts.begin(), cuts.end());
      for (size_t q = 0; q + 1 < cuts.size(); ++q)
        acc += integrate_panel(integrand, cuts[q], cuts[q + 1], 16);
      rep.radii.push_back(rk);
      rep.volumes.push_back(acc);
    }
  }

  std::vector<real> lr, lv;
  for (size_t k = 0; k < rep.radii.size(); ++k) {
    lr.push_back(log(rep.radii[k]));
    lv.push_back(log(rep.volumes[k]));
  }
  rep.slope = regression_slope(lr, lv);
  rep.measured = true;
  return rep;
}

decay_report curvature_decay_scan(const soliton_model& m, int power, int decades,
                                  int samples_per_decade) {
  using std::abs;
  if (m.config.ell != 2)
    throw forge_error(errc::domain_data, "the decay scan drives the rank-two curvature surrogate");
  decay_report rep;
  rep.power = power;

  const real span = root_span(m.alphas);
  const int ell = m.config.ell;
  const int count = decades * samples_per_decade + 1;

  // Cross-section grid for the lower coordinate.
  std::vector<real> grid;
  interval<real> i0 = m.alphas.coordinate_interval(0);
  if (!i0.lo_unbounded) {
    for (int k = 1; k <= 10; ++k) grid.push_back(i0.lo + (i0.hi - i0.lo) * k / 11);
  } else {
    for (int k = 1; k <= 10; ++k) grid.push_back(i0.hi - span * k / 5);
    rep.note = "split-sign model: scanned along the top end with the bottom coordinate "
               "held in a fixed compact window";
  }

  const real top = m.alphas.alpha.back();
  const real x0 = top + 10 * span;
  const real x_decades = real(decades) / m.dist_exponent;
  std::vector<real> cur(static_cast<size_t>(ell));
  for (int j = 0; j < ell; ++j) cur[static_cast<size_t>(j)] = anchor_value(m.alphas, j, span);
  real prev_x = anchor_value(m.alphas, ell - 1, span);
  real dist(0);

  for (int k = 0; k < count; ++k) {
    real xk = x0 * pow(real(10), x_decades * k / (count - 1));
    dist += leg_length(m, ell - 1, prev_x, xk, cur);
    prev_x = xk;
    real sup(0);
    for (const real& x1 : grid) {
      std::vector<real> xi = {x1, xk};
      sec_data sd = sec_curvature(m, xi);
      if (sd.sup_abs > sup) sup = sd.sup_abs;
      real th0 = m.profiles.theta(0, x1), th1 = m.profiles.theta(1, xk);
      real sdiff = x1 - xk;
      real k11 = (th0 - th1) / sdiff;
      real k22 = (xk * xk * th0 - x1 * x1 * th1) / sdiff;
      real k12 = (xk * th0 - x1 * th1) / sdiff;
      real horiz = (abs(k11) + abs(k12) + abs(k22) + 1) / (xk * xk);
      if (horiz > sup) sup = horiz;
    }
    rep.radii.push_back(dist);
    rep.sups.push_back(sup);
    rep.weighted.push_back(sup * pow(dist, power));
  }

  real rmax = rep.radii.back();
  real wmin(0), wmax(0);
  bool first = true;
  for (size_t k = 0; k < rep.radii.size(); ++k) {
    if (rep.radii[k] < rmax / 10) continue;
    if (first || rep.weighted[k] < wmin) wmin = rep.weighted[k];
    if (first || rep.weighted[k] > wmax) wmax = rep.weighted[k];
    first = false;
  }
  rep.last_decade_variation = wmax > real(0) ? (wmax - wmin) / wmax : real(0);
  return rep;
}

cone_report moment_image_check(const soliton_model& m, int samples_per_axis) {
  using std::abs;
  const int ell = m.config.ell;
  const size_t n = static_cast<size_t>(ell);
  const real span = root_span(m.alphas);

  std::vector<std::vector<real>> axes(n);
  for (int j = 0; j < ell; ++j) {
    interval<real> iv = m.alphas.coordinate_interval(j);
    for (int k = 0; k < samples_per_axis; ++k) {
      if (!iv.lo_unbounded && !iv.hi_unbounded) {
        axes[static_cast<size_t>(j)].push_back(iv.lo + (iv.hi - iv.lo) * (k + 1) / (samples_per_axis + 1));
      } else {
        real off = span * real(0.05) * pow(real(400), real(k) / (samples_per_axis - 1));
        axes[static_cast<size_t>(j)].push_back(iv.hi_unbounded ? real(iv.lo + off) : real(iv.hi - off));
      }
    }
  }

  std::vector<real> sig_alpha = elementary_moments(m.alphas.alpha);

  cone_report rep;
  bool started = false;
  std::vector<size_t> idx(n, 0);
  while (true) {
    std::vector<real> xi(n);
    for (size_t j = 0; j < n; ++j) xi[j] = axes[j][idx[j]];
    std::vector<real> sig = elementary_moments(xi);
    for (int j = 0; j < ell; ++j) {
      real dot(0);
      for (size_t r = 0; r < n; ++r)
        dot += (sig[r] - sig_alpha[r]) * m.v_frame[static_cast<size_t>(j)][r];
      real pnc(1);
      for (size_t i = 0; i < n; ++i) pnc *= m.alphas.alpha[static_cast<size_t>(j)] - xi[i];
      real closed = -real(m.alphas.d[static_cast<size_t>(j)] + 1) * pnc /
                    m.profiles.q(m.alphas.alpha[static_cast<size_t>(j)]);
      real denom = abs(closed) > real(1) ? abs(closed) : real(1);
      real gap = abs(dot - closed) / denom;
      if (gap > rep.cross_residual) rep.cross_residual = gap;
      if (!started || closed < rep.min_coordinate) rep.min_coordinate = closed;
      started = true;
    }
    size_t pos = 0;
    while (pos < n && ++idx[pos] == axes[pos].size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  rep.inside = rep.min_coordinate >= real(-1e-12);
  return rep;
}

}  // namespace forge
