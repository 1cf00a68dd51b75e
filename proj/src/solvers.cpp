#include "forge/solvers.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

#include "forge/errors.hpp"
#include "forge/exppoly.hpp"

namespace forge {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

using vecr = std::vector<real>;

real max_norm(const vecr& v) {
  real m{0};
  for (const real& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

// Signed twist targets: delta_j must equal (-1)^ell eps_B m_j.
std::vector<real> signed_targets(const ansatz_config& config) {
  const int sgn = ((config.ell % 2 == 0) ? 1 : -1) * config.eps_B();
  std::vector<real> t;
  t.reserve(config.m.size());
  for (long mj : config.m) t.push_back(real(sgn * mj));
  return t;
}

// Required sign of q at the j-th root (1-based j), uniform across classes.
int required_q_sign(case_kind kind, int ell, int j1) {
  if (kind == case_kind::type1) return ((ell - j1) % 2 == 0) ? 1 : -1;
  if (j1 == ell) return 1;
  return ((ell - j1) % 2 == 0) ? -1 : 1;
}

void require_alternation(const poly<real>& q, const roots_r& roots, const char* where) {
  for (int j = 0; j < roots.ell(); ++j) {
    const real v = q(roots.alpha[static_cast<size_t>(j)]);
    const int want = required_q_sign(roots.kind, roots.ell(), j + 1);
    if (!(real(want) * v > 0)) {
      std::ostringstream os;
      os << where << ": defining polynomial has the wrong sign at root " << (j + 1) << " ("
         << real_to_decimal(v) << ")";
      throw forge_error(errc::construction, os.str());
    }
  }
}

// Defining polynomial for a root tuple without the sign checks the public
// builders run: intermediate iterates of a solve may violate alternation and
// must still be evaluable.
poly<real> defining_polynomial_unchecked(const roots_r& roots, const ansatz_config& config,
                                         const real& a) {
  const int ell = roots.ell();
  const poly<real> pc = roots.p_c();
  const real q0 = real(config.q_zero());
  const int qtop = config.q_top();

  if (qtop != 0) {
    // Shrinking / expanding: leading coefficient fixed, interior moments
    // determine the middle coefficients.
    poly<real> fixed = poly<real>::monomial(ell, real(qtop)) + poly<real>::constant(q0);
    const int unknowns = ell - 1;
    matrix<real> A(static_cast<size_t>(unknowns), vecr(static_cast<size_t>(unknowns)));
    vecr b(static_cast<size_t>(unknowns));
    for (int row = 0; row < unknowns; ++row) {
      const real& lo = roots.alpha[static_cast<size_t>(row)];
      const real& hi = roots.alpha[static_cast<size_t>(row) + 1];
      for (int k = 1; k <= unknowns; ++k)
        A[static_cast<size_t>(row)][static_cast<size_t>(k - 1)] =
            weighted_moment(lo, hi, config.d_B, pc, poly<real>::monomial(k, real(1)), a);
      b[static_cast<size_t>(row)] = -weighted_moment(lo, hi, config.d_B, pc, fixed, a);
    }
    vecr x = solve_dense(A, b);
    poly<real> q = fixed;
    for (int k = 1; k <= unknowns; ++k)
      q = q + poly<real>::monomial(k, x[static_cast<size_t>(k - 1)]);
    return q;
  }

  // Ricci-flat / steady: degree ell-1 in the all-positive case, ell-2 in the
  // split-sign case, moments over the bounded gaps (all of them, or only the
  // negative ones).
  const int deg = (roots.kind == case_kind::type1) ? ell - 1 : ell - 2;
  poly<real> q = poly<real>::constant(q0);
  if (deg == 0) return q;
  const int gaps = deg;
  matrix<real> A(static_cast<size_t>(gaps), vecr(static_cast<size_t>(gaps)));
  vecr b(static_cast<size_t>(gaps));
  for (int row = 0; row < gaps; ++row) {
    const real& lo = roots.alpha[static_cast<size_t>(row)];
    const real& hi = roots.alpha[static_cast<size_t>(row) + 1];
    for (int k = 1; k <= deg; ++k)
      A[static_cast<size_t>(row)][static_cast<size_t>(k - 1)] =
          weighted_moment(lo, hi, config.d_B, pc, poly<real>::monomial(k, real(1)), a);
    b[static_cast<size_t>(row)] = -q0 * weighted_moment(lo, hi, config.d_B, pc,
                                                        poly<real>::constant(real(1)), a);
  }
  vecr x = solve_dense(A, b);
  for (int k = 1; k <= deg; ++k) q = q + poly<real>::monomial(k, x[static_cast<size_t>(k - 1)]);
  return q;
}

// Damped Newton with a central finite-difference Jacobian.  Returns true on
// convergence of the max-norm residual below tol.
struct newton_problem {
  std::function<vecr(const vecr&)> residual;
  std::function<bool(const vecr&)> admissible;
};

bool newton_solve(const newton_problem& prob, vecr& x, const real& tol, int max_iter,
                  real* final_norm) {
  const size_t n = x.size();
  vecr fx = prob.residual(x);
  real norm = max_norm(fx);
  for (int iter = 0; iter < max_iter && norm > tol; ++iter) {
    matrix<real> J(n, vecr(n));
    for (size_t k = 0; k < n; ++k) {
      real h = (real(1) + abs(x[k])) / real(1000000000000LL);
      vecr xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      vecr fp = prob.residual(xp);
      vecr fm = prob.residual(xm);
      for (size_t r = 0; r < n; ++r) J[r][k] = (fp[r] - fm[r]) / (2 * h);
    }
    vecr step = solve_dense(J, fx);
    real lam{1};
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      vecr trial(n);
      for (size_t k = 0; k < n; ++k) trial[k] = x[k] - lam * step[k];
      if (prob.admissible(trial)) {
        vecr ft = prob.residual(trial);
        real tn = max_norm(ft);
        if (tn < norm) {
          x = trial;
          fx = ft;
          norm = tn;
          accepted = true;
          break;
        }
      }
      lam /= 2;
    }
    if (!accepted) break;
  }
  if (final_norm) *final_norm = norm;
  return norm <= tol;
}

// Common post-solve assembly: profiles, partial degrees, frame data, growth
// exponents, and the closed-form degree identity cross-check.
soliton_model assemble(const ansatz_config& config, const roots_r& roots,
                       std::optional<roots_q> roots_x, const poly<real>& q,
                       std::optional<poly<rat>> q_x, const real& a, bool experimental,
                       std::string notes) {
  roots.validate();
  soliton_model m;
  m.config = config;
  m.alphas = roots;
  m.alphas_x = std::move(roots_x);
  m.a = a;
  m.experimental = experimental;
  m.notes = std::move(notes);

  if (m.alphas_x && q_x && config.cls == soliton_class::cy && a == 0) {
    m.profiles = build_profiles(*q_x, *m.alphas_x, config);
  } else {
    m.profiles = build_profiles(q, roots, config, a);
  }

  const int ell = roots.ell();
  for (int j = 0; j < ell; ++j) m.deltas.push_back(partial_degree(q, roots, j));
  m.delta_targets = signed_targets(config);
  m.v_frame = v_basis(q, roots);
  m.k1_coeffs = k1_coefficients(q, roots);
  m.kell_coeffs = kell_coefficients(q, roots);
  m.beta = m.profiles.beta;
  m.dist_exponent = real(ell + 1 - m.beta) / 2;
  const int n = config.total_dim();
  if (config.kind == case_kind::type1)
    m.vol_exponent = real(2 * n) / real(ell + 1 - m.beta);
  else
    m.vol_exponent = real(4 * n - 2) / real(ell + 1 - m.beta);

  degree_pair<real> tot = total_degree(q, roots);
  m.degree_identity_residual = abs(tot.direct - tot.closed);
  real scale = abs(tot.closed);
  if (scale < 1) scale = 1;
  if (m.degree_identity_residual > scale / real(100000000)) {
    throw forge_error(errc::internal,
                      "assemble: partial degree sum disagrees with the closed form: " +
                          real_to_decimal(tot.direct) + " vs " + real_to_decimal(tot.closed));
  }
  return m;
}

void check_targets(const soliton_model& m, const real& tol, const char* where) {
  for (size_t j = 0; j < m.deltas.size(); ++j) {
    real scale = abs(m.delta_targets[j]);
    if (scale < 1) scale = 1;
    if (abs(m.deltas[j] - m.delta_targets[j]) > tol * scale) {
      std::ostringstream os;
      os << where << ": partial degree " << (j + 1) << " missed its target: "
         << real_to_decimal(m.deltas[j]) << " vs " << real_to_decimal(m.delta_targets[j]);
      throw forge_error(errc::internal, os.str());
    }
  }
}

// Open feasibility range for the first twist in the rank-two all-positive
// families (Ricci-flat and steady share it; the endpoint limits do not
// depend on the rate weight).
std::pair<rat, rat> rank2_type1_range(const ansatz_config& config) {
  return {rat(config.i_B, config.d[0] + config.d[1] + 2), rat(config.i_B, config.d[0] + 1)};
}

[[noreturn]] void infeasible_range(const char* family, const rat& target, const rat& lo,
                                   const rat& hi) {
  std::ostringstream os;
  os << family << ": first twist " << rat_to_string(target)
     << " lies outside the open feasibility range (" << rat_to_string(lo) << ", "
     << rat_to_string(hi) << ")";
  throw forge_error(errc::infeasible, os.str());
}

// Swap the first two root blocks of a configuration.  The closed-form rank-2
// and rank-3 solvers fix which root carries the larger twist; a caller may
// present the summands in either order.
ansatz_config swap_first_two(const ansatz_config& config) {
  ansatz_config c = config;
  std::swap(c.d[0], c.d[1]);
  std::swap(c.m[0], c.m[1]);
  return c;
}

}  // namespace

rat type1_cy_partial_degree(const ansatz_config& config, const rat& alpha) {
  if (config.kind != case_kind::type1 || config.cls != soliton_class::cy || config.ell != 2)
    throw forge_error(errc::domain_data, "type1_cy_partial_degree: rank-two Ricci-flat only");
  if (!(alpha > 1))
    throw forge_error(errc::domain_data, "type1_cy_partial_degree: root ratio must exceed 1");
  roots_q roots{case_kind::type1, {rat(1), alpha}, config.d};
  poly<rat> q = build_q_cy_type1(roots, config);
  return partial_degree(q, roots, 0);
}

soliton_model solve_type1_cy(const ansatz_config& config) {
  config.validate();
  if (config.kind != case_kind::type1 || config.cls != soliton_class::cy)
    throw forge_error(errc::domain_data, "solve_type1_cy: wrong case or class");

  if (config.ell == 1) {
    // The root is a pure normalization: the single partial degree equals
    // i_B / (d_1 + 1) for every root, and the twist budget pins the target
    // to the same value.
    roots_q roots{case_kind::type1, {rat(1)}, config.d};
    poly<rat> q = build_q_cy_type1(roots, config);
    return assemble(config, to_real(roots), roots, to_real(q), q, real(0), false,
                    "rank one, root normalized to 1");
  }
  if (config.ell != 2)
    throw forge_error(errc::domain_data, "solve_type1_cy: closed solver covers rank <= 2");

  auto [range_lo, range_hi] = rank2_type1_range(config);
  rat target(config.m[0]);
  if (!(target > range_lo && target < range_hi))
    infeasible_range("solve_type1_cy", target, range_lo, range_hi);

  // The first partial degree increases from the lower range limit (roots
  // colliding) to the upper one (top root escaping), so bracket and bisect
  // over dyadic rationals; every evaluation is exact.
  rat lo(1025, 1024);
  int guard = 0;
  while (type1_cy_partial_degree(config, lo) >= target && guard++ < 60)
    lo = 1 + (lo - 1) / 4;
  if (guard > 60)
    throw forge_error(errc::bracketing, "solve_type1_cy: no lower bracket near the collision end");
  rat hi(2);
  guard = 0;
  while (type1_cy_partial_degree(config, hi) <= target && guard++ < 60) hi = hi * 2;
  if (guard > 60)
    throw forge_error(errc::bracketing, "solve_type1_cy: no upper bracket toward large roots");

  const rat tol(1, 1000000000000LL);
  rat mid = (lo + hi) / 2;
  for (int iter = 0; iter < 200; ++iter) {
    mid = (lo + hi) / 2;
    rat diff = type1_cy_partial_degree(config, mid) - target;
    if (abs(diff) <= tol) break;
    if (diff < 0)
      lo = mid;
    else
      hi = mid;
  }
  if (abs(type1_cy_partial_degree(config, mid) - target) > tol)
    throw forge_error(errc::bracketing, "solve_type1_cy: bisection failed to reach tolerance");

  roots_q roots{case_kind::type1, {rat(1), mid}, config.d};
  poly<rat> q = build_q_cy_type1(roots, config);
  soliton_model m = assemble(config, to_real(roots), roots, to_real(q), q, real(0), false,
                             "rank two, exact dyadic bisection in the top root");
  check_targets(m, real(1) / real(10000000000LL), "solve_type1_cy");
  return m;
}

soliton_model solve_type2_rank2(const ansatz_config& config, const real& a) {
  ansatz_config cfg = config;
  cfg.validate();
  if (cfg.kind != case_kind::type2 || cfg.ell != 2)
    throw forge_error(errc::domain_data, "solve_type2_rank2: split-sign rank two only");
  if (cfg.cls == soliton_class::cy && !(a == 0))
    throw forge_error(errc::domain_data, "solve_type2_rank2: Ricci-flat class has rate zero");
  if (cfg.cls == soliton_class::steady && !(a > 0))
    throw forge_error(errc::domain_data, "solve_type2_rank2: steady class needs a positive rate");
  if (cfg.cls != soliton_class::cy && cfg.cls != soliton_class::steady)
    throw forge_error(errc::domain_data, "solve_type2_rank2: class not covered");

  // The positive root relative to the negative root at -1 has the closed
  // form (d_1 + 1) m_1 / m_2, independent of the rate.
  rat alpha(static_cast<long>(cfg.d[0] + 1) * cfg.m[0], cfg.m[1]);
  roots_q roots{case_kind::type2, {rat(-1), alpha}, cfg.d};
  roots_r rr = to_real(roots);

  soliton_model m = [&]() {
    if (cfg.cls == soliton_class::cy) {
      poly<rat> q = build_q_cy_type2(roots, cfg);
      return assemble(cfg, rr, roots, to_real(q), q, real(0), false,
                      "rank two split-sign, closed-form root ratio");
    }
    poly<real> q = build_q_steady(rr, cfg, a);
    return assemble(cfg, rr, roots, q, std::nullopt, a, false,
                    "rank two split-sign steady, closed-form root ratio");
  }();
  check_targets(m, real(1) / real(10000000000LL), "solve_type2_rank2");
  return m;
}

soliton_model solve_type2_rank3(const ansatz_config& config, const real& a) {
  ansatz_config cfg = config;
  std::string relabel_note;
  if (cfg.ell == 3 && cfg.m.size() == 3 && cfg.m[0] > cfg.m[1]) {
    cfg = swap_first_two(cfg);
    relabel_note = "; first two summands swapped so the inner root carries the smaller twist";
  }
  cfg.validate();
  if (cfg.kind != case_kind::type2 || cfg.ell != 3)
    throw forge_error(errc::domain_data, "solve_type2_rank3: split-sign rank three only");
  if (cfg.m[0] == cfg.m[1])
    throw forge_error(errc::infeasible,
                      "solve_type2_rank3: equal twists on the two negative roots collide them");
  if (cfg.cls == soliton_class::cy && !(a == 0))
    throw forge_error(errc::domain_data, "solve_type2_rank3: Ricci-flat class has rate zero");
  if (cfg.cls == soliton_class::steady && !(a > 0))
    throw forge_error(errc::domain_data, "solve_type2_rank3: steady class needs a positive rate");
  if (cfg.cls != soliton_class::cy && cfg.cls != soliton_class::steady)
    throw forge_error(errc::domain_data, "solve_type2_rank3: class not covered");

  const std::vector<real> targets = signed_targets(cfg);
  auto roots_at = [&](const vecr& x) {
    return roots_r{case_kind::type2, {x[0], real(-1), x[1]}, cfg.d};
  };

  newton_problem prob;
  prob.admissible = [](const vecr& x) {
    return x[0] < real(-1) - real(1) / real(1000000) && x[1] > real(1) / real(1000000);
  };
  prob.residual = [&](const vecr& x) {
    roots_r rr = roots_at(x);
    poly<real> q = defining_polynomial_unchecked(rr, cfg, a);
    return vecr{partial_degree(q, rr, 0) - targets[0], partial_degree(q, rr, 2) - targets[2]};
  };

  // Deterministic seed grid, log-spaced on both axes; keep the best.
  vecr best;
  real best_norm{0};
  bool have_best = false;
  for (int i = 0; i < 15; ++i) {
    const real s1 = real(105) / 100 * pow(real(30) / (real(105) / 100), real(i) / 14);
    for (int k = 0; k < 15; ++k) {
      const real s3 = real(5) / 100 * pow(real(30) / (real(5) / 100), real(k) / 14);
      vecr x{-s1, s3};
      real norm = max_norm(prob.residual(x));
      if (!have_best || norm < best_norm) {
        best = x;
        best_norm = norm;
        have_best = true;
      }
    }
  }

  vecr x = best;
  real final_norm{0};
  const real tol = real(1) / real(1000000000000LL);
  if (!newton_solve(prob, x, tol, 100, &final_norm)) {
    throw forge_error(errc::bracketing, "solve_type2_rank3: Newton stalled at residual " +
                                            real_to_decimal(final_norm));
  }

  roots_r rr = roots_at(x);
  poly<real> q = defining_polynomial_unchecked(rr, cfg, a);
  require_alternation(q, rr, "solve_type2_rank3");
  soliton_model m =
      assemble(cfg, rr, std::nullopt, q, std::nullopt, a, false,
               std::string("rank three split-sign, damped Newton on the outer roots") +
                   relabel_note);
  check_targets(m, real(1) / real(10000000000LL), "solve_type2_rank3");
  return m;
}

soliton_model solve_steady(const ansatz_config& config, const real& a) {
  config.validate();
  if (config.cls != soliton_class::steady)
    throw forge_error(errc::domain_data, "solve_steady: wrong class");
  if (!(a > 0)) throw forge_error(errc::domain_data, "solve_steady: rate must be positive");

  if (config.kind == case_kind::type2) {
    if (config.ell == 2) return solve_type2_rank2(config, a);
    if (config.ell == 3) return solve_type2_rank3(config, a);
    throw forge_error(errc::domain_data, "solve_steady: split-sign closed solvers cover rank <= 3");
  }

  if (config.ell == 1) {
    roots_r roots{case_kind::type1, {real(1)}, config.d};
    poly<real> q = build_q_steady(roots, config, a);
    return assemble(config, roots, std::nullopt, q, std::nullopt, a, false,
                    "rank one steady, root normalized to 1");
  }
  if (config.ell != 2)
    throw forge_error(errc::domain_data, "solve_steady: closed solver covers rank <= 2");

  auto [range_lo, range_hi] = rank2_type1_range(config);
  rat target_x(config.m[0]);
  if (!(target_x > range_lo && target_x < range_hi))
    infeasible_range("solve_steady", target_x, range_lo, range_hi);
  const real target = to_real(target_x);

  auto delta1 = [&](const real& alpha) {
    roots_r roots{case_kind::type1, {real(1), alpha}, config.d};
    poly<real> q = defining_polynomial_unchecked(roots, config, a);
    return partial_degree(q, roots, 0);
  };

  real lo = 1 + real(1) / 1024;
  int guard = 0;
  while (delta1(lo) >= target && guard++ < 60) lo = 1 + (lo - 1) / 4;
  if (guard > 60)
    throw forge_error(errc::bracketing, "solve_steady: no lower bracket near the collision end");
  real hi{2};
  guard = 0;
  while (delta1(hi) <= target && guard++ < 60) hi = hi * 2;
  if (guard > 60)
    throw forge_error(errc::bracketing, "solve_steady: no upper bracket toward large roots");

  const real tol = real(1) / real(1000000000000LL);
  real mid = (lo + hi) / 2;
  for (int iter = 0; iter < 400; ++iter) {
    mid = (lo + hi) / 2;
    real diff = delta1(mid) - target;
    if (abs(diff) <= tol) break;
    if (diff < 0)
      lo = mid;
    else
      hi = mid;
  }
  if (abs(delta1(mid) - target) > tol)
    throw forge_error(errc::bracketing, "solve_steady: bisection failed to reach tolerance");

  roots_r roots{case_kind::type1, {real(1), mid}, config.d};
  poly<real> q = build_q_steady(roots, config, a);
  soliton_model m = assemble(config, roots, std::nullopt, q, std::nullopt, a, false,
                             "rank two steady, bisection in the top root");
  check_targets(m, real(1) / real(10000000000LL), "solve_steady");
  return m;
}

real shrinker_rate_mismatch(const ansatz_config& config, const real& alpha, const real& a) {
  if (!(a < 0)) throw forge_error(errc::domain_data, "shrinker_rate_mismatch: rate must be negative");
  const long b = config.twist_defect();
  if (!(alpha * alpha * real(b) > 1))
    throw forge_error(errc::domain_data, "shrinker_rate_mismatch: root ratio below the collision point");
  const real x1 = 1 / alpha;
  const real x2 = real(b) * alpha;
  const poly<real> one = poly<real>::constant(real(1));
  // q = -t^2 + q_1 t - i_B; the interior moment and the decay condition each
  // force a value of q_1, and a common rate makes them agree.
  poly<real> even = poly<real>::monomial(2, real(1)) + poly<real>::constant(real(config.i_B));
  poly<real> lin = poly<real>::monomial(1, real(1));
  const real q1_interior = weighted_moment(x1, x2, config.d_B, one, even, a) /
                           weighted_moment(x1, x2, config.d_B, one, lin, a);
  const real q1_tail =
      tail_moment(x2, config.d_B, even, a) / tail_moment(x2, config.d_B, lin, a);
  return q1_interior - q1_tail;
}

namespace {

// Scan the rate axis for mismatch roots at a fixed root ratio and polish
// each sign change by bisection.  Rates are negative; the grid is
// log-uniform in |a| from 1e-3 to 1e3.
std::vector<real> shrinker_rate_roots(const ansatz_config& config, const real& alpha) {
  const int grid = 48;
  std::vector<real> rates, values;
  for (int k = 0; k <= grid; ++k) {
    const real mag = pow(real(10), real(-3) + real(6) * real(k) / real(grid));
    rates.push_back(-mag);
    values.push_back(shrinker_rate_mismatch(config, alpha, -mag));
  }
  std::vector<real> roots;
  // The mismatch is evaluated through closed-form antiderivatives, so it is
  // accurate to rounding; polish well past the 1e-10 certification level
  // because the boundary residuals downstream amplify it by the condition
  // number of the profile construction.
  const real tol = real(1) / pow(real(10), 22);
  for (int k = 0; k < grid; ++k) {
    if (values[static_cast<size_t>(k)] == 0) {
      roots.push_back(rates[static_cast<size_t>(k)]);
      continue;
    }
    if (values[static_cast<size_t>(k)] * values[static_cast<size_t>(k) + 1] < 0) {
      real lo = rates[static_cast<size_t>(k)], hi = rates[static_cast<size_t>(k) + 1];
      real flo = values[static_cast<size_t>(k)];
      real mid = (lo + hi) / 2;
      for (int iter = 0; iter < 240; ++iter) {
        mid = (lo + hi) / 2;
        real fm = shrinker_rate_mismatch(config, alpha, mid);
        if (abs(fm) <= tol) break;
        if (fm * flo < 0)
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back(mid);
    }
  }
  if (values.back() == 0) roots.push_back(rates.back());
  return roots;
}

}  // namespace

real shrinker_partial_degree(const ansatz_config& config, const real& alpha, real* rate_out,
                             std::vector<real>* rate_roots_out) {
  std::vector<real> roots = shrinker_rate_roots(config, alpha);
  if (roots.empty()) {
    throw forge_error(errc::bracketing,
                      "shrinker_partial_degree: no rate root at ratio " + real_to_decimal(alpha));
  }
  // Several rates can satisfy the decay condition; take the slowest decay
  // (smallest |a|) and report the full list for inspection.
  real a = roots.front();
  for (const real& r : roots)
    if (abs(r) < abs(a)) a = r;
  if (rate_out) *rate_out = a;
  if (rate_roots_out) *rate_roots_out = roots;

  const long b = config.twist_defect();
  roots_r rr{case_kind::type1, {1 / alpha, real(b) * alpha}, config.d};
  poly<real> q = defining_polynomial_unchecked(rr, config, a);
  return partial_degree(q, rr, 0);
}

soliton_model solve_shrinker(const ansatz_config& config) {
  ansatz_config cfg = config;
  std::string relabel_note;
  if (cfg.ell == 2 && cfg.m.size() == 2 && cfg.m[0] < cfg.m[1]) {
    cfg = swap_first_two(cfg);
    relabel_note = "; summands swapped so the inner root carries the larger twist";
  }
  cfg.validate();
  if (cfg.cls != soliton_class::shrinking)
    throw forge_error(errc::domain_data, "solve_shrinker: wrong class");
  if (cfg.kind != case_kind::type1 || cfg.ell != 2 || cfg.d[0] != 0 || cfg.d[1] != 0)
    throw forge_error(errc::domain_data,
                      "solve_shrinker: closed solver covers rank two line summands only");
  const long b = cfg.twist_defect();
  if (cfg.m[0] == cfg.m[1])
    throw forge_error(errc::infeasible, "solve_shrinker: the twists must differ");
  rat target_x(cfg.m[0]);
  rat range_lo(cfg.i_B - b, 2), range_hi(cfg.i_B - b, 1);
  if (!(target_x > range_lo && target_x < range_hi))
    infeasible_range("solve_shrinker", target_x, range_lo, range_hi);
  const real target = to_real(target_x);

  auto delta1 = [&](const real& alpha) { return shrinker_partial_degree(cfg, alpha, nullptr, nullptr); };

  // The first partial degree climbs from (i_B - b)/2 at the collision point
  // toward i_B - b for large ratios.
  real lo = sqrt((real(1) + real(1) / 10000) / real(b));
  int guard = 0;
  while (delta1(lo) >= target && guard++ < 40)
    lo = sqrt((real(1) + (lo * lo * real(b) - 1) / 4) / real(b));
  if (guard > 40)
    throw forge_error(errc::bracketing, "solve_shrinker: no lower bracket near the collision end");
  real hi = 2 * lo;
  if (hi < 2) hi = 2;
  guard = 0;
  while (delta1(hi) <= target && guard++ < 60) hi = hi * 2;
  if (guard > 60)
    throw forge_error(errc::bracketing, "solve_shrinker: no upper bracket toward large ratios");

  const real tol = real(1) / real(10000000000LL);
  real mid = (lo + hi) / 2;
  for (int iter = 0; iter < 240; ++iter) {
    mid = (lo + hi) / 2;
    real diff = delta1(mid) - target;
    if (abs(diff) <= tol) break;
    if (diff < 0)
      lo = mid;
    else
      hi = mid;
  }
  if (abs(delta1(mid) - target) > tol)
    throw forge_error(errc::bracketing, "solve_shrinker: bisection failed to reach tolerance");

  real rate{0};
  std::vector<real> rate_roots;
  shrinker_partial_degree(cfg, mid, &rate, &rate_roots);
  roots_r rr{case_kind::type1, {1 / mid, real(b) * mid}, cfg.d};
  poly<real> q = build_q_shrink_expand(rr, cfg, rate);
  soliton_model m = assemble(cfg, rr, std::nullopt, q, std::nullopt, rate, false,
                             std::string("rank two shrinker, nested bisection in rate and ratio") +
                                 relabel_note);
  m.inner_rate_roots = rate_roots;
  m.rate_residual = abs(shrinker_rate_mismatch(cfg, mid, rate));
  check_targets(m, real(1) / real(100000000), "solve_shrinker");
  return m;
}

real expander_partial_degree(const ansatz_config& config, const real& alpha, const real& a) {
  if (!(a > 0)) throw forge_error(errc::domain_data, "expander_partial_degree: rate must be positive");
  const long b = config.twist_defect();
  if (!(alpha * alpha * real(b) > 1))
    throw forge_error(errc::domain_data, "expander_partial_degree: root ratio below the collision point");
  roots_r rr{case_kind::type1, {1 / alpha, real(b) * alpha}, config.d};
  poly<real> q = defining_polynomial_unchecked(rr, config, a);
  return partial_degree(q, rr, 0);
}

soliton_model solve_expander(const ansatz_config& config, const real& a) {
  ansatz_config cfg = config;
  std::string relabel_note;
  if (cfg.ell == 2 && cfg.m.size() == 2 && cfg.m[0] < cfg.m[1]) {
    cfg = swap_first_two(cfg);
    relabel_note = "; summands swapped so the inner root carries the larger twist";
  }
  cfg.validate();
  if (cfg.cls != soliton_class::expanding)
    throw forge_error(errc::domain_data, "solve_expander: wrong class");
  if (!(a > 0)) throw forge_error(errc::domain_data, "solve_expander: rate must be positive");
  if (cfg.kind != case_kind::type1 || cfg.ell != 2 || cfg.d[0] != 0 || cfg.d[1] != 0)
    throw forge_error(errc::domain_data,
                      "solve_expander: closed solver covers rank two line summands only");
  const long b = cfg.twist_defect();
  if (cfg.m[0] == cfg.m[1])
    throw forge_error(errc::infeasible, "solve_expander: the twists must differ");
  rat target_x(cfg.m[0]);
  rat range_lo(cfg.i_B + b, 2), range_hi(cfg.i_B + b, 1);
  if (!(target_x > range_lo && target_x < range_hi))
    infeasible_range("solve_expander", target_x, range_lo, range_hi);
  const real target = to_real(target_x);

  auto delta1 = [&](const real& alpha) { return expander_partial_degree(cfg, alpha, a); };

  real lo = sqrt((real(1) + real(1) / 10000) / real(b));
  int guard = 0;
  while (delta1(lo) >= target && guard++ < 40)
    lo = sqrt((real(1) + (lo * lo * real(b) - 1) / 4) / real(b));
  if (guard > 40)
    throw forge_error(errc::bracketing, "solve_expander: no lower bracket near the collision end");
  real hi = 2 * lo;
  if (hi < 2) hi = 2;
  guard = 0;
  while (delta1(hi) <= target && guard++ < 60) hi = hi * 2;
  if (guard > 60)
    throw forge_error(errc::bracketing, "solve_expander: no upper bracket toward large ratios");

  const real tol = real(1) / real(10000000000LL);
  real mid = (lo + hi) / 2;
  for (int iter = 0; iter < 240; ++iter) {
    mid = (lo + hi) / 2;
    real diff = delta1(mid) - target;
    if (abs(diff) <= tol) break;
    if (diff < 0)
      lo = mid;
    else
      hi = mid;
  }
  if (abs(delta1(mid) - target) > tol)
    throw forge_error(errc::bracketing, "solve_expander: bisection failed to reach tolerance");

  roots_r rr{case_kind::type1, {1 / mid, real(b) * mid}, cfg.d};
  poly<real> q = build_q_shrink_expand(rr, cfg, a);
  soliton_model m = assemble(cfg, rr, std::nullopt, q, std::nullopt, a, false,
                             std::string("rank two expander, bisection in the root ratio") +
                                 relabel_note);
  check_targets(m, real(1) / real(100000000), "solve_expander");
  return m;
}

soliton_model solve_general(const ansatz_config& config, const real& a, bool experimental_ok) {
  config.validate();
  if (!experimental_ok) {
    throw forge_error(errc::domain_data,
                      "solve_general: outside the proved closed-form regimes; opt in to the "
                      "experimental solver to attempt it");
  }
  const int ell = config.ell;
  const bool type1 = (config.kind == case_kind::type1);
  const bool shrinking = (config.cls == soliton_class::shrinking);
  const bool expanding = (config.cls == soliton_class::expanding);
  const std::vector<real> targets = signed_targets(config);

  // Unknown packing: normalized families drop one root, the shrinking class
  // appends the rate.
  auto unpack = [&](const vecr& x) {
    std::vector<real> alpha;
    real rate = a;
    if (shrinking || expanding) {
      alpha.assign(x.begin(), shrinking ? x.end() - 1 : x.end());
      if (shrinking) rate = x.back();
    } else if (type1) {
      alpha.push_back(real(1));
      alpha.insert(alpha.end(), x.begin(), x.end());
    } else {
      alpha.assign(x.begin(), x.end() - 1);
      alpha.push_back(real(-1));
      alpha.push_back(x.back());
    }
    return std::make_pair(roots_r{config.kind, alpha, config.d}, rate);
  };

  auto ordered = [&](const roots_r& rr) {
    for (size_t j = 0; j + 1 < rr.alpha.size(); ++j)
      if (!(rr.alpha[j + 1] - rr.alpha[j] > real(1) / real(1000000))) return false;
    if (type1 && !(rr.alpha.front() > 0)) return false;
    if (!type1) {
      if (!(rr.alpha[static_cast<size_t>(ell) - 2] < 0)) return false;
      if (!(rr.alpha.back() > 0)) return false;
    }
    return true;
  };

  newton_problem prob;
  prob.admissible = [&](const vecr& x) {
    auto [rr, rate] = unpack(x);
    if (!ordered(rr)) return false;
    if (shrinking && !(rate < -real(1) / real(1000000))) return false;
    return true;
  };
  prob.residual = [&](const vecr& x) {
    auto [rr, rate] = unpack(x);
    poly<real> q = defining_polynomial_unchecked(rr, config, rate);
    vecr res;
    if (shrinking || expanding) {
      for (int j = 0; j < ell; ++j) res.push_back(partial_degree(q, rr, j) - targets[static_cast<size_t>(j)]);
      if (shrinking) {
        // Decay condition at the top end, normalized by the leading tail mass.
        poly<real> pc = rr.p_c();
        real t_num = tail_moment(rr.alpha.back(), config.d_B, pc * q, rate);
        real t_den = abs(tail_moment(rr.alpha.back(), config.d_B,
                                     pc * poly<real>::monomial(ell, real(1)), rate));
        if (t_den < 1) t_den = 1;
        res.push_back(t_num / t_den);
      }
    } else if (type1) {
      for (int j = 1; j < ell; ++j) res.push_back(partial_degree(q, rr, j) - targets[static_cast<size_t>(j)]);
    } else {
      for (int j = 0; j < ell - 2; ++j)
        res.push_back(partial_degree(q, rr, j) - targets[static_cast<size_t>(j)]);
      res.push_back(partial_degree(q, rr, ell - 1) - targets[static_cast<size_t>(ell) - 1]);
    }
    return res;
  };

  // Geometric seed ladders.
  std::vector<vecr> seeds;
  const std::vector<real> ratios{real(13) / 10, real(2), real(4)};
  if (shrinking || expanding) {
    const long b = config.twist_defect();
    const std::vector<real> rates = shrinking
                                        ? std::vector<real>{-real(1) / 4, real(-1), real(-4)}
                                        : std::vector<real>{a};
    for (const real& rho : ratios) {
      // Scale the ladder so the root product matches the defect.
      real logc = (log(real(b)) - real(ell * (ell - 1)) / 2 * log(rho)) / real(ell);
      real c = exp(logc);
      vecr alpha;
      for (int j = 0; j < ell; ++j) alpha.push_back(c * pow(rho, real(j)));
      for (const real& r : rates) {
        vecr x = alpha;
        if (shrinking) x.push_back(r);
        seeds.push_back(x);
      }
    }
  } else if (type1) {
    for (const real& rho : ratios) {
      vecr x;
      for (int j = 1; j < ell; ++j) x.push_back(pow(rho, real(j)));
      seeds.push_back(x);
    }
  } else {
    for (const real& rho : ratios) {
      for (const real& tau : {real(3) / 10, real(1), real(3), real(9)}) {
        vecr x;
        for (int j = ell - 2; j >= 1; --j) x.push_back(-pow(rho, real(j)));
        x.push_back(tau);
        seeds.push_back(x);
      }
    }
  }

  vecr best;
  real best_norm{0};
  bool have_best = false;
  for (const vecr& s : seeds) {
    if (!prob.admissible(s)) continue;
    real norm = max_norm(prob.residual(s));
    if (!have_best || norm < best_norm) {
      best = s;
      best_norm = norm;
      have_best = true;
    }
  }
  if (!have_best)
    throw forge_error(errc::bracketing, "solve_general: no admissible seed");

  vecr x = best;
  real final_norm{0};
  const real tol = real(1) / real(10000000000LL);
  if (!newton_solve(prob, x, tol, 120, &final_norm)) {
    throw forge_error(errc::bracketing,
                      "solve_general: Newton stalled at residual " + real_to_decimal(final_norm));
  }

  auto [rr, rate] = unpack(x);
  poly<real> q = defining_polynomial_unchecked(rr, config, rate);
  require_alternation(q, rr, "solve_general");
  soliton_model m = assemble(config, rr, std::nullopt, q, std::nullopt, rate, true,
                             "general-rank Newton outside the proved regimes");
  check_targets(m, real(1) / real(100000000), "solve_general");
  return m;
}

soliton_model solve_model(const ansatz_config& config, bool experimental_ok) {
  config.validate();
  switch (config.cls) {
    case soliton_class::cy:
      if (!(config.a == 0))
        throw forge_error(errc::domain_data, "solve_model: Ricci-flat class has rate zero");
      if (config.kind == case_kind::type1 && config.ell <= 2) return solve_type1_cy(config);
      if (config.kind == case_kind::type2 && config.ell == 2)
        return solve_type2_rank2(config, real(0));
      if (config.kind == case_kind::type2 && config.ell == 3)
        return solve_type2_rank3(config, real(0));
      return solve_general(config, real(0), experimental_ok);
    case soliton_class::steady:
      if ((config.kind == case_kind::type1 && config.ell <= 2) ||
          (config.kind == case_kind::type2 && config.ell <= 3))
        return solve_steady(config, config.a);
      return solve_general(config, config.a, experimental_ok);
    case soliton_class::shrinking:
      if (config.kind == case_kind::type1 && config.ell == 2 && config.d[0] == 0 &&
          config.d[1] == 0)
        return solve_shrinker(config);
      return solve_general(config, config.a, experimental_ok);
    case soliton_class::expanding:
      if (config.kind == case_kind::type1 && config.ell == 2 && config.d[0] == 0 &&
          config.d[1] == 0)
        return solve_expander(config, config.a);
      return solve_general(config, config.a, experimental_ok);
  }
  throw forge_error(errc::internal, "solve_model: unhandled class");
}

std::vector<sweep_row> sweep_alpha(const ansatz_config& config, const real& lo, const real& hi,
                                   int count) {
  config.validate();
  if (config.ell != 2)
    throw forge_error(errc::domain_data, "sweep_alpha: sweeps cover the one-parameter rank-two families");
  if (count < 1) throw forge_error(errc::domain_data, "sweep_alpha: need at least one point");
  std::vector<sweep_row> rows;
  for (int i = 0; i < count; ++i) {
    real alpha = (count == 1) ? lo : lo + (hi - lo) * real(i) / real(count - 1);
    sweep_row row;
    row.alpha = alpha;
    row.a = config.a;
    roots_r rr;
    poly<real> q;
    switch (config.cls) {
      case soliton_class::cy:
      case soliton_class::steady:
        if (config.kind == case_kind::type1)
          rr = roots_r{case_kind::type1, {real(1), alpha}, config.d};
        else
          rr = roots_r{case_kind::type2, {real(-1), alpha}, config.d};
        q = defining_polynomial_unchecked(rr, config, config.a);
        break;
      case soliton_class::shrinking: {
        real rate{0};
        shrinker_partial_degree(config, alpha, &rate, nullptr);
        row.a = rate;
        row.mismatch = abs(shrinker_rate_mismatch(config, alpha, rate));
        rr = roots_r{case_kind::type1,
                     {1 / alpha, real(config.twist_defect()) * alpha},
                     config.d};
        q = defining_polynomial_unchecked(rr, config, rate);
        break;
      }
      case soliton_class::expanding:
        rr = roots_r{case_kind::type1,
                     {1 / alpha, real(config.twist_defect()) * alpha},
                     config.d};
        q = defining_polynomial_unchecked(rr, config, config.a);
        break;
    }
    for (int j = 0; j < rr.ell(); ++j) row.deltas.push_back(partial_degree(q, rr, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace forge
