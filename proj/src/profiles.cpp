#include "forge/profiles.hpp"

#include "forge/exppoly.hpp"
#include "forge/linsolve.hpp"
#include "forge/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace forge {

namespace {

int sign_of(const rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
int sign_of(const real& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Expected sign of q at the j-th root (1-based). Both cases follow from the
// interval sign pattern of Theta together with the boundary slope relation.
int expected_q_sign(case_kind kind, int ell, int j1) {
  if (kind == case_kind::type1) return ((ell - j1) % 2 == 0) ? 1 : -1;
  if (j1 == ell) return 1;
  return ((ell - j1) % 2 == 0) ? -1 : 1;
}

template <typename T>
void check_alternation(const poly<T>& q, const root_tuple<T>& roots, const char* who) {
  const int ell = roots.ell();
  std::ostringstream bad;
  for (int j1 = 1; j1 <= ell; ++j1) {
    const T v = q(roots.alpha[j1 - 1]);
    const int want = expected_q_sign(roots.kind, ell, j1);
    if (sign_of(v) != want) {
      if (bad.tellp() > 0) bad << ", ";
      bad << "q(alpha_" << j1 << ") has sign " << sign_of(v) << " (want " << want << ")";
    }
  }
  if (bad.tellp() > 0) {
    throw forge_error(errc::construction, std::string(who) +
                          ": defining polynomial violates the root sign pattern: " + bad.str());
  }
}

template <typename T>
void check_degree(const poly<T>& q, int want, const char* who) {
  if (q.degree() != want) {
    throw forge_error(errc::construction,
                      std::string(who) + ": defining polynomial degenerated to degree " +
                          std::to_string(q.degree()) + " (want " + std::to_string(want) + ")");
  }
}

// Root index of a finite interval endpoint, or -1.
template <typename T>
int endpoint_root_index(const root_tuple<T>& roots, const T& value) {
  for (std::size_t k = 0; k < roots.alpha.size(); ++k)
    if (roots.alpha[k] == value) return static_cast<int>(k);
  return -1;
}

int endpoint_root_index_real(const roots_r& roots, const real& value) {
  real best_gap{-1};
  int best = -1;
  for (std::size_t k = 0; k < roots.alpha.size(); ++k) {
    const real gap = abs(roots.alpha[k] - value);
    if (best < 0 || gap < best_gap) {
      best = static_cast<int>(k);
      best_gap = gap;
    }
  }
  if (best >= 0 && best_gap <= real("1e-9") * (1 + abs(value))) return best;
  return -1;
}

// Opportunistic exact division of the profile numerator by p_c. Mandatory
// when the interval closure touches a repeated root and the rate is zero;
// with a nonzero rate the numerator is not polynomial in that sense and the
// evaluators fall back to the direct quotient plus one-sided boundary fits.
void deflate_exact(profile_rep& rep, const poly<rat>& pc) {
  if (pc.degree() <= 0) return;
  const poly<rat> num = rep.P_x + poly<rat>::constant(rep.c_x);
  auto dm = divmod(num, pc);
  if (dm.second.degree() < 0) {
    rep.theta_num_x = dm.first;
    rep.theta_num_r = to_real(dm.first);
  }
}

void deflate_real(profile_rep& rep, const poly<real>& pc) {
  if (pc.degree() <= 0) return;
  poly<real> num = rep.P;
  num = num + poly<real>::constant(rep.c);
  auto dm = divmod(num, pc);
  real num_scale{0};
  for (int i = 0; i <= num.degree(); ++i) num_scale = std::max(num_scale, real(abs(num.coeff(i))));
  real rem_scale{0};
  for (int i = 0; i <= dm.second.degree(); ++i) rem_scale = std::max(rem_scale, real(abs(dm.second.coeff(i))));
  if (rem_scale <= eps_floor() * 65536 * std::max(real{1}, num_scale)) rep.theta_num_r = dm.first;
}

template <typename T>
bool closure_meets_repeated_root(const root_tuple<T>& roots, int j0) {
  const auto iv = roots.coordinate_interval(j0);
  for (std::size_t k = 0; k < roots.alpha.size(); ++k) {
    if (roots.d[k] <= 0) continue;
    if (!iv.lo_unbounded && iv.lo == roots.alpha[k]) return true;
    if (!iv.hi_unbounded && iv.hi == roots.alpha[k]) return true;
  }
  return false;
}

// Shared evaluation core: value and first two derivatives of the numerator
// N(t) = P(t) + c e^{-a t} (the a = 0 branch treats c as a constant term).
struct numerator_jets {
  real n0, n1, n2;
};

numerator_jets numerator_at(const profile_rep& rep, const real& a, const real& t) {
  numerator_jets out;
  if (a == 0) {
    out.n0 = rep.P(t) + rep.c;
    out.n1 = rep.P.derivative()(t);
    out.n2 = rep.P.derivative(2)(t);
  } else {
    const real e = exp(-a * t);
    out.n0 = rep.P(t) + rep.c * e;
    out.n1 = rep.P.derivative()(t) - a * rep.c * e;
    out.n2 = rep.P.derivative(2)(t) + a * a * rep.c * e;
  }
  return out;
}

real int_pow(const real& t, int k) {
  real r{1};
  for (int i = 0; i < k; ++i) r *= t;
  return r;
}

}  // namespace

// ---- profile_set evaluators -------------------------------------------------

real profile_set::F_value(int j, const real& t) const {
  const auto& rep = F.at(j);
  const numerator_jets N = numerator_at(rep, a, t);
  return N.n0 / int_pow(t, d_B);
}

real profile_set::F_deriv(int j, const real& t) const {
  const auto& rep = F.at(j);
  const numerator_jets N = numerator_at(rep, a, t);
  return (N.n1 - d_B * N.n0 / t) / int_pow(t, d_B);
}

real profile_set::theta(int j, const real& t) const {
  const auto& rep = F.at(j);
  if (rep.theta_num_r) return (*rep.theta_num_r)(t) / int_pow(t, d_B);
  return F_value(j, t) / p_c(t);
}

real profile_set::theta_deriv(int j, const real& t) const {
  const auto& rep = F.at(j);
  if (rep.theta_num_r) {
    const poly<real>& nq = *rep.theta_num_r;
    return (nq.derivative()(t) - d_B * nq(t) / t) / int_pow(t, d_B);
  }
  const real f = F_value(j, t);
  const real fp = F_deriv(j, t);
  const real pc = p_c(t);
  return (fp * pc - f * p_c.derivative()(t)) / (pc * pc);
}

real profile_set::theta_deriv2(int j, const real& t) const {
  const auto& rep = F.at(j);
  if (rep.theta_num_r) {
    const poly<real>& nq = *rep.theta_num_r;
    const real n0 = nq(t);
    const real n1 = nq.derivative()(t);
    const real n2 = nq.derivative(2)(t);
    return (n2 - 2 * d_B * n1 / t + d_B * (d_B + 1) * n0 / (t * t)) / int_pow(t, d_B);
  }
  const numerator_jets N = numerator_at(rep, a, t);
  const real tp = int_pow(t, d_B);
  const real f = N.n0 / tp;
  const real fp = (N.n1 - d_B * N.n0 / t) / tp;
  const real fpp = (N.n2 - 2 * d_B * N.n1 / t + d_B * (d_B + 1) * N.n0 / (t * t)) / tp;
  const real pc = p_c(t);
  const real pc1 = p_c.derivative()(t);
  const real pc2 = p_c.derivative(2)(t);
  return fpp / pc - 2 * fp * pc1 / (pc * pc) - f * pc2 / (pc * pc) + 2 * f * pc1 * pc1 / (pc * pc * pc);
}

// ---- defining polynomial builders ------------------------------------------

poly<rat> build_q_cy_type1(const roots_q& roots, const ansatz_config& config) {
  config.validate();
  roots.validate();
  if (config.kind != case_kind::type1 || roots.kind != case_kind::type1)
    throw forge_error(errc::domain_data, "build_q_cy_type1: wrong case");
  if (config.cls != soliton_class::cy)
    throw forge_error(errc::domain_data, "build_q_cy_type1: wrong class");
  const int ell = roots.ell();
  const rat q0{config.q_zero()};

  poly<rat> q = poly<rat>::constant(q0);
  if (ell >= 2) {
    const poly<rat> pc = roots.p_c();
    matrix<rat> A(ell - 1, std::vector<rat>(ell - 1));
    std::vector<rat> b(ell - 1);
    for (int j = 1; j <= ell - 1; ++j) {
      const rat lo = roots.alpha[j - 1];
      const rat hi = roots.alpha[j];
      for (int k = 1; k <= ell - 1; ++k)
        A[j - 1][k - 1] = weighted_moment_exact(lo, hi, config.d_B, pc, poly<rat>::monomial(k, rat{1}));
      b[j - 1] = -q0 * weighted_moment_exact(lo, hi, config.d_B, pc, poly<rat>::constant(rat{1}));
    }
    const auto u = solve_dense(A, b);
    for (int k = 1; k <= ell - 1; ++k) q = q + poly<rat>::monomial(k, u[k - 1]);
  }
  check_degree(q, ell - 1, "build_q_cy_type1");
  check_alternation(q, roots, "build_q_cy_type1");
  return q;
}

poly<rat> build_q_cy_type2(const roots_q& roots, const ansatz_config& config) {
  config.validate();
  roots.validate();
  if (config.kind != case_kind::type2 || roots.kind != case_kind::type2)
    throw forge_error(errc::domain_data, "build_q_cy_type2: wrong case");
  if (config.cls != soliton_class::cy)
    throw forge_error(errc::domain_data, "build_q_cy_type2: wrong class");
  const int ell = roots.ell();
  const rat q0{config.q_zero()};

  poly<rat> q = poly<rat>::constant(q0);
  if (ell >= 3) {
    const poly<rat> pc = roots.p_c();
    matrix<rat> A(ell - 2, std::vector<rat>(ell - 2));
    std::vector<rat> b(ell - 2);
    for (int j = 1; j <= ell - 2; ++j) {
      const rat lo = roots.alpha[j - 1];
      const rat hi = roots.alpha[j];
      for (int k = 1; k <= ell - 2; ++k)
        A[j - 1][k - 1] = weighted_moment_exact(lo, hi, config.d_B, pc, poly<rat>::monomial(k, rat{1}));
      b[j - 1] = -q0 * weighted_moment_exact(lo, hi, config.d_B, pc, poly<rat>::constant(rat{1}));
    }
    const auto u = solve_dense(A, b);
    for (int k = 1; k <= ell - 2; ++k) q = q + poly<rat>::monomial(k, u[k - 1]);
  }
  check_degree(q, ell - 2, "build_q_cy_type2");
  check_alternation(q, roots, "build_q_cy_type2");
  return q;
}

poly<real> build_q_steady(const roots_r& roots, const ansatz_config& config, const real& a) {
  config.validate();
  roots.validate();
  if (config.cls != soliton_class::steady)
    throw forge_error(errc::domain_data, "build_q_steady: wrong class");
  if (config.kind != roots.kind) throw forge_error(errc::domain_data, "build_q_steady: case mismatch");
  if (!(a > 0)) throw forge_error(errc::domain_data, "build_q_steady: rate must be positive");
  const int ell = roots.ell();
  const int deg = (roots.kind == case_kind::type1) ? ell - 1 : ell - 2;
  const real q0{config.q_zero()};

  poly<real> q = poly<real>::constant(q0);
  if (deg >= 1) {
    const poly<real> pc = roots.p_c();
    matrix<real> A(deg, std::vector<real>(deg));
    std::vector<real> b(deg);
    for (int j = 1; j <= deg; ++j) {
      const real lo = roots.alpha[j - 1];
      const real hi = roots.alpha[j];
      for (int k = 1; k <= deg; ++k)
        A[j - 1][k - 1] = weighted_moment(lo, hi, config.d_B, pc, poly<real>::monomial(k, real{1}), a);
      b[j - 1] = -q0 * weighted_moment(lo, hi, config.d_B, pc, poly<real>::constant(real{1}), a);
    }
    const auto u = solve_dense(A, b);
    for (int k = 1; k <= deg; ++k) q = q + poly<real>::monomial(k, u[k - 1]);
  }
  check_degree(q, deg, "build_q_steady");
  check_alternation(q, roots, "build_q_steady");
  return q;
}

poly<real> build_q_shrink_expand(const roots_r& roots, const ansatz_config& config, const real& a) {
  config.validate();
  roots.validate();
  if (config.cls != soliton_class::shrinking && config.cls != soliton_class::expanding)
    throw forge_error(errc::domain_data, "build_q_shrink_expand: wrong class");
  if (config.kind != case_kind::type1 || roots.kind != case_kind::type1)
    throw forge_error(errc::domain_data, "build_q_shrink_expand: split-sign case is obstructed");
  if (config.cls == soliton_class::shrinking && !(a < 0))
    throw forge_error(errc::domain_data, "build_q_shrink_expand: shrinking rate must be negative");
  if (config.cls == soliton_class::expanding && !(a > 0))
    throw forge_error(errc::domain_data, "build_q_shrink_expand: expanding rate must be positive");
  const int ell = roots.ell();
  const real q0{config.q_zero()};
  const real qtop{config.q_top()};

  poly<real> fixed = poly<real>::monomial(ell, qtop) + poly<real>::constant(q0);
  poly<real> q = fixed;
  if (ell >= 2) {
    const poly<real> pc = roots.p_c();
    matrix<real> A(ell - 1, std::vector<real>(ell - 1));
    std::vector<real> b(ell - 1);
    for (int j = 1; j <= ell - 1; ++j) {
      const real lo = roots.alpha[j - 1];
      const real hi = roots.alpha[j];
      for (int k = 1; k <= ell - 1; ++k)
        A[j - 1][k - 1] = weighted_moment(lo, hi, config.d_B, pc, poly<real>::monomial(k, real{1}), a);
      b[j - 1] = -weighted_moment(lo, hi, config.d_B, pc, fixed, a);
    }
    const auto u = solve_dense(A, b);
    for (int k = 1; k <= ell - 1; ++k) q = q + poly<real>::monomial(k, u[k - 1]);
  }
  check_degree(q, ell, "build_q_shrink_expand");
  check_alternation(q, roots, "build_q_shrink_expand");
  return q;
}

// ---- profile assembly --------------------------------------------------------

profile_set build_profiles(const poly<rat>& q, const roots_q& roots, const ansatz_config& config) {
  config.validate();
  roots.validate();
  if (config.cls != soliton_class::cy)
    throw forge_error(errc::domain_data, "build_profiles: exact path requires the Ricci-flat class");
  const int ell = roots.ell();
  const poly<rat> pc = roots.p_c();
  const poly<rat> integrand = poly<rat>::monomial(config.d_B, rat{1}) * pc * q;
  const poly<rat> P = rat{2} * integrand.antiderivative();

  profile_set ps;
  ps.d_B = config.d_B;
  ps.a = 0;
  ps.q_top = config.q_top();
  ps.q_x = q;
  ps.q = to_real(q);
  ps.p_c_x = pc;
  ps.p_c = to_real(pc);

  const rat c_shared = -P(roots.alpha.front());
  const rat c_top = (roots.kind == case_kind::type2) ? -P(roots.alpha.back()) : c_shared;
  for (int j = 0; j < ell; ++j) {
    profile_rep rep;
    rep.exact = true;
    rep.P_x = P;
    rep.c_x = (roots.kind == case_kind::type2 && j == ell - 1) ? c_top : c_shared;
    rep.P = to_real(P);
    rep.c = to_real(rep.c_x);
    deflate_exact(rep, pc);
    if (!rep.theta_num_x && closure_meets_repeated_root(roots, j)) {
      throw forge_error(errc::construction,
                        "build_profiles: numerator fails exact division by the repeated-root factor on interval " +
                            std::to_string(j + 1));
    }
    ps.F.push_back(std::move(rep));
  }
  ps.beta = P.degree() - config.d_B - pc.degree();
  return ps;
}

profile_set build_profiles(const poly<real>& q, const roots_r& roots, const ansatz_config& config,
                           const real& a) {
  config.validate();
  roots.validate();
  const int ell = roots.ell();
  const poly<real> pc = roots.p_c();
  const poly<real> integrand = real{2} * (poly<real>::monomial(config.d_B, real{1}) * pc * q);

  profile_set ps;
  ps.d_B = config.d_B;
  ps.a = a;
  ps.q_top = config.q_top();
  ps.q = q;
  ps.p_c = pc;

  poly<real> P;
  if (a == 0) {
    P = integrand.antiderivative();
  } else {
    P = exp_antiderivative(integrand, a).P;
  }

  const bool shrink = (config.cls == soliton_class::shrinking);
  real c_shared{0};
  real c_top{0};
  if (!shrink) {
    if (a == 0) {
      c_shared = -P(roots.alpha.front());
      c_top = (roots.kind == case_kind::type2) ? -P(roots.alpha.back()) : c_shared;
    } else {
      c_shared = -P(roots.alpha.front()) * exp(a * roots.alpha.front());
      c_top = (roots.kind == case_kind::type2) ? -P(roots.alpha.back()) * exp(a * roots.alpha.back())
                                               : c_shared;
    }
  }

  for (int j = 0; j < ell; ++j) {
    profile_rep rep;
    rep.P = P;
    rep.c = (roots.kind == case_kind::type2 && j == ell - 1) ? c_top : c_shared;
    if (a == 0) deflate_real(rep, pc);
    ps.F.push_back(std::move(rep));
  }
  ps.beta = P.degree() - config.d_B - pc.degree();
  return ps;
}

// ---- certification -------------------------------------------------------------

namespace {

// Sample grid inside an interval; unbounded ends get a uniform near zone plus
// a logarithmic far zone out to 1e4 times the root scale.
std::vector<real> interval_grid(const interval<real>& iv, int n) {
  std::vector<real> pts;
  pts.reserve(n);
  if (!iv.lo_unbounded && !iv.hi_unbounded) {
    const real len = iv.hi - iv.lo;
    for (int i = 0; i < n; ++i) pts.push_back(iv.lo + len * (2 * i + 1) / (2 * n));
    return pts;
  }
  const bool below = iv.lo_unbounded;
  const real anchor = below ? iv.hi : iv.lo;
  const real span = std::max(real{1}, real(abs(anchor)));
  const int n_near = n / 2;
  const int n_far = n - n_near;
  for (int i = 1; i <= n_near; ++i) {
    const real off = 10 * span * i / n_near;
    pts.push_back(below ? real(anchor - off) : real(anchor + off));
  }
  const real lg = log(real{1000});
  for (int i = 1; i <= n_far; ++i) {
    const real off = 10 * span * exp(lg * i / n_far);
    pts.push_back(below ? real(anchor - off) : real(anchor + off));
  }
  return pts;
}

real locate_sign_change(const profile_set& ps, int j, int want, real good, real bad) {
  for (int it = 0; it < 120; ++it) {
    const real mid = (good + bad) / 2;
    if (want * ps.theta(j, mid) > 0)
      good = mid;
    else
      bad = mid;
  }
  return (good + bad) / 2;
}

// Cubic one-sided fit of Theta_j near a boundary root where the direct
// quotient is removable-singular: returns (value, slope) at the root.
std::pair<real, real> one_sided_jet(const profile_set& ps, int j, const real& at, int side) {
  const real h = real("1e-4") * std::max(real{1}, real(abs(at))) * side;
  rmatrix V(4, std::vector<real>(4));
  std::vector<real> y(4);
  for (int i = 0; i < 4; ++i) {
    const real s = h * (i + 1);
    real p{1};
    for (int k = 0; k < 4; ++k) {
      V[i][k] = p;
      p *= s;
    }
    y[i] = ps.theta(j, at + s);
  }
  const auto coef = solve_dense(V, y);
  return {coef[0], coef[1]};
}

void push_check(certification& cert, std::string name, bool pass, real measured, real tolerance,
                std::string detail = {}) {
  cert.checks.push_back({std::move(name), pass, std::move(measured), std::move(tolerance), std::move(detail)});
}

std::string fmt_real(const real& v) { return real_to_decimal(v, 6); }

}  // namespace

real numeric_growth_slope(const profile_set& ps, const roots_r& roots, int j) {
  const auto iv = roots.coordinate_interval(j);
  if (!iv.lo_unbounded && !iv.hi_unbounded)
    throw forge_error(errc::domain_data, "numeric_growth_slope: interval is bounded");
  const bool below = iv.lo_unbounded;
  const real anchor = below ? iv.hi : iv.lo;
  const real span = std::max(real{1}, real(abs(anchor)));
  const int K = 25;
  // Fit log|Theta| = beta log x + b + A/x on x in [10 span, 1e4 span], which
  // removes the leading finite-size correction of a rational tail.
  rmatrix AtA(3, std::vector<real>(3, real{0}));
  std::vector<real> Aty(3, real{0});
  const real lg = log(real{1000});
  for (int i = 0; i < K; ++i) {
    const real x = 10 * span * exp(lg * i / (K - 1));
    const real t = below ? -x : x;
    const real th = abs(ps.theta(j, t));
    const real row[3] = {log(x), real{1}, 1 / x};
    const real yv = log(th);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) AtA[r][c] += row[r] * row[c];
      Aty[r] += row[r] * yv;
    }
  }
  const auto sol = solve_dense(AtA, Aty);
  return sol[0];
}

std::string certification::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  measured=" << fmt_real(c.measured)
       << " tolerance=" << fmt_real(c.tolerance);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

certification certify_profiles(const profile_set& ps, const roots_r& roots,
                               const ansatz_config& config, const certify_options& opt) {
  certification cert;
  const int ell = roots.ell();
  const poly<real> q = ps.q;

  // 1. Interval sign pattern.
  for (int j = 0; j < ell; ++j) {
    const auto iv = roots.coordinate_interval(j);
    const int want = roots.interval_sign(j);
    const auto grid = interval_grid(iv, opt.positivity_points);
    real worst{0};
    bool first = true;
    bool ok = true;
    std::string detail;
    real prev_good{0};
    bool have_good = false;
    for (const auto& t : grid) {
      const real v = want * ps.theta(j, t);
      if (first || v < worst) worst = v;
      first = false;
      if (v <= 0 && ok) {
        ok = false;
        std::ostringstream os;
        os << "sign violation near t=" << fmt_real(t);
        if (have_good) {
          const real cross = locate_sign_change(ps, j, want, prev_good, t);
          os << ", crossing located at t=" << fmt_real(cross);
        }
        detail = os.str();
      }
      if (v > 0) {
        prev_good = t;
        have_good = true;
      }
    }
    push_check(cert, "interval sign " + std::to_string(j + 1), ok, worst, real{0}, detail);
  }

  // 2. Boundary pairs at every finite endpoint: Theta = 0 and
  //    (d_k + 1) Theta' = 2 q(alpha_k).
  for (int j = 0; j < ell; ++j) {
    const auto iv = roots.coordinate_interval(j);
    struct endpt {
      real at;
      int side;  // +1 when the interval lies to the right of the root
    };
    std::vector<endpt> endpoints;
    if (!iv.lo_unbounded) endpoints.push_back({iv.lo, +1});
    if (!iv.hi_unbounded) endpoints.push_back({iv.hi, -1});
    for (const auto& ep : endpoints) {
      const int k = endpoint_root_index_real(roots, ep.at);
      if (k < 0)
        throw forge_error(errc::internal, "certify_profiles: endpoint does not match a root");
      const real scale_v = std::max(real{1}, real(abs(q(ep.at))));
      real value, slope;
      std::string how;
      if (ps.F[j].theta_num_r || roots.d[k] == 0) {
        value = ps.theta(j, ep.at);
        slope = ps.theta_deriv(j, ep.at);
        how = ps.F[j].theta_num_r ? "deflated numerator" : "direct quotient";
      } else {
        const auto jet = one_sided_jet(ps, j, ep.at, ep.side);
        value = jet.first;
        slope = jet.second;
        how = "one-sided cubic fit";
      }
      const real target = 2 * q(ep.at) / (roots.d[k] + 1);
      const std::string tag = std::to_string(j + 1) + " at root " + std::to_string(k + 1);
      push_check(cert, "boundary value " + tag, abs(value) <= real("1e-10") * scale_v, abs(value),
                 real("1e-10") * scale_v, how);
      push_check(cert, "boundary slope " + tag, abs(slope - target) <= real("1e-8") * scale_v,
                 abs(slope - target), real("1e-8") * scale_v, how);
    }
  }

  // 3. ODE residual on a log-spread grid per interval.
  for (int j = 0; j < ell; ++j) {
    const auto iv = roots.coordinate_interval(j);
    const auto grid = interval_grid(iv, opt.ode_points);
    real worst{0};
    for (const auto& t : grid) {
      const real rhs = 2 * ps.p_c(t) * q(t);
      const real dterm = ps.F_deriv(j, t);
      const real fterm = (ps.d_B / t + ps.a) * ps.F_value(j, t);
      const real lhs = dterm + fterm;
      // Normalize by the largest term: where a homogeneous e^{-at} piece
      // dominates, lhs is a cancellation of huge values and only a residual
      // relative to that magnitude is meaningful.
      real scale = std::max(real{1}, real(abs(rhs)));
      scale = std::max(scale, real(abs(dterm)));
      scale = std::max(scale, real(abs(fterm)));
      const real rel = abs(lhs - rhs) / scale;
      worst = std::max(worst, rel);
    }
    push_check(cert, "ode residual " + std::to_string(j + 1), worst <= real("1e-10"), worst,
               real("1e-10"));
  }

  // 4. Growth degree at the unbounded ends.
  {
    const real top_slope = numeric_growth_slope(ps, roots, ell - 1);
    const real err = abs(top_slope - ps.beta);
    push_check(cert, "growth degree top", err <= real("1e-3"), top_slope, real(ps.beta),
               "absolute slope error " + fmt_real(err));
    if (roots.kind == case_kind::type2) {
      const real bot_slope = numeric_growth_slope(ps, roots, 0);
      const real berr = abs(bot_slope - ps.beta);
      std::string detail = "absolute slope error " + fmt_real(berr);
      if (ps.a != 0)
        detail += "; nonzero rate: homogeneous e^{-at} term dominates toward -infinity";
      push_check(cert, "growth degree bottom", berr <= real("1e-3"), bot_slope, real(ps.beta), detail);
    }
  }

  // 5. Completeness bound: growth degree strictly below ell + 1 at every
  //    unbounded end.
  {
    bool ok = ps.beta < ell + 1;
    std::string detail;
    if (roots.kind == case_kind::type2 && ps.a != 0) {
      ok = false;
      detail = "bottom end grows exponentially (finite distance); bound |Theta| <= C|t|^{ell+1} fails";
    }
    push_check(cert, "completeness growth bound", ok, real(ps.beta), real(ell + 1), detail);
  }

  // 6. Fiber coordinate structure bound on the growth degree.
  {
    const int bound = (roots.kind == case_kind::type1) ? ell : ell - 1;
    push_check(cert, "fiber structure degree bound", ps.beta <= bound, real(ps.beta), real(bound));
  }

  // 7. Closed-form coefficient identity for exact builds: P' = 2 t^{d_B} p_c q.
  if (ps.q_x && ps.p_c_x && !ps.F.empty() && ps.F.front().exact) {
    const poly<rat> want = rat{2} * (poly<rat>::monomial(ps.d_B, rat{1}) * (*ps.p_c_x) * (*ps.q_x));
    const bool ok = (ps.F.front().P_x.derivative() == want);
    push_check(cert, "ode closed form", ok, real{0}, real{0}, "exact coefficient identity");
  }

  // 8. Shrinking class extras: the homogeneous coefficient must vanish, the
  //    polynomial part must vanish at every root, and the top tail moment of
  //    the defining data must be zero.
  if (config.cls == soliton_class::shrinking) {
    real cmax{0};
    for (const auto& rep : ps.F) cmax = std::max(cmax, real(abs(rep.c)));
    push_check(cert, "shrink homogeneous coefficient", cmax == 0, cmax, real{0});

    const poly<real>& P = ps.F.front().P;
    real pscale{0};
    const real aend = abs(roots.alpha.back());
    for (int i = 0; i <= P.degree(); ++i) pscale += abs(P.coeff(i)) * pow(std::max(real{1}, aend), i);
    real proot{0};
    for (const auto& al : roots.alpha) proot = std::max(proot, real(abs(P(al))));
    push_check(cert, "shrink kernel vanishing", proot <= real("1e-8") * pscale, proot,
               real("1e-8") * pscale, "max |P(alpha_j)| against coefficient scale");

    const poly<real> pq = ps.p_c * q;
    const real tail = tail_moment(roots.alpha.back(), ps.d_B, pq, ps.a, opt.crosscheck);
    const real tscale = std::max(real{1}, real(pscale * exp(ps.a * roots.alpha.back())));
    push_check(cert, "shrink tail moment", abs(tail) <= real("1e-10") * tscale, abs(tail),
               real("1e-10") * tscale);
  }

  // 9. Quadrature cross-check of the closed-form profile on the top interval
  //    (and bottom for the split-sign case), catching representation bugs.
  if (opt.crosscheck && ps.a != 0) {
    struct span_check {
      int j;
      real from;
      real to;
    };
    std::vector<span_check> spans;
    const real atop = roots.alpha.back();
    spans.push_back({ell - 1, atop, real(atop + 9 * std::max(real{1}, real(abs(atop))))});
    real worst{0};
    for (const auto& sc : spans) {
      const poly<real> integrand = real{2} * (poly<real>::monomial(ps.d_B, real{1}) * ps.p_c * q);
      for (int i = 1; i <= 8; ++i) {
        const real t = sc.from + (sc.to - sc.from) * i / 8;
        // anchor the quadrature at the interval's own root so both sides
        // vanish there (shrinking reps have no anchor constant).
        const real anchor = (config.cls == soliton_class::shrinking) ? atop : roots.alpha.front();
        const real quad = integrate_adaptive([&](const real& x) { return integrand(x) * exp(ps.a * x); },
                                             anchor, t, real("1e-14"));
        real ref = exp(ps.a * t) * ps.F[sc.j].P(t);
        ref -= exp(ps.a * anchor) * ps.F[sc.j].P(anchor);
        const real rel = abs(quad - ref) / std::max(real{1}, real(abs(ref)));
        worst = std::max(worst, rel);
      }
    }
    push_check(cert, "profile quadrature cross-check", worst <= real("1e-10"), worst, real("1e-10"));
  }

  return cert;
}

}  // namespace forge
