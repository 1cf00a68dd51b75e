// Acceptance gate: one criterion per invocation, selected by the single
// numeric argument. Each check prints one line; the run ends with a single
// "criterion N: PASS" or "criterion N: FAIL" verdict and a nonzero exit code
// on failure. Tolerances are pinned here, next to the checks that use them.

#include "forge/chart.hpp"
#include "forge/degrees.hpp"
#include "forge/geometry.hpp"
#include "forge/modelfile.hpp"
#include "forge/profiles.hpp"
#include "forge/solvers.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

using namespace forge;

namespace {

int failures = 0;

void line(const std::string& name, bool ok, const std::string& detail = "") {
  if (!ok) ++failures;
  std::printf("  [%s] %s%s%s\n", ok ? " ok " : "FAIL", name.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
}

void note(const std::string& text) { std::printf("  note: %s\n", text.c_str()); }

std::string dec(const real& x, unsigned digits = 6) { return real_to_decimal(x, digits); }

real tolp(int e) { return pow(real(10), e); }

real absdiff(const real& x, const real& y) {
  using std::abs;
  return real(abs(x - y));
}

// ---- shared configurations (the criterion bundles) ------------------------

ansatz_config rank2_split_config() {
  ansatz_config cfg;
  cfg.kind = case_kind::type2;
  cfg.cls = soliton_class::cy;
  cfg.ell = 2;
  cfg.d_B = 1;
  cfg.i_B = 2;
  cfg.d = {0, 0};
  cfg.m = {1, 1};
  return cfg;
}

ansatz_config surface_base_config(soliton_class cls) {
  ansatz_config cfg;
  cfg.kind = case_kind::type1;
  cfg.cls = cls;
  cfg.ell = 2;
  cfg.d_B = 2;
  cfg.i_B = 3;
  cfg.d = {0, 0};
  cfg.m = {2, 1};
  return cfg;
}

ansatz_config shrinker_config() {
  ansatz_config cfg;
  cfg.kind = case_kind::type1;
  cfg.cls = soliton_class::shrinking;
  cfg.ell = 2;
  cfg.d_B = 3;
  cfg.i_B = 4;
  cfg.d = {0, 0};
  cfg.m = {2, 1};
  return cfg;
}

ansatz_config expander_config() {
  ansatz_config cfg;
  cfg.kind = case_kind::type1;
  cfg.cls = soliton_class::expanding;
  cfg.ell = 2;
  cfg.d_B = 1;
  cfg.i_B = 2;
  cfg.d = {0, 0};
  cfg.m = {2, 1};
  return cfg;
}

ansatz_config rank3_split_config(soliton_class cls, const real& a) {
  ansatz_config cfg;
  cfg.kind = case_kind::type2;
  cfg.cls = cls;
  cfg.ell = 3;
  cfg.d_B = 3;
  cfg.i_B = 4;
  cfg.d = {0, 0, 0};
  cfg.m = {1, 2, 1};
  cfg.a = a;
  return cfg;
}

// ---- random rational instances for the exact identities --------------------

rat rnd_rat(std::mt19937& rng, int lo, int hi, int den_max) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, den_max);
  return rat(num(rng), den(rng));
}

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

// Twenty interior points spread through the box of a rank-two model with a
// bounded first interval: four stations across the gap, five up the end.
std::vector<std::vector<real>> interior_grid(const soliton_model& m) {
  const real lo = m.alphas.alpha[0];
  const real hi = m.alphas.alpha[1];
  const real span = hi - lo;
  std::vector<std::vector<real>> pts;
  for (int i = 1; i <= 4; ++i) {
    const real x1 = lo + real(i) * span / 5;
    for (const int k : {1, 2, 4, 8, 16}) {
      pts.push_back({x1, real(hi + real(k) * span / 2)});
    }
  }
  return pts;
}

// ---- criteria ---------------------------------------------------------------

void criterion_1() {
  std::mt19937 rng(160901u);
  bool frame_ok = true;
  bool degree_ok = true;
  int instances = 0;
  for (int ell = 1; ell <= 4; ++ell) {
    for (int it = 0; it < 200; ++it) {
      const case_kind kind =
          (ell >= 2 && it % 2 == 1) ? case_kind::type2 : case_kind::type1;
      const auto roots = rnd_roots(rng, kind, ell);
      const auto res = vandermonde_residual(roots);
      for (const auto& row : res)
        for (const auto& entry : row)
          if (!(entry == rat(0))) frame_ok = false;
      // Every third instance drops the leading coefficient, covering the
      // degenerate closed-form branch for odd fiber counts as well.
      const poly<rat> q = rnd_poly(rng, (it % 3 == 0) ? ell - 1 : ell);
      const auto dp = total_degree(q, roots);
      if (!(dp.direct == dp.closed)) degree_ok = false;
      ++instances;
    }
  }
  line("lattice frame residual exactly zero", frame_ok,
       std::to_string(instances) + " instances, fiber counts 1..4");
  line("degree sum equals closed form exactly", degree_ok);
}

void criterion_2() {
  const auto m = solve_type2_rank2(rank2_split_config(), real(0));
  line("roots are (-1, 1) exactly",
       m.alphas.alpha[0] == real(-1) && m.alphas.alpha[1] == real(1));
  line("partial degrees are (-1, -1) exactly",
       m.deltas[0] == real(-1) && m.deltas[1] == real(-1));

  const auto& ps = m.profiles;
  const bool bvals = ps.theta(0, real(-1)) == 0 && ps.theta(1, real(1)) == 0;
  line("profile vanishes at both roots exactly", bvals);
  const bool bslopes = ps.theta_deriv(0, real(-1)) == real(4) &&
                       ps.theta_deriv(1, real(1)) == real(4) &&
                       2 * ps.q(real(-1)) == real(4) && 2 * ps.q(real(1)) == real(4);
  line("boundary slope equals twice the defining polynomial, value 4 exactly", bslopes);
  line("profile value check 2t - 2/t at t = 3",
       absdiff(ps.theta(1, real(3)), real(16) / 3) <= tolp(-30),
       dec(ps.theta(1, real(3))));

  const auto growth = volume_exponent(m);
  line("analytic volume exponent 5", growth.analytic_exponent == real(5));
  line("regression slope within 1/4 of 5", absdiff(growth.slope, real(5)) <= real(1) / 4,
       "slope " + dec(growth.slope));
}

void criterion_3() {
  const auto cfg = surface_base_config(soliton_class::cy);
  line("bracket degree at 3/2 equals 129/65 exactly",
       type1_cy_partial_degree(cfg, rat(3, 2)) == rat(129, 65),
       "129/65 = 1.98461538...");
  line("bracket degree at 2 equals 34/15 exactly",
       type1_cy_partial_degree(cfg, rat(2)) == rat(34, 15));

  const auto m = solve_type1_cy(cfg);
  line("first partial degree within 1e-10 of target 2",
       absdiff(m.deltas[0], real(2)) <= tolp(-10), dec(absdiff(m.deltas[0], real(2)), 3));

  const auto cert = certify_profiles(m.profiles, m.alphas, m.config);
  int cert_failures = 0;
  for (const auto& c : cert.checks)
    if (!c.pass) ++cert_failures;
  line("all profile certifications pass", cert.all_pass(),
       std::to_string(cert.checks.size()) + " checks, " + std::to_string(cert_failures) +
           " failing");

  real worst(0);
  for (const auto& pt : interior_grid(m)) {
    const auto rep = ricci_oracle(m, pt);
    if (rep.max_abs > worst) worst = rep.max_abs;
  }
  line("structure-equation residual at or below 1e-6 at 20 interior points",
       worst <= tolp(-6), "worst " + dec(worst, 3));

  const auto scan = curvature_decay_scan(m, 2);
  line("inverse-square curvature weight varies at most 20% over the last decade",
       scan.last_decade_variation <= real(2) / 10,
       "variation " + dec(scan.last_decade_variation, 3));
}

void criterion_4() {
  for (const real& a : {real(0.5), real(1), real(2)}) {
    const std::string tag = " (rate " + dec(a, 3) + ")";
    const auto m = solve_steady(surface_base_config(soliton_class::steady), a);
    line("steady solve exists" + tag, true);
    line("growth degree one" + tag, m.beta == 1);
    const auto growth = volume_exponent(m);
    line("volume regression slope within 1/4 of 4" + tag,
         growth.measured && absdiff(growth.slope, real(4)) <= real(1) / 4,
         "slope " + dec(growth.slope));
    const auto scan = curvature_decay_scan(m, 1);
    const bool bounded = !scan.weighted.empty() && scan.weighted.back() <= scan.weighted.front();
    line("linear curvature weight bounded along the scan" + tag, bounded);
  }
}

void criterion_5() {
  const auto cfg = shrinker_config();
  const auto m = solve_shrinker(cfg);
  line("solved rate is negative", m.a < 0, "a = " + dec(m.a));
  line("rate mismatch at most 1e-10", m.rate_residual <= tolp(-10),
       dec(m.rate_residual, 3));
  line("first partial degree within 1e-8 of target 2",
       absdiff(m.deltas[0], real(2)) <= tolp(-8));
  real cmax(0);
  for (const auto& rep : m.profiles.F) {
    const real mag = abs(rep.c);
    if (mag > cmax) cmax = mag;
  }
  line("homogeneous coefficients vanish to 1e-10", cmax <= tolp(-10), dec(cmax, 3));

  const real near_collision = shrinker_partial_degree(cfg, real(1) + tolp(-3), nullptr, nullptr);
  line("degree limit 3/2 near root collision", absdiff(near_collision, real(3) / 2) <= tolp(-3),
       dec(near_collision, 8));
  const real far_out = shrinker_partial_degree(cfg, real(1000), nullptr, nullptr);
  line("degree limit 3 at large root ratio", absdiff(far_out, real(3)) <= tolp(-3),
       dec(far_out, 8));
}

void criterion_6() {
  const auto cfg = expander_config();
  const auto m = solve_expander(cfg, real(1));
  line("first partial degree within 1e-8 of target 2",
       absdiff(m.deltas[0], real(2)) <= tolp(-8));
  const auto cert = certify_profiles(m.profiles, m.alphas, m.config);
  line("all profile certifications pass", cert.all_pass());

  const real near_collision = expander_partial_degree(cfg, real(1) + tolp(-3), real(1));
  line("degree limit 3/2 near root collision", absdiff(near_collision, real(3) / 2) <= tolp(-3),
       dec(near_collision, 8));
  const real far_out = expander_partial_degree(cfg, real(1000), real(1));
  line("degree limit 3 at large root ratio", absdiff(far_out, real(3)) <= tolp(-3),
       dec(far_out, 8));
}

void criterion_7() {
  for (const real& a : {real(0), real(1)}) {
    const std::string tag = (a == 0) ? " (Ricci-flat)" : " (steady)";
    const auto cls = (a == 0) ? soliton_class::cy : soliton_class::steady;
    const auto m = solve_model(rank3_split_config(cls, a), true);
    real solve_res(0);
    for (size_t j = 0; j < m.deltas.size(); ++j) {
      const real g = absdiff(m.deltas[j], m.delta_targets[j]);
      if (g > solve_res) solve_res = g;
    }
    line("two-dimensional solve residual at most 1e-8" + tag, solve_res <= tolp(-8),
         dec(solve_res, 3));
    line("degree identity cross-check at most 1e-8" + tag,
         m.degree_identity_residual <= tolp(-8), dec(m.degree_identity_residual, 3));
  }
}

void criterion_8() {
  // Bump the linear coefficient of the defining polynomial by 1e-2, rebuild
  // the profiles through the same first-order equation, and compare the
  // structure-equation residual against the untouched model over the same
  // twenty interior points.
  const auto m = solve_type1_cy(surface_base_config(soliton_class::cy));
  const auto pts = interior_grid(m);

  real clean(0);
  for (const auto& pt : pts) {
    const auto rep = ricci_oracle(m, pt);
    if (rep.max_abs > clean) clean = rep.max_abs;
  }

  soliton_model shifted = m;
  shifted.profiles =
      build_profiles(m.profiles.q + poly<real>::monomial(1, tolp(-2)), m.alphas, m.config, real(0));
  real sub(0);
  for (const auto& pt : pts) {
    const auto rep = ricci_oracle(shifted, pt);
    if (rep.max_abs > sub) sub = rep.max_abs;
  }

  const bool rose = sub >= clean * 1000;
  line("linear-coefficient bump raises the residual by three orders", rose,
       "clean " + dec(clean, 3) + ", bumped " + dec(sub, 3));

  if (!rose) {
    // Diagnosis, not mitigation. The residual identity is derived from the
    // profile equation alone, so it holds for any defining polynomial with
    // the same leading coefficient once the profiles are rebuilt through
    // that equation: subleading coefficients enter the gradient of the
    // potential as constants and the Hessian kills them. Two companion
    // measurements show the construction is still fully guarded.
    soliton_model off = m;
    off.profiles = build_profiles(m.profiles.q + poly<real>::monomial(2, tolp(-2)), m.alphas,
                                  m.config, real(0));
    real lead(0);
    for (const auto& pt : pts) {
      const auto rep = ricci_oracle(off, pt);
      if (rep.max_abs > lead) lead = rep.max_abs;
    }
    note("subleading bumps are structurally invisible to the residual; the same bump on the");
    note("leading coefficient lifts it from " + dec(clean, 3) + " to " + dec(lead, 3) +
         " (" + dec(log10(lead / (clean + tolp(-40))), 3) + " orders)");
    const auto cert = certify_profiles(shifted.profiles, m.alphas, m.config);
    int broken = 0;
    for (const auto& c : cert.checks)
      if (!c.pass) ++broken;
    note("the boundary certification owns subleading errors: " + std::to_string(broken) +
         " of " + std::to_string(cert.checks.size()) + " checks fail on the bumped model");
  }
}

void criterion_9() {
  struct job {
    std::string name;
    soliton_model (*solve)();
  };
  const std::vector<job> jobs{
      {"rank-two split-sign", [] { return solve_type2_rank2(rank2_split_config(), real(0)); }},
      {"all-positive Ricci-flat", [] { return solve_type1_cy(surface_base_config(soliton_class::cy)); }},
      {"steady", [] { return solve_steady(surface_base_config(soliton_class::steady), real(1)); }},
      {"shrinking", [] { return solve_shrinker(shrinker_config()); }},
      {"expanding", [] { return solve_expander(expander_config(), real(1)); }},
      {"rank-three Ricci-flat", [] { return solve_model(rank3_split_config(soliton_class::cy, real(0)), true); }},
      {"rank-three steady", [] { return solve_model(rank3_split_config(soliton_class::steady, real(1)), true); }},
  };
  const std::string dir = "acceptance_roundtrip_tmp";
  for (const auto& jb : jobs) {
    const auto m1 = jb.solve();
    const auto m2 = jb.solve();
    model_document d1{m1, certify_profiles(m1.profiles, m1.alphas, m1.config), precision_bits()};
    model_document d2{m2, certify_profiles(m2.profiles, m2.alphas, m2.config), precision_bits()};
    const std::string r1 = render_model(d1);
    line("re-solve renders bit-identically (" + jb.name + ")", r1 == render_model(d2));

    const std::string path = dir + "_" + std::to_string(&jb - jobs.data()) + ".model";
    save_model(path, d1);
    const auto back = load_model(path);
    line("save/load round-trips exactly (" + jb.name + ")", render_model(back) == r1);
    std::remove(path.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* bits = std::getenv("FORGE_BITS")) {
    set_precision_bits(static_cast<unsigned>(std::atoi(bits)));
  } else {
    set_precision_bits(128);
  }
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <criterion 1..9>\n", argv[0]);
    return 2;
  }
  const int n = std::atoi(argv[1]);
  // Wall-clock budgets, seconds; zero means no budget is stated.
  const double budgets[10] = {0, 10, 5, 120, 180, 300, 120, 180, 60, 0};
  if (n < 1 || n > 9) {
    std::fprintf(stderr, "criterion number must be 1..9\n");
    return 2;
  }

  std::printf("criterion %d:\n", n);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (n) {
      case 1: criterion_1(); break;
      case 2: criterion_2(); break;
      case 3: criterion_3(); break;
      case 4: criterion_4(); break;
      case 5: criterion_5(); break;
      case 6: criterion_6(); break;
      case 7: criterion_7(); break;
      case 8: criterion_8(); break;
      case 9: criterion_9(); break;
    }
  } catch (const forge_error& e) {
    line(std::string("unexpected failure: ") + e.what(), false);
  } catch (const std::exception& e) {
    line(std::string("unexpected exception: ") + e.what(), false);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budgets[n] > 0) {
    line("wall clock within budget", elapsed <= budgets[n],
         std::to_string(elapsed).substr(0, 5) + "s of " + std::to_string(budgets[n]).substr(0, 5) +
             "s");
  }

  const bool pass = failures == 0;
  std::printf("criterion %d: %s\n", n, pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}
