// Command-line driver: solve a configured family member, certify and verify
// model files, export metric samples, growth tables, and delta sweeps as CSV.
// Exit codes: 0 success / all checks pass, 1 numeric or internal failure,
// 2 infeasible target or malformed problem data.

#include "forge/chart.hpp"
#include "forge/degrees.hpp"
#include "forge/geometry.hpp"
#include "forge/modelfile.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace forge;

unsigned default_bits() {
  if (const char* env = std::getenv("FORGE_BITS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 128;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
  return out;
}

struct solve_flags {
  std::string kind = "type1";
  std::string cls = "cy";
  int iB = 2;
  int dB = 1;
  std::string d = "0,0";
  std::string m = "1,1";
  double a = 0;
  bool experimental = false;
};

ansatz_config config_from(const solve_flags& f) {
  ansatz_config cfg;
  if (f.kind == "type1")
    cfg.kind = case_kind::type1;
  else if (f.kind == "type2")
    cfg.kind = case_kind::type2;
  else
    throw forge_error(errc::domain_data, "--case must be type1 or type2");
  if (f.cls == "cy")
    cfg.cls = soliton_class::cy;
  else if (f.cls == "steady")
    cfg.cls = soliton_class::steady;
  else if (f.cls == "shrinking")
    cfg.cls = soliton_class::shrinking;
  else if (f.cls == "expanding")
    cfg.cls = soliton_class::expanding;
  else
    throw forge_error(errc::domain_data, "--class must be cy, steady, shrinking, or expanding");
  cfg.i_B = f.iB;
  cfg.d_B = f.dB;
  cfg.d = parse_int_list(f.d);
  cfg.m = parse_long_list(f.m);
  cfg.ell = static_cast<int>(cfg.d.size());
  cfg.a = real(f.a);
  return cfg;
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw forge_error(errc::parse, "cannot open '" + path + "' for writing");
  return file;
}

// Re-derives every per-model invariant from the stored data and reports each
// one with its measured value and tolerance.
certification verify_document(const model_document& doc) {
  using std::abs;
  const soliton_model& m = doc.model;
  certification cert = certify_profiles(m.profiles, m.alphas, m.config);

  auto push = [&](const std::string& name, const real& measured, const real& tol,
                  const std::string& detail) {
    cert_check c;
    c.name = name;
    c.measured = measured;
    c.tolerance = tol;
    c.pass = measured <= tol;
    c.detail = detail;
    cert.checks.push_back(c);
  };

  real dmax(0);
  for (int j = 0; j < m.config.ell; ++j) {
    real dj = partial_degree(m.profiles.q, m.alphas, j);
    real gap = abs(dj - m.deltas[static_cast<size_t>(j)]);
    if (gap > dmax) dmax = gap;
    real tgap = abs(dj - m.delta_targets[static_cast<size_t>(j)]);
    if (tgap > dmax && !m.experimental) dmax = tgap;
  }
  push("delta-match", dmax, real(1e-8), "stored vs recomputed partial degrees and their targets");

  degree_pair<real> tp = total_degree(m.profiles.q, m.alphas);
  real scale = abs(tp.closed) > real(1) ? abs(tp.closed) : real(1);
  push("degree-identity", abs(tp.direct - tp.closed) / scale, real(1e-10),
       "weighted partial degrees against the closed form");

  if (m.config.cls == soliton_class::shrinking) {
    real ctop = abs(m.profiles.F.back().c);
    push("tail-coefficient", ctop, real(1e-10),
         "homogeneous coefficient of the top profile vanishes for shrinkers");
    push("rate-residual", abs(m.rate_residual), real(1e-10),
         "tail-moment equation at the solved rate");
  }
  return cert;
}

int run_solve(const solve_flags& f, const std::string& out_path) {
  ansatz_config cfg = config_from(f);
  model_document doc;
  doc.model = solve_model(cfg, f.experimental);
  doc.cert = certify_profiles(doc.model.profiles, doc.model.alphas, doc.model.config);
  doc.bits = precision_bits();
  if (!out_path.empty()) save_model(out_path, doc);
  std::cout << doc.cert.summary();
  std::cout << (doc.cert.all_pass() ? "certification: PASS" : "certification: FAIL") << '\n';
  if (!out_path.empty()) std::cout << "model written to " << out_path << '\n';
  return doc.cert.all_pass() ? 0 : 1;
}

int run_verify(const std::string& model_path, const std::string& out_path) {
  model_document doc = load_model(model_path);
  certification cert = verify_document(doc);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  os << "# check\tpass\tmeasured\ttolerance\tdetail\n";
  for (const cert_check& c : cert.checks)
    os << c.name << '\t' << (c.pass ? 1 : 0) << '\t' << real_to_decimal(c.measured) << '\t'
       << real_to_decimal(c.tolerance) << '\t' << c.detail << '\n';
  std::cout << (cert.all_pass() ? "verification: PASS" : "verification: FAIL") << '\n';
  return cert.all_pass() ? 0 : 1;
}

int run_sample(const std::string& model_path, int per_axis, double margin, bool with_oracle,
               const std::vector<std::string>& at, const std::string& out_path) {
  using std::abs;
  model_document doc = load_model(model_path);
  const soliton_model& m = doc.model;
  const int ell = m.config.ell;

  // Sample grid: interior quantiles of each coordinate interval, or the
  // explicit --at points clipped into the certified box.
  real span(1);
  {
    const auto& al = m.alphas.alpha;
    if (abs(al.front()) > span) span = abs(al.front());
    if (abs(al.back()) > span) span = abs(al.back());
    if (al.size() > 1 && al.back() - al.front() > span) span = al.back() - al.front();
  }
  auto clip = [&](int j, real x, bool& clipped) {
    interval<real> iv = m.alphas.coordinate_interval(j);
    real lo = iv.lo_unbounded ? iv.hi - 2 * span : iv.lo;
    real hi = iv.hi_unbounded ? iv.lo + 2 * span : iv.hi;
    real pad = (hi - lo) * real(margin);
    // Unbounded sides never clip; only the finite interval ends do.
    if (iv.lo_unbounded && x - pad < lo) lo = x - pad;
    if (iv.hi_unbounded && x + pad > hi) hi = x + pad;
    if (x < lo + pad) {
      x = lo + pad;
      clipped = true;
    }
    if (x > hi - pad) {
      x = hi - pad;
      clipped = true;
    }
    return x;
  };

  std::vector<std::vector<real>> points;
  int clipped_rows = 0;
  if (!at.empty()) {
    for (const std::string& spec : at) {
      std::stringstream ss(spec);
      std::string item;
      std::vector<real> xi;
      while (std::getline(ss, item, ',')) xi.push_back(real(item));
      if (static_cast<int>(xi.size()) != ell)
        throw forge_error(errc::domain_data, "--at needs exactly ell coordinates");
      bool clipped = false;
      for (int j = 0; j < ell; ++j) xi[static_cast<size_t>(j)] = clip(j, xi[static_cast<size_t>(j)], clipped);
      if (clipped) ++clipped_rows;
      points.push_back(xi);
    }
  } else {
    std::vector<std::vector<real>> axes(static_cast<size_t>(ell));
    for (int j = 0; j < ell; ++j) {
      interval<real> iv = m.alphas.coordinate_interval(j);
      for (int k = 0; k < per_axis; ++k) {
        real frac = real(k + 1) / (per_axis + 1);
        if (!iv.lo_unbounded && !iv.hi_unbounded)
          axes[static_cast<size_t>(j)].push_back(iv.lo + (iv.hi - iv.lo) * frac);
        else if (iv.hi_unbounded)
          axes[static_cast<size_t>(j)].push_back(iv.lo + span * (real(1) / 4 + 3 * frac));
        else
          axes[static_cast<size_t>(j)].push_back(iv.hi - span * (real(1) / 4 + 3 * frac));
      }
    }
    std::vector<size_t> idx(static_cast<size_t>(ell), 0);
    while (true) {
      std::vector<real> xi(static_cast<size_t>(ell));
      for (int j = 0; j < ell; ++j) xi[static_cast<size_t>(j)] = axes[static_cast<size_t>(j)][idx[static_cast<size_t>(j)]];
      points.push_back(xi);
      size_t pos = 0;
      while (pos < static_cast<size_t>(ell) && ++idx[pos] == axes[pos].size()) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos == static_cast<size_t>(ell)) break;
    }
  }

  bool oracle_ok = with_oracle && ell == 2;
  if (oracle_ok)
    for (int dj : m.config.d)
      if (dj != 0) oracle_ok = false;

  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  os << "# xi_1..xi_ell, eig_min, eig_max, compat, j_square, omega_skew, base_min,"
        " knorm_1, knorm_top, knorm_cross, sec_sup, oracle_residual\n";
  for (const auto& xi : points) {
    metric_sample s = eval_metric(m, xi);
    real base_min = s.base_factors.front();
    for (const real& b : s.base_factors)
      if (b < base_min) base_min = b;
    os << real_to_decimal(xi[0]);
    for (size_t j = 1; j < xi.size(); ++j) os << ',' << real_to_decimal(xi[j]);
    os << ',' << real_to_decimal(s.eigenvalues.front()) << ',' << real_to_decimal(s.eigenvalues.back())
       << ',' << real_to_decimal(s.compat_residual) << ',' << real_to_decimal(s.j_square_residual)
       << ',' << real_to_decimal(s.omega_skew_residual) << ',' << real_to_decimal(base_min);
    if (ell == 2) {
      os << ',' << real_to_decimal(s.k_norms[0]) << ',' << real_to_decimal(s.k_norms[1]) << ','
         << real_to_decimal(s.k_norms[2]);
      sec_data sd = sec_curvature(m, xi);
      os << ',' << real_to_decimal(sd.sup_abs);
    } else {
      os << ",-,-,-,-";
    }
    if (oracle_ok) {
      oracle_report orep = ricci_oracle(m, xi);
      os << ',' << real_to_decimal(orep.max_abs);
    } else {
      os << ",-";
    }
    os << '\n';
  }
  if (clipped_rows > 0)
    std::cerr << "warning: " << clipped_rows << " sample rows clipped to the certified box\n";
  return 0;
}

int run_growth(const std::string& model_path, int decades, int per_decade,
               const std::string& out_path) {
  model_document doc = load_model(model_path);
  const soliton_model& m = doc.model;
  growth_report rep = volume_exponent(m, decades, per_decade);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  os << "# radius, volume, dist_lower, dist_upper; analytic exponent "
     << real_to_decimal(rep.analytic_exponent);
  if (rep.measured)
    os << ", regression slope " << real_to_decimal(rep.slope);
  else
    os << ", not measured: " << rep.caveat;
  os << '\n';
  for (size_t k = 0; k < rep.radii.size(); ++k) {
    os << real_to_decimal(rep.radii[k]) << ',' << real_to_decimal(rep.volumes[k]);
    if (k < rep.tops.size()) {
      std::vector<real> target(static_cast<size_t>(m.config.ell));
      real span(1);
      using std::abs;
      const auto& al = m.alphas.alpha;
      if (abs(al.front()) > span) span = abs(al.front());
      if (abs(al.back()) > span) span = abs(al.back());
      if (al.size() > 1 && al.back() - al.front() > span) span = al.back() - al.front();
      for (int j = 0; j + 1 < m.config.ell; ++j) {
        interval<real> iv = m.alphas.coordinate_interval(j);
        target[static_cast<size_t>(j)] =
            iv.lo_unbounded ? real(iv.hi - span) : real((iv.lo + iv.hi) / 2);
      }
      target.back() = rep.tops[k];
      distance_report dr = distance_bounds(m, target);
      os << ',' << real_to_decimal(dr.lower) << ',' << real_to_decimal(dr.upper);
    } else {
      os << ",-,-";
    }
    os << '\n';
  }
  if (!rep.measured) std::cerr << "growth not measured: " << rep.caveat << '\n';
  return 0;
}

int run_sweep(const solve_flags& f, double lo, double hi, int count, const std::string& out_path) {
  ansatz_config cfg = config_from(f);
  std::vector<sweep_row> rows = sweep_alpha(cfg, real(lo), real(hi), count);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  os << "# alpha, a, delta_1..delta_ell, tail_mismatch\n";
  for (const sweep_row& r : rows) {
    os << real_to_decimal(r.alpha) << ',' << real_to_decimal(r.a);
    for (const real& d : r.deltas) os << ',' << real_to_decimal(d);
    os << ',' << real_to_decimal(r.mismatch) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construction and certification for fiberwise toric soliton metrics"};
  app.require_subcommand(1);

  unsigned bits = default_bits();
  app.add_option("--bits", bits, "working precision in bits (env FORGE_BITS, default 128)");

  solve_flags sf;
  std::string out_path, model_path;
  bool experimental = false;

  auto add_problem_flags = [&](CLI::App* cmd) {
    cmd->add_option("--case", sf.kind, "root case: type1 (all-positive) or type2 (split-sign)");
    cmd->add_option("--class", sf.cls, "soliton class: cy, steady, shrinking, expanding");
    cmd->add_option("--iB", sf.iB, "Fano index of the base");
    cmd->add_option("--dB", sf.dB, "complex dimension of the base");
    cmd->add_option("--d", sf.d, "comma list of fiber multiplicities d_j");
    cmd->add_option("--m", sf.m, "comma list of twists m_j");
    cmd->add_option("--a", sf.a, "soliton rate (steady/expanding; shrinking solves its own)");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve a family member and write a model file");
  add_problem_flags(solve);
  solve->add_option("--out", out_path, "model file path");
  solve->add_flag("--experimental", experimental,
                  "allow configurations outside the proven closed-form ranks");

  CLI::App* verify = app.add_subcommand("verify", "re-certify a model file");
  verify->add_option("model", model_path, "model file path")->required();
  verify->add_option("--out", out_path, "TSV report path (default stdout)");

  int per_axis = 3, decades = 2, per_decade = 8, count = 25;
  double margin = 0.02, lo = 1.1, hi = 10.0;
  bool no_oracle = false;
  std::vector<std::string> at_points;

  CLI::App* sample = app.add_subcommand("sample", "metric invariants on a grid, as CSV");
  sample->add_option("model", model_path, "model file path")->required();
  sample->add_option("--per-axis", per_axis, "grid points per coordinate (default 3)");
  sample->add_option("--margin", margin, "interior margin as an interval fraction");
  sample->add_option("--at", at_points, "explicit points x1,..,xell (repeatable; clipped into the box)");
  sample->add_flag("--no-oracle", no_oracle, "skip the chart oracle column");
  sample->add_option("--out", out_path, "CSV path (default stdout)");

  CLI::App* growth = app.add_subcommand("growth", "volume growth ladder and distance bounds, as CSV");
  growth->add_option("model", model_path, "model file path")->required();
  growth->add_option("--decades", decades, "radius decades in the ladder (default 2)");
  growth->add_option("--per-decade", per_decade, "ladder points per decade (default 8)");
  growth->add_option("--out", out_path, "CSV path (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "partial-degree sweep over the free root, as CSV");
  add_problem_flags(sweep);
  sweep->add_option("--from", lo, "sweep start (free root parameter)");
  sweep->add_option("--to", hi, "sweep end");
  sweep->add_option("--count", count, "number of rows (default 25)");
  sweep->add_option("--out", out_path, "CSV path (default stdout)");

  for (CLI::App* cmd : {solve, verify, sample, growth, sweep}) cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    forge::set_precision_bits(bits);
    sf.experimental = experimental;
    if (solve->parsed()) return run_solve(sf, out_path);
    if (verify->parsed()) return run_verify(model_path, out_path);
    if (sample->parsed()) return run_sample(model_path, per_axis, margin, !no_oracle, at_points, out_path);
    if (growth->parsed()) return run_growth(model_path, decades, per_decade, out_path);
    if (sweep->parsed()) return run_sweep(sf, lo, hi, count, out_path);
  } catch (const forge::forge_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
