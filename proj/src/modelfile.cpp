#include "forge/modelfile.hpp"

#include <fstream>
#include <sstream>

namespace forge {

namespace {

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  return out;
}

void put_reals(std::ostream& os, const std::string& key, const std::vector<real>& vs,
               bool with_decimals = true) {
  os << key;
  for (const real& v : vs) os << ' ' << real_to_record(v);
  os << '\n';
  if (with_decimals && !vs.empty()) {
    os << "# " << key;
    for (const real& v : vs) os << ' ' << real_to_decimal(v);
    os << '\n';
  }
}

void put_rats(std::ostream& os, const std::string& key, const std::vector<rat>& vs) {
  os << key;
  for (const rat& v : vs) os << ' ' << rat_to_string(v);
  os << '\n';
}

std::vector<rat> poly_coeffs(const poly<rat>& p) { return p.coeffs(); }
std::vector<real> poly_coeffs(const poly<real>& p) { return p.coeffs(); }

struct line_reader {
  std::istringstream in;
  std::string line;
  int number = 0;

  explicit line_reader(const std::string& text) : in(text) {}

  // Next significant line (skips decimal comments and blanks).
  bool next() {
    while (std::getline(in, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line[0] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw forge_error(errc::parse, "model file line " + std::to_string(number) + ": " + why);
  }
};

struct tokens {
  std::vector<std::string> tok;
  size_t pos = 1;  // slot 0 is the key
  const line_reader* rd;

  tokens(const std::string& line, const line_reader& r) : rd(&r) {
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) tok.push_back(t);
  }

  const std::string& key() const { return tok[0]; }
  bool done() const { return pos >= tok.size(); }
  const std::string& word() {
    if (done()) rd->fail("missing token after '" + tok[0] + "'");
    return tok[pos++];
  }
  long integer() {
    const std::string& w = word();
    try {
      size_t used = 0;
      long v = std::stol(w, &used);
      if (used != w.size()) throw std::invalid_argument(w);
      return v;
    } catch (const std::exception&) {
      rd->fail("expected an integer, got '" + w + "'");
    }
  }
  real record() { return record_to_real(word()); }
  rat rational() { return string_to_rat(word()); }

  std::vector<real> records_rest() {
    std::vector<real> vs;
    while (!done()) vs.push_back(record());
    return vs;
  }
  std::vector<rat> rationals_rest() {
    std::vector<rat> vs;
    while (!done()) vs.push_back(rational());
    return vs;
  }
};

}  // namespace

std::string render_model(const model_document& doc) {
  const soliton_model& m = doc.model;
  std::ostringstream os;
  os << "forge-model v1\n";
  os << "bits " << doc.bits << '\n';
  os << "kind " << case_name(m.config.kind) << '\n';
  os << "class " << class_name(m.config.cls) << '\n';
  os << "ell " << m.config.ell << '\n';
  os << "dB " << m.config.d_B << '\n';
  os << "iB " << m.config.i_B << '\n';
  os << "d";
  for (int v : m.config.d) os << ' ' << v;
  os << '\n';
  os << "m";
  for (long v : m.config.m) os << ' ' << v;
  os << '\n';
  put_reals(os, "a", {m.a});
  os << "beta " << m.beta << '\n';
  os << "ddc_factor " << m.ddc_factor << '\n';
  os << "experimental " << (m.experimental ? 1 : 0) << '\n';
  if (!m.notes.empty()) os << "notes " << sanitize(m.notes) << '\n';

  put_reals(os, "alphas", m.alphas.alpha);
  if (m.alphas_x) put_rats(os, "alphas_exact", m.alphas_x->alpha);

  put_reals(os, "q", poly_coeffs(m.profiles.q));
  if (m.profiles.q_x) put_rats(os, "q_exact", poly_coeffs(*m.profiles.q_x));
  put_reals(os, "pc", poly_coeffs(m.profiles.p_c), false);
  if (m.profiles.p_c_x) put_rats(os, "pc_exact", poly_coeffs(*m.profiles.p_c_x));

  for (size_t j = 0; j < m.profiles.F.size(); ++j) {
    const profile_rep& f = m.profiles.F[j];
    std::vector<real> row = poly_coeffs(f.P);
    row.push_back(f.c);
    put_reals(os, "profile " + std::to_string(j), row);
    if (f.exact) {
      std::vector<rat> xrow = poly_coeffs(f.P_x);
      xrow.push_back(f.c_x);
      put_rats(os, "profile_exact " + std::to_string(j), xrow);
    }
    if (f.theta_num_r) put_reals(os, "profile_defl " + std::to_string(j), poly_coeffs(*f.theta_num_r), false);
    if (f.theta_num_x) put_rats(os, "profile_defl_exact " + std::to_string(j), poly_coeffs(*f.theta_num_x));
  }

  put_reals(os, "deltas", m.deltas);
  put_reals(os, "delta_targets", m.delta_targets);
  for (size_t r = 0; r < m.v_frame.size(); ++r)
    put_reals(os, "v_frame " + std::to_string(r), m.v_frame[r], false);
  put_reals(os, "k_bottom", m.k1_coeffs, false);
  put_reals(os, "k_top", m.kell_coeffs, false);
  put_reals(os, "dist_exponent", {m.dist_exponent}, false);
  put_reals(os, "vol_exponent", {m.vol_exponent}, false);
  put_reals(os, "inner_rate_roots", m.inner_rate_roots, false);
  put_reals(os, "rate_residual", {m.rate_residual}, false);
  put_reals(os, "degree_identity_residual", {m.degree_identity_residual}, false);

  os << "checks " << doc.cert.checks.size() << '\n';
  for (const cert_check& c : doc.cert.checks) {
    os << "check\t" << sanitize(c.name) << '\t' << (c.pass ? 1 : 0) << '\t'
       << real_to_record(c.measured) << '\t' << real_to_record(c.tolerance) << '\t'
       << sanitize(c.detail) << '\n';
  }
  os << "end forge-model\n";
  return os.str();
}

model_document parse_model(const std::string& text) {
  line_reader rd(text);
  if (!rd.next() || rd.line != "forge-model v1")
    throw forge_error(errc::parse, "not a forge-model v1 document");

  model_document doc;
  soliton_model& m = doc.model;
  std::vector<std::vector<real>> profile_rows;
  std::vector<std::optional<std::vector<rat>>> profile_exact;
  std::vector<std::optional<std::vector<real>>> profile_defl;
  std::vector<std::optional<std::vector<rat>>> profile_defl_exact;
  std::optional<std::vector<rat>> alphas_exact, q_exact, pc_exact;
  std::vector<real> q_coeffs, pc_coeffs;
  bool ended = false;

  auto profile_slot = [&](size_t j) {
    if (profile_rows.size() <= j) {
      profile_rows.resize(j + 1);
      profile_exact.resize(j + 1);
      profile_defl.resize(j + 1);
      profile_defl_exact.resize(j + 1);
    }
  };

  while (rd.next()) {
    if (rd.line == "end forge-model") {
      ended = true;
      break;
    }
    tokens tk(rd.line, rd);
    const std::string& key = tk.key();
    if (key == "bits") {
      doc.bits = static_cast<unsigned>(tk.integer());
    } else if (key == "kind") {
      std::string v = tk.word();
      if (v == "type1")
        m.config.kind = case_kind::type1;
      else if (v == "type2")
        m.config.kind = case_kind::type2;
      else
        rd.fail("unknown case kind '" + v + "'");
    } else if (key == "class") {
      std::string v = tk.word();
      if (v == "cy")
        m.config.cls = soliton_class::cy;
      else if (v == "steady")
        m.config.cls = soliton_class::steady;
      else if (v == "shrinking")
        m.config.cls = soliton_class::shrinking;
      else if (v == "expanding")
        m.config.cls = soliton_class::expanding;
      else
        rd.fail("unknown soliton class '" + v + "'");
    } else if (key == "ell") {
      m.config.ell = static_cast<int>(tk.integer());
    } else if (key == "dB") {
      m.config.d_B = static_cast<int>(tk.integer());
    } else if (key == "iB") {
      m.config.i_B = static_cast<int>(tk.integer());
    } else if (key == "d") {
      m.config.d.clear();
      while (!tk.done()) m.config.d.push_back(static_cast<int>(tk.integer()));
    } else if (key == "m") {
      m.config.m.clear();
      while (!tk.done()) m.config.m.push_back(tk.integer());
    } else if (key == "a") {
      m.a = tk.record();
      m.config.a = m.a;
    } else if (key == "beta") {
      m.beta = static_cast<int>(tk.integer());
    } else if (key == "ddc_factor") {
      m.ddc_factor = static_cast<int>(tk.integer());
    } else if (key == "experimental") {
      m.experimental = tk.integer() != 0;
    } else if (key == "notes") {
      size_t at = rd.line.find(' ');
      m.notes = at == std::string::npos ? "" : rd.line.substr(at + 1);
    } else if (key == "alphas") {
      m.alphas.alpha = tk.records_rest();
    } else if (key == "alphas_exact") {
      alphas_exact = tk.rationals_rest();
    } else if (key == "q") {
      q_coeffs = tk.records_rest();
    } else if (key == "q_exact") {
      q_exact = tk.rationals_rest();
    } else if (key == "pc") {
      pc_coeffs = tk.records_rest();
    } else if (key == "pc_exact") {
      pc_exact = tk.rationals_rest();
    } else if (key == "profile") {
      size_t j = static_cast<size_t>(tk.integer());
      profile_slot(j);
      profile_rows[j] = tk.records_rest();
    } else if (key == "profile_exact") {
      size_t j = static_cast<size_t>(tk.integer());
      profile_slot(j);
      profile_exact[j] = tk.rationals_rest();
    } else if (key == "profile_defl") {
      size_t j = static_cast<size_t>(tk.integer());
      profile_slot(j);
      profile_defl[j] = tk.records_rest();
    } else if (key == "profile_defl_exact") {
      size_t j = static_cast<size_t>(tk.integer());
      profile_slot(j);
      profile_defl_exact[j] = tk.rationals_rest();
    } else if (key == "deltas") {
      m.deltas = tk.records_rest();
    } else if (key == "delta_targets") {
      m.delta_targets = tk.records_rest();
    } else if (key == "v_frame") {
      size_t r = static_cast<size_t>(tk.integer());
      if (m.v_frame.size() <= r) m.v_frame.resize(r + 1);
      m.v_frame[r] = tk.records_rest();
    } else if (key == "k_bottom") {
      m.k1_coeffs = tk.records_rest();
    } else if (key == "k_top") {
      m.kell_coeffs = tk.records_rest();
    } else if (key == "dist_exponent") {
      m.dist_exponent = tk.record();
    } else if (key == "vol_exponent") {
      m.vol_exponent = tk.record();
    } else if (key == "inner_rate_roots") {
      m.inner_rate_roots = tk.records_rest();
    } else if (key == "rate_residual") {
      m.rate_residual = tk.record();
    } else if (key == "degree_identity_residual") {
      m.degree_identity_residual = tk.record();
    } else if (key == "checks") {
      // Count line; the rows themselves are tab-separated "check" lines.
      long count = tk.integer();
      for (long i = 0; i < count; ++i) {
        if (!rd.next()) rd.fail("fewer certification rows than the count line promised");
        std::vector<std::string> parts;
        std::string piece;
        std::istringstream ss(rd.line);
        while (std::getline(ss, piece, '\t')) parts.push_back(piece);
        if (parts.size() < 5 || parts[0] != "check") rd.fail("malformed certification row");
        cert_check c;
        c.name = parts[1];
        c.pass = parts[2] == "1";
        c.measured = record_to_real(parts[3]);
        c.tolerance = record_to_real(parts[4]);
        if (parts.size() > 5) c.detail = parts[5];
        doc.cert.checks.push_back(c);
      }
    } else {
      rd.fail("unknown key '" + key + "'");
    }
  }
  if (!ended) throw forge_error(errc::parse, "model file is missing its end marker");

  // Assemble the nested structures.
  if (m.config.d.size() != m.alphas.alpha.size())
    throw forge_error(errc::parse, "root and multiplicity counts disagree");
  m.alphas.kind = m.config.kind;
  m.alphas.d = m.config.d;
  if (alphas_exact) {
    roots_q rq;
    rq.kind = m.config.kind;
    rq.d = m.config.d;
    rq.alpha = *alphas_exact;
    m.alphas_x = rq;
  }
  profile_set& ps = m.profiles;
  ps.d_B = m.config.d_B;
  ps.a = m.a;
  ps.q_top = m.config.q_top();
  ps.beta = m.beta;
  ps.q = poly<real>(q_coeffs);
  if (q_exact) ps.q_x = poly<rat>(*q_exact);
  ps.p_c = poly<real>(pc_coeffs);
  if (pc_exact) ps.p_c_x = poly<rat>(*pc_exact);
  for (size_t j = 0; j < profile_rows.size(); ++j) {
    if (profile_rows[j].empty())
      throw forge_error(errc::parse, "profile " + std::to_string(j) + " has no representation row");
    profile_rep f;
    std::vector<real> row = profile_rows[j];
    f.c = row.back();
    row.pop_back();
    f.P = poly<real>(row);
    if (profile_exact[j]) {
      std::vector<rat> xrow = *profile_exact[j];
      f.exact = true;
      f.c_x = xrow.back();
      xrow.pop_back();
      f.P_x = poly<rat>(xrow);
    }
    if (profile_defl[j]) f.theta_num_r = poly<real>(*profile_defl[j]);
    if (profile_defl_exact[j]) f.theta_num_x = poly<rat>(*profile_defl_exact[j]);
    ps.F.push_back(f);
  }
  if (ps.F.size() != m.alphas.alpha.size())
    throw forge_error(errc::parse, "profile count does not match the root count");
  return doc;
}

void save_model(const std::string& path, const model_document& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw forge_error(errc::parse, "cannot open '" + path + "' for writing");
  out << render_model(doc);
  if (!out) throw forge_error(errc::parse, "write failed on '" + path + "'");
}

model_document load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw forge_error(errc::parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace forge
