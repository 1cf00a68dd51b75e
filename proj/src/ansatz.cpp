#include "forge/ansatz.hpp"

#include "forge/roots.hpp"

namespace forge {

int ansatz_config::eps_B() const {
  if (kind == case_kind::type2) return -1;
  return ell % 2 == 0 ? 1 : -1;
}

int ansatz_config::eps_j(int j) const {
  if (j < 0 || j >= ell) throw forge_error(errc::domain_data, "eps_j: index out of range");
  int j1 = j + 1;  // 1-based
  if (kind == case_kind::type1) {
    return (ell - j1 + 1) % 2 == 0 ? 1 : -1;
  }
  if (j1 == ell) return -1;
  return (ell - j1) % 2 == 0 ? 1 : -1;
}

long ansatz_config::twist_defect() const {
  long diff = twist_sum() - static_cast<long>(i_B);
  return diff < 0 ? -diff : diff;
}

void ansatz_config::validate() const {
  if (ell < 1) throw forge_error(errc::domain_data, "ell must be at least 1");
  if (d_B < 1) throw forge_error(errc::domain_data, "base dimension must be at least 1");
  if (i_B < 1) throw forge_error(errc::domain_data, "Fano index must be at least 1");
  if (d.size() != static_cast<size_t>(ell) || m.size() != static_cast<size_t>(ell)) {
    throw forge_error(errc::domain_data, "d and m must each have exactly ell entries");
  }
  for (int dj : d)
    if (dj < 0) throw forge_error(errc::domain_data, "multiplicities d_j must be nonnegative");
  for (long mj : m)
    if (mj < 1) throw forge_error(errc::domain_data, "twists m_j must be positive integers");
  if (kind == case_kind::type2) {
    if (ell < 2) throw forge_error(errc::domain_data, "the split-sign case needs ell >= 2");
    if (d.back() != 0)
      throw forge_error(errc::domain_data, "the split-sign case requires d_ell = 0");
    if (cls == soliton_class::shrinking || cls == soliton_class::expanding) {
      throw forge_error(errc::infeasible,
                        "no complete shrinking or expanding soliton exists over the split-sign "
                        "root case in this family (obstruction); only the all-positive case "
                        "admits them");
    }
  }
  long ts = twist_sum();
  switch (cls) {
    case soliton_class::cy:
    case soliton_class::steady:
      if (ts != static_cast<long>(i_B)) {
        throw forge_error(errc::infeasible,
                          "twist budget violated: sum (d_j+1) m_j = " + std::to_string(ts) +
                              " must equal the Fano index " + std::to_string(i_B));
      }
      break;
    case soliton_class::shrinking:
      if (!(ts < static_cast<long>(i_B)) || ts <= 0) {
        throw forge_error(errc::infeasible,
                          "shrinking class needs 0 < sum (d_j+1) m_j < i_B; got " +
                              std::to_string(ts) + " vs i_B = " + std::to_string(i_B));
      }
      break;
    case soliton_class::expanding:
      if (!(ts > static_cast<long>(i_B))) {
        throw forge_error(errc::infeasible,
                          "expanding class needs sum (d_j+1) m_j > i_B; got " +
                              std::to_string(ts) + " vs i_B = " + std::to_string(i_B));
      }
      break;
  }
}

}  // namespace forge
