#pragma once

// The discrete problem data: root case, soliton class, fiber shape
// (ell, d_j), base invariants (d_B, i_B), target twists m_j, and the sign
// constants the ansatz attaches to the base and fiber blocks.

#include "forge/errors.hpp"
#include "forge/numreal.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace forge {

enum class soliton_class { cy, steady, shrinking, expanding };

inline const char* class_name(soliton_class c) {
  switch (c) {
    case soliton_class::cy: return "cy";
    case soliton_class::steady: return "steady";
    case soliton_class::shrinking: return "shrinking";
    case soliton_class::expanding: return "expanding";
  }
  return "?";
}

enum class case_kind;  // from roots.hpp

struct ansatz_config {
  case_kind kind{};
  soliton_class cls = soliton_class::cy;
  int ell = 2;
  int d_B = 1;              // complex dimension of the base
  int i_B = 2;              // Fano index of the base
  std::vector<int> d;       // fiber multiplicities d_j >= 0, size ell
  std::vector<long> m;      // target twists m_j >= 1, size ell
  real a{0};                // soliton rate: 0 (cy), > 0 (steady/expanding), < 0 (shrinking, solved)

  // Leading coefficient of q forced by the class.
  int q_top() const {
    switch (cls) {
      case soliton_class::shrinking: return -1;
      case soliton_class::expanding: return 1;
      default: return 0;
    }
  }

  int eps_B() const;
  // Sign eps_j attached to the j-th root block (0-based j); the assignment
  // that makes eps_j * p_nc(alpha_j) > 0 on the coordinate domain.
  int eps_j(int j) const;

  // Required q(0) = -eps_B * i_B, uniform across cases and classes.
  long q_zero() const { return -static_cast<long>(eps_B()) * i_B; }

  int fiber_rank() const {
    return ell + std::accumulate(d.begin(), d.end(), 0);
  }
  int total_dim() const { return d_B + fiber_rank(); }

  long twist_sum() const {
    long s = 0;
    for (size_t j = 0; j < m.size(); ++j) s += (d[j] + 1) * m[j];
    return s;
  }

  // b = |twist_sum - i_B| for the non-steady soliton classes.
  long twist_defect() const;

  // Structural validation incl. the class budget rules and the split-sign
  // shrinker/expander obstruction. Throws domain/infeasible errors.
  void validate() const;
};

}  // namespace forge
