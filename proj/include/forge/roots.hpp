#pragma once

// Root tuples: the ordered parameters alpha_1 < ... < alpha_ell with their
// multiplicity data d_j, the two admissible sign cases, and the interval
// decomposition each case induces on the real line.
//
// Case 1 ("all-positive"): 0 < alpha_1 < ... < alpha_ell, with coordinate
// intervals (alpha_1,alpha_2) x ... x (alpha_{ell-1},alpha_ell) x (alpha_ell,inf).
// Case 2 ("split-sign"): alpha_1 < ... < alpha_{ell-1} < 0 < alpha_ell, with
// intervals (-inf,alpha_1) x (alpha_1,alpha_2) x ... x (alpha_{ell-2},alpha_{ell-1})
// x (alpha_ell,inf), and d_ell forced to 0.

#include "forge/errors.hpp"
#include "forge/numreal.hpp"
#include "forge/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace forge {

enum class case_kind { type1, type2 };

inline const char* case_name(case_kind k) { return k == case_kind::type1 ? "type1" : "type2"; }

template <class T>
struct interval {
  T lo{};  // ignored when lo_unbounded
  T hi{};  // ignored when hi_unbounded
  bool lo_unbounded = false;
  bool hi_unbounded = false;
};

template <class T>
struct root_tuple {
  case_kind kind = case_kind::type1;
  std::vector<T> alpha;
  std::vector<int> d;

  int ell() const { return static_cast<int>(alpha.size()); }

  // Throws on structural violations. min_gap guards the Delta(alpha_j)
  // divisions downstream (default 1e-8 per the build contract).
  void validate(const rat& min_gap = rat(1, 100000000)) const {
    const int l = ell();
    if (l < 1) throw forge_error(errc::domain_data, "need at least one root");
    if (d.size() != alpha.size())
      throw forge_error(errc::domain_data, "root/multiplicity size mismatch");
    for (int dj : d)
      if (dj < 0) throw forge_error(errc::domain_data, "negative multiplicity d_j");
    T gap = gap_value(min_gap);
    for (int j = 0; j + 1 < l; ++j) {
      if (!(alpha[j + 1] - alpha[j] >= gap)) {
        throw forge_error(errc::domain_data,
                          "roots not strictly increasing with the required minimum gap at index " +
                              std::to_string(j + 1));
      }
    }
    if (kind == case_kind::type1) {
      if (!(alpha[0] > T(0)))
        throw forge_error(errc::domain_data, "case-1 roots must all be positive");
    } else {
      if (l < 2) throw forge_error(errc::domain_data, "case 2 needs at least two roots");
      if (!(alpha[static_cast<size_t>(l) - 2] < T(0)))
        throw forge_error(errc::domain_data, "case-2 roots alpha_1..alpha_{ell-1} must be negative");
      if (!(alpha[static_cast<size_t>(l) - 1] > T(0)))
        throw forge_error(errc::domain_data, "case-2 top root must be positive");
      if (d[static_cast<size_t>(l) - 1] != 0)
        throw forge_error(errc::domain_data, "case 2 requires d_ell = 0");
    }
  }

  // Coordinate interval I_j (1-based j in the math, 0-based here).
  interval<T> coordinate_interval(int j) const {
    const int l = ell();
    interval<T> iv;
    if (kind == case_kind::type1) {
      if (j == l - 1) {
        iv.lo = alpha[static_cast<size_t>(l) - 1];
        iv.hi_unbounded = true;
      } else {
        iv.lo = alpha[static_cast<size_t>(j)];
        iv.hi = alpha[static_cast<size_t>(j) + 1];
      }
    } else {
      if (j == 0) {
        iv.hi = alpha[0];
        iv.lo_unbounded = true;
      } else if (j == l - 1) {
        iv.lo = alpha[static_cast<size_t>(l) - 1];
        iv.hi_unbounded = true;
      } else {
        iv.lo = alpha[static_cast<size_t>(j) - 1];
        iv.hi = alpha[static_cast<size_t>(j)];
      }
    }
    return iv;
  }

  // Required sign of the j-th profile on its interval: (-1)^(ell-j), 1-based j.
  int interval_sign(int j0) const { return ((ell() - (j0 + 1)) % 2 == 0) ? 1 : -1; }

  poly<T> p_c() const { return poly<T>::from_roots(alpha, d); }

  // Delta(alpha_j) = prod_{i != j} (alpha_j - alpha_i), 0-based j.
  T delta_at(int j) const {
    T acc(1);
    for (int i = 0; i < ell(); ++i)
      if (i != j) acc *= alpha[static_cast<size_t>(j)] - alpha[static_cast<size_t>(i)];
    return acc;
  }

 private:
  static T gap_value(const rat& g) {
    if constexpr (std::is_same_v<T, rat>) {
      return g;
    } else {
      return to_real(g);
    }
  }
};

using roots_q = root_tuple<rat>;
using roots_r = root_tuple<real>;

inline roots_r to_real(const roots_q& rq) {
  roots_r rr;
  rr.kind = rq.kind;
  rr.d = rq.d;
  rr.alpha.reserve(rq.alpha.size());
  for (const rat& a : rq.alpha) rr.alpha.push_back(to_real(a));
  return rr;
}

}  // namespace forge
