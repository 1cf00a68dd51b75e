#include "forge/quadrature.hpp"

#include <map>
#include <utility>

namespace forge {

namespace {

std::vector<std::pair<real, real>> compute_gl(int order) {
  if (order < 2) throw forge_error(errc::domain_data, "quadrature order too small");
  std::vector<std::pair<real, real>> nw(static_cast<size_t>(order));
  const real one(1);
  real pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  const real tol = eps_floor();
  for (int i = 0; i < order; ++i) {
    // Chebyshev-like seed, then Newton on P_n(x) via the three-term recurrence.
    real x = boost::multiprecision::cos(pi * (real(i) + real(3) / 4) / (real(order) + real(1) / 2));
    real dp(0);
    for (int it = 0; it < 200; ++it) {
      real p0(1), p1 = x;
      for (int k = 2; k <= order; ++k) {
        real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = real(order) * (x * p1 - p0) / (x * x - one);
      real dx = p1 / dp;
      x -= dx;
      if (boost::multiprecision::abs(dx) < tol) break;
    }
    real w = 2 / ((one - x * x) * dp * dp);
    nw[static_cast<size_t>(i)] = {x, w};
  }
  return nw;
}

}  // namespace

const std::vector<std::pair<real, real>>& gauss_legendre(int order) {
  static std::map<std::pair<int, unsigned>, std::vector<std::pair<real, real>>> cache;
  auto key = std::make_pair(order, precision_bits());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_gl(order)).first;
  return it->second;
}

namespace {

real adaptive_rec(const std::function<real(const real&)>& f, const real& lo, const real& hi,
                  const real& abs_tol, int order, int depth) {
  real coarse = integrate_panel(f, lo, hi, order);
  real fine = integrate_panel(f, lo, hi, 2 * order);
  if (boost::multiprecision::abs(fine - coarse) <= abs_tol || depth <= 0) {
    if (depth <= 0 && boost::multiprecision::abs(fine - coarse) > abs_tol * 16) {
      throw forge_error(errc::numeric, "adaptive quadrature failed to converge");
    }
    return fine;
  }
  real mid = (lo + hi) / 2;
  real half_tol = abs_tol / 2;
  return adaptive_rec(f, lo, mid, half_tol, order, depth - 1) +
         adaptive_rec(f, mid, hi, half_tol, order, depth - 1);
}

}  // namespace

real integrate_adaptive(const std::function<real(const real&)>& f, const real& lo,
                        const real& hi, const real& rel_tol, int order, int max_depth) {
  if (lo == hi) return real(0);
  // First pass to size the tolerance: relative to the coarse magnitude with
  // an eps_floor absolute floor (handles genuinely tiny integrals).
  real coarse = integrate_panel(f, lo, hi, 2 * order);
  real scale = boost::multiprecision::abs(coarse);
  if (scale < real(1)) scale = real(1);
  real abs_tol = rel_tol * scale;
  real floor_tol = eps_floor() * scale * 64;
  if (abs_tol < floor_tol) abs_tol = floor_tol;
  return adaptive_rec(f, lo, hi, abs_tol, order, max_depth);
}

}  // namespace forge
