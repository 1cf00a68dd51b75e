#include "forge/linsolve.hpp"

#include "forge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace forge {

// Cyclic Jacobi rotations; adequate for the small symmetric matrices that
// arise here (dimension a few times the number of coordinate intervals).
std::vector<real> jacobi_eigenvalues(rmatrix a, int sweeps) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw forge_error(errc::internal, "jacobi_eigenvalues: matrix not square");
  if (n == 0) return {};

  real scale{0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, real(abs(a[i][j])));
  if (scale == 0) return std::vector<real>(n, real{0});
  const real stop = scale * eps_floor();

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    real off{0};
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, real(abs(a[p][q])));
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (abs(a[p][q]) <= stop) continue;
        const real theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        real t;
        if (abs(theta) > real{1} / eps_floor()) {
          t = 1 / (2 * theta);
        } else {
          t = 1 / (abs(theta) + sqrt(theta * theta + 1));
          if (theta < 0) t = -t;
        }
        const real c = 1 / sqrt(t * t + 1);
        const real s = t * c;
        const real tau = s / (1 + c);

        const real apq = a[p][q];
        a[p][p] -= t * apq;
        a[q][q] += t * apq;
        a[p][q] = 0;
        a[q][p] = 0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const real akp = a[k][p];
          const real akq = a[k][q];
          a[k][p] = akp - s * (akq + tau * akp);
          a[p][k] = a[k][p];
          a[k][q] = akq + s * (akp - tau * akq);
          a[q][k] = a[k][q];
        }
      }
    }
  }

  std::vector<real> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace forge
