#pragma once

// Univariate polynomials over an exact or floating scalar, plus elementary
// symmetric functions. Coefficients are stored ascending (index = power).
// Over `rat` every operation here is exact; nothing in this header rounds.

#include "forge/errors.hpp"
#include "forge/numreal.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace forge {

template <class T>
class poly {
 public:
  poly() = default;
  explicit poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static poly constant(const T& v) { return poly(std::vector<T>{v}); }
  static poly monomial(int power, const T& v) {
    std::vector<T> c(static_cast<size_t>(power) + 1, T(0));
    c.back() = v;
    return poly(std::move(c));
  }

  // Builds prod_j (t - roots[j])^mult[j]; mult omitted means all ones.
  static poly from_roots(const std::vector<T>& roots, const std::vector<int>& mult = {}) {
    poly p = constant(T(1));
    for (size_t j = 0; j < roots.size(); ++j) {
      int mj = mult.empty() ? 1 : mult[j];
      poly lin(std::vector<T>{-roots[j], T(1)});
      for (int k = 0; k < mj; ++k) p = p * lin;
    }
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 = zero poly
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return T(0);
    return c_[static_cast<size_t>(k)];
  }

  T operator()(const T& t) const {
    T acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
  }

  poly derivative() const {
    if (c_.size() <= 1) return poly();
    std::vector<T> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<int>(i));
    return poly(std::move(d));
  }

  poly derivative(int order) const {
    poly p = *this;
    for (int k = 0; k < order; ++k) p = p.derivative();
    return p;
  }

  // Antiderivative with zero constant term.
  poly antiderivative() const {
    if (c_.empty()) return poly();
    std::vector<T> a(c_.size() + 1, T(0));
    for (size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / T(static_cast<int>(i) + 1);
    return poly(std::move(a));
  }

  poly operator-() const {
    std::vector<T> r = c_;
    for (auto& x : r) x = -x;
    return poly(std::move(r));
  }

  friend poly operator+(const poly& a, const poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return poly(std::move(r));
  }
  friend poly operator-(const poly& a, const poly& b) { return a + (-b); }
  friend poly operator*(const poly& a, const poly& b) {
    if (a.c_.empty() || b.c_.empty()) return poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return poly(std::move(r));
  }
  friend poly operator*(const T& s, const poly& a) {
    std::vector<T> r = a.c_;
    for (auto& x : r) x = s * x;
    return poly(std::move(r));
  }

  friend bool operator==(const poly& a, const poly& b) { return a.c_ == b.c_; }

  // Long division; returns (quotient, remainder). T must be a field type.
  friend std::pair<poly, poly> divmod(const poly& num, const poly& den) {
    if (den.is_zero()) throw forge_error(errc::domain_data, "polynomial division by zero");
    std::vector<T> r = num.c_;
    int dn = den.degree();
    if (num.degree() < dn) return {poly(), num};
    std::vector<T> q(static_cast<size_t>(num.degree() - dn) + 1, T(0));
    const T& lead = den.c_.back();
    for (int k = num.degree() - dn; k >= 0; --k) {
      T f = r[static_cast<size_t>(k + dn)] / lead;
      q[static_cast<size_t>(k)] = f;
      if (f != T(0)) {
        for (int i = 0; i <= dn; ++i)
          r[static_cast<size_t>(k + i)] -= f * den.c_[static_cast<size_t>(i)];
      }
    }
    return {poly(std::move(q)), poly(std::move(r))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

inline poly<real> to_real(const poly<rat>& p) {
  std::vector<real> c(p.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = to_real(p.coeffs()[i]);
  return poly<real>(std::move(c));
}

// All elementary symmetric functions e_0..e_n of the given values.
template <class T>
std::vector<T> elem_symmetric_all(const std::vector<T>& values) {
  std::vector<T> e(values.size() + 1, T(0));
  e[0] = T(1);
  size_t used = 0;
  for (const T& x : values) {
    ++used;
    for (size_t k = std::min(used, e.size() - 1); k >= 1; --k) e[k] += x * e[k - 1];
  }
  return e;
}

template <class T>
T elem_symmetric(const std::vector<T>& values, int r) {
  if (r < 0 || r > static_cast<int>(values.size())) {
    throw forge_error(errc::domain_data,
                      "elementary symmetric index out of range: " + std::to_string(r));
  }
  return elem_symmetric_all(values)[static_cast<size_t>(r)];
}

// sigma_r of the values with index `skip` (0-based) omitted.
template <class T>
T elem_symmetric_hat(const std::vector<T>& values, int r, int skip) {
  if (skip < 0 || skip >= static_cast<int>(values.size())) {
    throw forge_error(errc::domain_data, "hat index out of range: " + std::to_string(skip));
  }
  std::vector<T> v;
  v.reserve(values.size() - 1);
  for (int i = 0; i < static_cast<int>(values.size()); ++i)
    if (i != skip) v.push_back(values[static_cast<size_t>(i)]);
  return elem_symmetric(v, r);
}

}  // namespace forge
