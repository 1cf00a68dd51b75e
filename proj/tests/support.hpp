#pragma once

// Small shared helpers for the doctest suites: tolerance gaps that avoid
// handing expression templates to the assertion macros, and an exception
// probe that reports which error kind a callable raised.

#include "forge/errors.hpp"
#include "forge/numreal.hpp"

#include <optional>
#include <utility>

namespace forge::testing {

inline real gap(const real& x, const real& y) {
  using std::abs;
  return real(abs(x - y));
}

inline real tol(int exp10) { return pow(real(10), exp10); }

template <class Fn>
std::optional<errc> raised_kind(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const forge_error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace forge::testing
