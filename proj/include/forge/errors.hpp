#pragma once

// Error taxonomy for the whole suite. Every failure mode named by a module
// contract maps onto one of these kinds; the CLI maps kinds onto its exit
// codes (0 pass, 1 numeric/internal failure, 2 infeasible or bad usage).

#include <stdexcept>
#include <string>

namespace forge {

enum class errc {
  domain_data,     // malformed inputs: bad ranges, size mismatches
  construction,    // a build step violated its own postcondition (alternation, deflation)
  interpolation,   // singular interpolation / linear system
  bracketing,      // root bracketing failed on the search grid
  infeasible,      // target outside the provable open range, or an obstructed case
  numeric,         // quadrature disagreement, non-finite values, precision loss
  chart,           // chart Newton / Cauchy-Riemann failures in the oracle
  parse,           // model file or literal parsing
  internal,        // invariant that should be unreachable
};

class forge_error : public std::runtime_error {
 public:
  forge_error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  errc kind() const { return kind_; }

  // CLI exit-code contract.
  int exit_code() const {
    switch (kind_) {
      case errc::infeasible:
      case errc::domain_data:
        return 2;
      default:
        return 1;
    }
  }

 private:
  errc kind_;
};

}  // namespace forge
