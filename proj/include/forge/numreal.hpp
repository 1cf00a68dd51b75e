#pragma once

// Numeric base layer: exact rationals and variable-precision floating point.
// All exact construction happens in `rat`; `real` is used from the solver and
// geometry layers outward. Precision is process-global and must be set before
// any real is constructed (main() or the test runner does this first thing).

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace forge {

using bigint = boost::multiprecision::mpz_int;
using rat = boost::multiprecision::mpq_rational;
using real = boost::multiprecision::mpfr_float;

// Sets the working binary precision. Enforces a floor of 80 bits; the
// default used by the CLI and tests is 128.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

// 2^(4 - precision): a safe "this is numerically zero" floor at the current
// working precision.
real eps_floor();

real to_real(const rat& q);
real to_real(const bigint& z);

// Exact serialization of a finite real as sign + hex mantissa + "p" + binary
// exponent (value = mantissa * 2^exponent), e.g. "-1a2bp-130". Zero is "z".
// Round-trips bit-identically at the same working precision.
std::string real_to_record(const real& x);
real record_to_real(const std::string& rec);

// Human-readable decimal form (not used for round-trips).
std::string real_to_decimal(const real& x, unsigned digits = 24);

std::string rat_to_string(const rat& q);   // "num/den", den always present
rat string_to_rat(const std::string& s);

}  // namespace forge
