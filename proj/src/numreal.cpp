#include "forge/numreal.hpp"

#include "forge/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace forge {

namespace {
unsigned g_bits = 0;
}

void set_precision_bits(unsigned bits) {
  if (bits < 80) {
    throw forge_error(errc::domain_data,
                      "working precision below the 80-bit floor: " + std::to_string(bits));
  }
  // boost's mpfr wrapper takes decimal digits; over-cover the requested bit
  // count and keep a couple of guard digits.
  unsigned digits10 = static_cast<unsigned>(std::ceil(bits * 0.3010299956639812)) + 2;
  real::default_precision(digits10);
  g_bits = bits;
}

unsigned precision_bits() {
  if (g_bits == 0) set_precision_bits(128);
  return g_bits;
}

real eps_floor() {
  return boost::multiprecision::ldexp(real(1), 4 - static_cast<int>(precision_bits()));
}

real to_real(const rat& q) {
  return to_real(bigint(boost::multiprecision::numerator(q))) /
         to_real(bigint(boost::multiprecision::denominator(q)));
}

real to_real(const bigint& z) {
  return real(z.str());
}

std::string real_to_record(const real& x) {
  if (x == 0) return "z";
  mpfr_srcptr d = x.backend().data();
  if (!mpfr_number_p(d)) {
    throw forge_error(errc::numeric, "cannot serialize a non-finite real");
  }
  mpz_t m;
  mpz_init(m);
  mp_exp_t e = mpfr_get_z_2exp(m, d);
  char* s = mpz_get_str(nullptr, 16, m);
  std::string rec(s);
  std::free(s);
  mpz_clear(m);
  rec += "p";
  rec += std::to_string(static_cast<long long>(e));
  return rec;
}

real record_to_real(const std::string& rec) {
  if (rec == "z") return real(0);
  auto p = rec.find('p');
  if (p == std::string::npos || p == 0 || p + 1 >= rec.size()) {
    throw forge_error(errc::parse, "bad real record: " + rec);
  }
  std::string mant = rec.substr(0, p);
  std::string expo = rec.substr(p + 1);
  bool neg = false;
  if (mant[0] == '-') {
    neg = true;
    mant = mant.substr(1);
  }
  bigint m;
  try {
    m = bigint("0x" + mant);
  } catch (const std::exception&) {
    throw forge_error(errc::parse, "bad mantissa in real record: " + rec);
  }
  long e = 0;
  try {
    e = std::stol(expo);
  } catch (const std::exception&) {
    throw forge_error(errc::parse, "bad exponent in real record: " + rec);
  }
  real r = to_real(m);
  if (neg) r = -r;
  return boost::multiprecision::ldexp(r, static_cast<int>(e));
}

std::string real_to_decimal(const real& x, unsigned digits) {
  return x.str(digits, std::ios_base::scientific);
}

std::string rat_to_string(const rat& q) {
  return bigint(boost::multiprecision::numerator(q)).str() + "/" +
         bigint(boost::multiprecision::denominator(q)).str();
}

rat string_to_rat(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return rat(bigint(s));
    return rat(bigint(s.substr(0, slash)), bigint(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw forge_error(errc::parse, "bad rational literal: " + s);
  }
}

}  // namespace forge
