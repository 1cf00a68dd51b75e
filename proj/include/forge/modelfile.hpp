#pragma once

// Versioned, line-oriented text serialization of a solved model together
// with its certification summary. Exact rationals are written as num/den
// strings; reals are written as sign + hex mantissa + binary exponent
// records, which round-trip bit-identically at the same working precision.
// Lines starting with '#' carry human-readable decimals and are skipped on
// load, so two runs that solve the same problem at the same precision emit
// byte-identical files.

#include "forge/profiles.hpp"
#include "forge/solvers.hpp"

#include <string>

namespace forge {

struct model_document {
  soliton_model model;
  certification cert;
  unsigned bits = 0;  // working precision the document was produced at
};

std::string render_model(const model_document& doc);
model_document parse_model(const std::string& text);

void save_model(const std::string& path, const model_document& doc);
model_document load_model(const std::string& path);

}  // namespace forge
