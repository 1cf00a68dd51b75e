#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "forge/numreal.hpp"

// Working precision is process-global and must be pinned before any real is
// constructed; every frozen tolerance in the suites assumes 128 bits.
int main(int argc, char** argv) {
  forge::set_precision_bits(128);
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  return context.run();
}
