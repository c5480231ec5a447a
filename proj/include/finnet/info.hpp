#pragma once

#include <string>
#include <vector>

#include "finnet/rational.hpp"

namespace finnet {

/// One atom of a joint distribution projected onto three (possibly composite)
/// variables X, Y, Z, keyed by opaque strings.
struct CmiAtom {
  std::string x, y, z;
  Rat p;
};

struct CmiResult {
  bool exactly_zero = false;  // established by exact factorization
  Rat max_factorization_dev;  // max |P(xyz)P(z) - P(xz)P(yz)| over atoms
  double bits = 0.0;          // float I(X;Y|Z) in bits
};

/// I(X;Y|Z) over an exact discrete joint. The exact-zero verdict uses the
/// factorization identity P(x,y,z) P(z) = P(x,z) P(y,z), which avoids
/// logarithms entirely; the float value is computed alongside for reporting.
CmiResult conditional_mutual_information(const std::vector<CmiAtom>& atoms);

/// Shannon entropy in bits of a float probability vector (zeros skipped).
double entropy_bits(const std::vector<double>& p);

}  // namespace finnet
