#pragma once

#include <vector>

#include "finnet/rational.hpp"

namespace finnet {

/// Element of Q(2^(1/L)), represented as a polynomial of degree < L in
/// z = 2^(-1/L) modulo z^L - 1/2. The modulus is irreducible over Q (its
/// reciprocal is Eisenstein at 2), so this is a field: exact arithmetic for
/// probabilities of the form 2^(-u/v) and their convex combinations.
class Pow2Ext {
 public:
  Pow2Ext() = default;
  Pow2Ext(long L, const Rat& constant);

  /// 2^(-e) for rational e >= 0 with e*L integral.
  static Pow2Ext pow2_neg(long L, const Rat& e);

  long level() const { return L_; }
  const RatVec& coefficients() const { return c_; }

  Pow2Ext operator+(const Pow2Ext& o) const;
  Pow2Ext operator-(const Pow2Ext& o) const;
  Pow2Ext operator*(const Pow2Ext& o) const;
  Pow2Ext& operator+=(const Pow2Ext& o) { return *this = *this + o; }
  Pow2Ext& operator*=(const Pow2Ext& o) { return *this = *this * o; }
  bool operator==(const Pow2Ext& o) const;

  Pow2Ext inverse() const;  // throws on zero
  bool is_zero() const;
  double to_double() const;

 private:
  long L_ = 1;
  RatVec c_;  // size L_
};

}  // namespace finnet
