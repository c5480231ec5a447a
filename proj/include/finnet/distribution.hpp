#pragma once

#include <string>
#include <vector>

#include "finnet/rational.hpp"

namespace finnet {

/// Joint probability table over finite per-party alphabets, stored row-major
/// with the last party's index varying fastest. Two numeric backends: exact
/// rationals or 64-bit floats; mixed-backend operations promote to float.
class JointDistribution {
 public:
  enum class Backend { exact, floating };

  static JointDistribution exact(std::vector<int> alphabets, RatVec probs);
  static JointDistribution floating(std::vector<int> alphabets, std::vector<double> probs);

  Backend backend() const { return backend_; }
  bool is_exact() const { return backend_ == Backend::exact; }
  int arity() const { return static_cast<int>(alphabets_.size()); }
  const std::vector<int>& alphabets() const { return alphabets_; }
  std::size_t size() const { return size_; }

  double p(std::size_t flat) const;
  const Rat& p_rat(std::size_t flat) const;  // exact backend only
  double p(const std::vector<int>& outcome) const { return p(flat_index(outcome)); }
  const Rat& p_rat(const std::vector<int>& outcome) const { return p_rat(flat_index(outcome)); }

  std::size_t flat_index(const std::vector<int>& outcome) const;
  std::vector<int> outcome_of(std::size_t flat) const;

  /// Distribution over the given (nonempty, sorted ascending) party subset.
  JointDistribution marginal(const std::vector<int>& subset) const;

  /// Single-party marginal as a plain vector.
  RatVec marginal_rat(int party) const;                 // exact backend only
  std::vector<double> marginal_float(int party) const;  // either backend

  JointDistribution to_float() const;

  /// Normalization / non-negativity violations (exact check for the exact
  /// backend, 1e-12 for float).
  std::vector<std::string> validate() const;

  bool operator==(const JointDistribution& o) const;

 private:
  JointDistribution() = default;
  std::vector<int> alphabets_;
  Backend backend_ = Backend::exact;
  std::size_t size_ = 0;
  RatVec pr_;
  std::vector<double> pd_;
};

JointDistribution make_uniform(const std::vector<int>& alphabets);
JointDistribution make_delta(const std::vector<int>& alphabets, const std::vector<int>& outcome);
/// (delta_00..0 + delta_11..1)/2 over n binary parties.
JointDistribution make_ghz(int n_parties = 3);
/// (delta_001 + delta_010 + delta_100)/3.
JointDistribution make_w();
/// p delta_000 + q delta_111 + (1-p-q)/6 on the remaining six outcomes.
JointDistribution make_pq(const Rat& p, const Rat& q);
/// r delta_111 + (1-r) uniform, binary three-party.
JointDistribution make_r_mix(const Rat& r);

struct FactorizationReport {
  bool pass = false;
  double max_deviation = 0.0;  // max |P_AC(ac) - P_A(a) P_C(c)|
  bool exact = false;          // verdict established in exact arithmetic
  Rat max_deviation_exact;     // meaningful when exact
};

/// Bilocality causality check on a 3-party distribution: the A,C marginal
/// must factorize when tracing out the middle party B.
FactorizationReport check_bilocal_factorization(const JointDistribution& P, double tol = 1e-10);

}  // namespace finnet
