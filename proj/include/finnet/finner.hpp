#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finnet/distribution.hpp"
#include "finnet/network.hpp"

namespace finnet {

struct FinnerWitness {
  RatVec eta;
  std::vector<int> outcome;
  double lhs = 0.0;      // P(outcome)
  double rhs = 0.0;      // prod_j marginal_j(outcome_j)^eta_j
  double log_gap = 0.0;  // ln(lhs) - ln(rhs), > 0 means violated
};

struct FinnerReport {
  bool violated = false;
  bool exact = false;              // verdict from exact arithmetic
  bool inconsistent_input = false; // P(a)>0 with a zero marginal factor
  std::optional<FinnerWitness> worst;
  std::vector<FinnerWitness> violations;
  std::size_t checked_outcomes = 0;
  std::size_t checked_fis = 0;
};

/// Checks P(a) <= prod_j marginal_j(a_j)^eta_j for every outcome against
/// every supplied FIS (default: the extreme FIS of the network). Exact for
/// rational P and rational eta: both sides are raised to the lcm of the
/// exponent denominators so the comparison never leaves the rationals.
FinnerReport check_probability_form(const Network& net, const JointDistribution& P,
                                    const std::vector<RatVec>* fis = nullptr,
                                    double log_tol = 1e-9);

struct FunctionFormResult {
  double lhs = 0.0;  // <prod_j f_j> under P
  double rhs = 0.0;  // prod_j ||f_j||_{1/eta_j}, expectations under marginals
  bool satisfied = true;
};

/// Function form: f_j are entrywise non-negative vectors over each party's
/// alphabet. eta_j = 0 uses the sup norm over the marginal's support.
FunctionFormResult check_function_form(const Network& net, const JointDistribution& P,
                                       const RatVec& eta,
                                       const std::vector<std::vector<double>>& functions,
                                       double log_tol = 1e-9);

struct ScanCell {
  double x = 0.0, y = 0.0;       // (p,q), or (r, unused)
  bool violated = false;         // headline verdict serialized to CSV
  bool violated_full = false;    // full check over all outcomes/FIS
  double lhs = 0.0, rhs = 0.0;   // sides of the boundary-driving inequality
  double boundary = 0.0;         // analytic boundary value
};

struct RegionScan {
  int grid_n = 0;
  std::vector<ScanCell> cells;
};

/// Sweeps the family p*delta_000 + q*delta_111 + (1-p-q)*P_diff over the
/// simplex p+q <= 1 on an (n+1)x(n+1) lattice. The per-cell verdict is the
/// inequality at the saturating outcome (0,0,0), whose exact boundary is
/// q = 1 + p - 2 p^(2/3); the full-check verdict is carried alongside.
RegionScan scan_pq_region(int grid_n, int jobs = 1);

/// Sweeps r*delta_111 + (1-r)*P_u over r in [0,1]; verdict is the full
/// check. The violation set is exactly (7/8, 1).
RegionScan scan_r_line(int grid_n, int jobs = 1);

enum class TopologyVerdict { ruled_out, compatible_so_far };

struct TopologyResult {
  TopologyVerdict verdict = TopologyVerdict::compatible_so_far;
  std::optional<FinnerWitness> witness;
  std::string detail;  // factorization info / explicit non-achievability caveat
};

/// Device-independent topology test: a candidate network is ruled out when
/// the distribution violates one of its Finner inequalities or a marginal
/// independence forced by disconnected source neighborhoods. Compatibility
/// never asserts achievability.
std::vector<TopologyResult> certify_topology(const JointDistribution& P,
                                             const std::vector<Network>& candidates,
                                             double tol = 1e-9);

}  // namespace finnet
