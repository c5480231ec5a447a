#pragma once

#include <string>
#include <vector>

#include "finnet/rational.hpp"

namespace finnet {

/// A network: parties plus independent sources, each source connecting a
/// subset of at least two parties. With bipartite sources only, the network
/// is a plain graph (sources are edges).
struct Network {
  std::vector<std::string> parties;
  std::vector<std::vector<int>> sources;  // sorted distinct party indices, size >= 2

  int n_parties() const { return static_cast<int>(parties.size()); }
  int n_sources() const { return static_cast<int>(sources.size()); }
  bool bipartite_only() const;

  /// Sources incident to party j, ascending.
  std::vector<int> incident_sources(int party) const;
};

Network make_triangle();
Network make_path3();          // bilocality A-B-C: sources AB, BC
Network make_common_source3(); // one source shared by all three parties
Network make_square();         // 4-cycle: AB, BC, CD, DA

/// Structural violations (bad indices, duplicates, non-minimality). Empty
/// means valid. Violations are data, not errors.
std::vector<std::string> validate_network(const Network& net);

/// True iff eta >= 0 and every per-source weight sum is <= 1.
/// Throws on dimension mismatch.
bool is_fis(const Network& net, const RatVec& eta);

struct FisVertices {
  std::vector<RatVec> vertices;  // lexicographically sorted, duplicate-free
  bool half_integral = false;    // all entries in {0, 1/2, 1}
};

/// All extreme points of the fractional-independent-set polytope.
/// Bipartite-only networks use the half-integral candidate sweep (extreme
/// points of graph FIS polytopes are half-integral); otherwise a general
/// rational vertex enumeration runs (capped at 10 parties).
FisVertices enumerate_extreme_fis(const Network& net, int half_integral_cap = 16);

struct FisOptimum {
  Rat value;    // max costs . eta over the FIS polytope
  RatVec eta;   // primal optimum (a vertex)
  RatVec dual;  // dual optimum c*, one entry per source
};

/// Solves max costs.eta over the FIS polytope together with the dual LP
/// min sum(c) s.t. sum_{i->j} c_i >= costs_j, c >= 0. Exact arithmetic;
/// strong duality and complementary slackness are established before return.
FisOptimum maximize_fis_objective(const Network& net, const RatVec& costs);

}  // namespace finnet
