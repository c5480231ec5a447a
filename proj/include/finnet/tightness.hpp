#pragma once

#include <string>
#include <utility>
#include <vector>

#include "finnet/network.hpp"
#include "finnet/pow2field.hpp"

namespace finnet {

/// Finner-tightness certificate: primal FIS optimum, dual source costs, the
/// party split by dual slackness, the per-party cost splitting, and the
/// explicit classical strategy's joint output distribution saturating
/// P(1..1) = prod_j p_j^eta_j with marginals p_j.
///
/// Exact path: targets are given as exponents e_j = -log2(p_j) (rational,
/// >= 0), and every probability lives in the field Q(2^(1/L)).
struct TightnessCertificate {
  Network net;
  bool exact = true;

  RatVec log2_targets;               // e_j; float path stores the rationalized -log2 p_j
  std::vector<double> targets;       // p_j as doubles (reporting)

  RatVec eta;                        // primal optimum
  RatVec dual;                       // c*, per source
  Rat value;                         // sum_j eta_j e_j = sum_i c_i

  std::vector<int> set_E;            // parties with strict dual slack
  // for each party in E (indexed as in set_E): (source, d_i^(j)) pairs
  std::vector<std::vector<std::pair<int, Rat>>> d_split;

  long L = 1;                        // field level (exact path)
  std::vector<Pow2Ext> joint;        // joint output distribution (exact path)
  std::vector<double> joint_float;   // joint output distribution (both paths)
};

/// Exact path; each target marginal is p_j = 2^(-e_j).
TightnessCertificate build_certificate(const Network& net, const RatVec& log2_targets);

/// Float path for general targets p_j in (0, 1].
TightnessCertificate build_certificate_float(const Network& net, const std::vector<double>& targets);

struct CertCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  bool pass = true;
  std::vector<CertCheck> checks;
};

/// Standalone audit: recomputes the joint distribution by exact enumeration
/// over the X_i and Y_i^(j) variables from the certificate's own fields and
/// checks duality, feasibility, the marginals, the saturation identity, and
/// the full Finner suite on the constructed distribution.
VerifyReport verify_certificate(const TightnessCertificate& cert, double tol = 1e-9);

}  // namespace finnet
