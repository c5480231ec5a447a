#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finnet/distribution.hpp"
#include "finnet/network.hpp"

namespace finnet {

enum class RibbonStatus { member, member_up_to_search, not_member };

struct NormWitness {
  std::vector<std::vector<double>> functions;  // one non-negative vector per party
  double lhs = 0.0, rhs = 0.0;
};

struct ChannelWitness {
  int u_card = 0;
  std::vector<std::vector<double>> channel;  // channel[outcome][u] = P(u|outcome)
  double deficit_bits = 0.0;                 // sum_j eta_j I(U;A_j) - I(U;all) > 0
};

struct RibbonVerdict {
  RibbonStatus status = RibbonStatus::member_up_to_search;
  std::optional<NormWitness> norm_witness;
  std::optional<ChannelWitness> mi_witness;
};

/// Searches for functions violating <prod f_j> <= prod ||f_j||_{1/eta_j} by
/// alternating closed-form power updates (norms taken w.r.t. the marginals of
/// P). A found violation is re-verified by a separate direct evaluation
/// before not_member is reported; absence of violations is only
/// member_up_to_search (one-sided). The all-zero point is an analytic member.
RibbonVerdict falsify_by_norms(const JointDistribution& P, const std::vector<double>& point,
                               int restarts = 32, int iters = 200, std::uint64_t seed = 1,
                               double tol = 1e-9);

/// Direct evaluation of both sides of the norm inequality (no search).
NormWitness evaluate_norm_inequality(const JointDistribution& P,
                                     const std::vector<double>& point,
                                     const std::vector<std::vector<double>>& functions);

/// Searches for channels P(U|outcomes) violating
/// I(U;all) >= sum_j eta_j I(U;A_j) via a multiplicative fixed-point ascent
/// on the deficit; inits include outcome-copy and per-party-copy channels
/// plus random channels. One-sided, witnesses re-verified independently.
RibbonVerdict falsify_by_mutual_information(const JointDistribution& P,
                                            const std::vector<double>& point, int u_cap = 0,
                                            int restarts = 16, int iters = 150,
                                            std::uint64_t seed = 1, double tol = 1e-9);

/// Deficit in bits of a given channel (independent re-verification path).
double channel_deficit_bits(const JointDistribution& P, const std::vector<double>& point,
                            const std::vector<std::vector<double>>& channel);

/// Finner checks reported in ribbon vocabulary: for each extreme FIS of the
/// network, probability-form violation gives not_member with the indicator
/// witness; otherwise the norm search decides between not_member and
/// member_up_to_search.
std::vector<std::pair<RatVec, RibbonVerdict>> finner_as_ribbon(const Network& net,
                                                               const JointDistribution& P,
                                                               int restarts = 16,
                                                               std::uint64_t seed = 1);

}  // namespace finnet
