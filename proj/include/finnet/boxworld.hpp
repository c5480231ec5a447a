#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finnet/distribution.hpp"
#include "finnet/info.hpp"
#include "finnet/network.hpp"

namespace finnet {

/// Bipartite no-signaling box P(ab|xy). Tables are stored as exact
/// rationals; float-sourced tables are converted losslessly and tagged so
/// downstream checks use tolerances instead of exact comparisons.
struct NSBox {
  int nx = 2, ny = 2, na = 2, nb = 2;
  RatVec table;  // [x][y][a][b], b fastest
  bool float_origin = false;

  const Rat& p(int x, int y, int a, int b) const {
    return table[((static_cast<std::size_t>(x) * ny + y) * na + a) * nb + b];
  }
  /// Output marginal of the first end, sum_b P(ab|xy); no-signaling makes it
  /// independent of y (validated).
  Rat marginal_a(int x, int y, int a) const;
  Rat marginal_b(int x, int y, int b) const;
};

/// Normalization and two-way no-signaling violations, with indices.
std::vector<std::string> validate_box(const NSBox& box, double tol = 0.0);

NSBox make_pr_box();
/// a = fa(x), b = fb(y) for deterministic local functions given as tables.
NSBox make_local_deterministic(const std::vector<int>& fa, const std::vector<int>& fb,
                               int nx = 2, int ny = 2, int na = 2, int nb = 2);

/// Boxes available in the network: per-source list (a source may distribute
/// several, not necessarily identical, boxes).
struct BoxAssignment {
  std::vector<std::vector<NSBox>> per_source;
};

struct WiringRuleEntry {
  Rat prob;
  int end = 0;    // party-local end index
  int input = 0;
};

struct OutputRuleEntry {
  Rat prob;
  int output = 0;
};

/// Finite lookup-table wiring program for one party: a stochastic choice of
/// (next box, input) per transcript prefix, and a stochastic output map on
/// the full transcript. Transcript keys: steps "(end,input,output)" joined
/// by "|", empty string before the first step.
struct PartyProgram {
  std::map<std::string, std::vector<WiringRuleEntry>> decide;
  std::map<std::string, std::vector<OutputRuleEntry>> output;
  int out_alphabet = 2;
};

struct WiringProgram {
  std::vector<PartyProgram> parties;
};

std::string transcript_key(const std::vector<std::array<int, 3>>& steps);

/// Full local transcript of one party: (end, input, output) in firing order.
struct LocalTranscript {
  std::vector<std::array<int, 3>> steps;
};

struct TranscriptAtom {
  std::vector<LocalTranscript> t;  // one per party
  Rat p;
};

struct TranscriptDistribution {
  Network net;
  std::vector<std::vector<int>> party_ends_source;  // party -> end -> source
  std::vector<std::vector<int>> party_ends_copy;    // party -> end -> copy
  std::vector<std::vector<int>> party_ends_box;     // party -> end -> global box id
  std::vector<TranscriptAtom> atoms;
  bool exact = true;
};

struct WiringResult {
  JointDistribution outputs;
  std::optional<TranscriptDistribution> transcripts;
};

/// Exact enumeration of the joint transcript/output distribution of a
/// wiring. Probability of an atom is the product of all parties' decision
/// probabilities and all boxes' conditional probabilities; the no-signaling
/// invariant makes this independent of end firing order. Guarded at 2^22
/// joint atoms.
WiringResult evaluate_wiring(const Network& net, const BoxAssignment& boxes,
                             const WiringProgram& prog, bool want_transcripts = false,
                             std::uint64_t guard = (1ull << 22));

/// Same distribution via explicit sequential conditioning along a global
/// interleaving of party steps (first box end sampled from its no-signaling
/// marginal, second from the conditional). Used to assert order
/// independence. `order[k]` is the party acting at global step k; each party
/// must appear exactly as often as it has ends.
JointDistribution evaluate_wiring_ordered(const Network& net, const BoxAssignment& boxes,
                                          const WiringProgram& prog,
                                          const std::vector<int>& order);

struct LemmaCheck {
  std::string name;
  CmiResult cmi;
};

/// The no-signaling transcript identities (conditional mutual informations
/// that vanish for any wiring of no-signaling boxes), evaluated exactly on
/// an enumerated transcript distribution.
std::vector<LemmaCheck> check_ns_lemmas(const TranscriptDistribution& td);

/// Checks that conditioned on realized inputs, each box's two-end output
/// table is reproduced exactly; returns violations.
std::vector<std::string> verify_box_marginals(const TranscriptDistribution& td,
                                              const BoxAssignment& boxes);

/// Deterministic wiring: every party feeds `input` to all its ends in
/// ascending end order and outputs the XOR of its box outputs.
WiringProgram make_xor_program(const Network& net, const BoxAssignment& boxes, int input = 0);

/// Random rational NS box: convex mixture of the 24 binary NS-polytope
/// vertices (16 local deterministic + 8 PR variants) with small rational
/// weights. Deterministic per seed.
NSBox random_ns_box(std::uint64_t seed, int denom = 8);

/// Random wiring program over the given boxes; `stochastic` controls whether
/// decision/output rules may branch (with small rational probabilities).
WiringProgram random_wiring(const Network& net, const BoxAssignment& boxes, std::uint64_t seed,
                            bool stochastic);

}  // namespace finnet
