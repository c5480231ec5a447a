#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "finnet/distribution.hpp"

namespace finnet {

/// Classical triangle strategy as a labeled unit cube. Axis 0 is the source
/// shared by B,C; axis 1 by A,C; axis 2 by A,B. Party A's face is a grid over
/// (axis-1 cell, axis-2 cell), B's over (axis 0, axis 2), C's over (axis 0,
/// axis 1). Label -1 is the '?' symbol: output chosen uniformly at random.
struct CubeStrategy {
  std::array<RatVec, 3> cuts;  // interior cut positions, strictly increasing in (0,1)
  std::array<std::vector<std::vector<int>>, 3> faces;  // faces[party][row][col]
  int alphabet = 2;

  int cells(int axis) const { return static_cast<int>(cuts[axis].size()) + 1; }
};

/// All-'?' strategy (one cell per axis).
CubeStrategy make_question_cube(int alphabet = 2);

std::vector<std::string> validate_strategy(const CubeStrategy& s);

/// Exact output distribution: cell volumes times per-face label match
/// probabilities (1 on match, 1/alphabet on '?', 0 otherwise).
JointDistribution evaluate_cube(const CubeStrategy& s);

/// Closed form for the corner-subcube contraction of a binary 3-party P.
JointDistribution contract_closed_form(const JointDistribution& P, const Rat& t);

struct ContractionResult {
  JointDistribution distribution;  // P_t
  CubeStrategy strategy;           // corner strategy realizing it
};

/// Builds the strategy whose corner t x t x t subcube follows `s` (rescaled)
/// with '?' elsewhere, evaluates it, and checks it against the closed form
/// exactly before returning.
ContractionResult contract(const JointDistribution& P, const CubeStrategy& s, const Rat& t);

/// The perturbation vector Gamma_{P^(xyz), eps} over the 8 binary outcomes:
/// 8 * (Q - P_u) where Q is the distribution of a cube with one eps-subcube
/// labeled (x,y,z) (entries in {0,1,-1}) and '?' everywhere else.
RatVec gamma_generator(const std::array<int, 3>& labels, const Rat& eps);

/// Rank over Q of the span of the 26 generators (sampled at two eps values).
int gamma_span_rank();

struct BallResult {
  CubeStrategy strategy;
  JointDistribution achieved;  // equals P_u + S exactly
};

/// Realizes P_u + S for a zero-sum rational perturbation S over the 8 binary
/// outcomes by packing labeled subcubes; throws if S is outside the
/// representable radius of the constructive decomposition.
BallResult ball_construction(const RatVec& S);

/// Conservative L1 radius within which ball_construction always succeeds.
Rat ball_radius_l1();

struct GridSearchResult {
  bool exact_hit = false;
  Rat best_l1;              // minimal L1 distance found
  CubeStrategy best;        // lexicographically smallest optimum
  std::uint64_t evaluated = 0;
};

/// Exhaustive search over deterministic label grids with k cells per axis and
/// cut positions on the 1/d lattice. Guarded: label assignments <= 2^24.
GridSearchResult grid_search(const JointDistribution& target, int k, int d,
                             std::uint64_t guard = (1ull << 24));

}  // namespace finnet
