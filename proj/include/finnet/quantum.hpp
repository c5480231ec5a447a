#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "finnet/distribution.hpp"
#include "finnet/network.hpp"

namespace finnet {

using CMat = Eigen::MatrixXcd;

/// Bipartite pure source in Schmidt form: |psi> = sum_l lambda_l |l>|l>.
struct QuantumSource {
  std::vector<double> schmidt;  // non-negative, sum of squares = 1
  int dim() const { return static_cast<int>(schmidt.size()); }
};

/// POVM of one party, acting on the tensor product of the subsystems the
/// party receives (incident sources sorted by source index).
struct PartyMeasurement {
  std::vector<CMat> effects;
  int n_outcomes() const { return static_cast<int>(effects.size()); }
};

struct QuantumStrategy {
  Network net;  // bipartite sources only
  std::vector<QuantumSource> sources;
  std::vector<PartyMeasurement> measurements;
};

/// Dimension/normalization/POVM violations (tolerances 1e-12 for Schmidt
/// normalization, 1e-10 for POVM completeness and positivity).
std::vector<std::string> validate_strategy(const QuantumStrategy& qs);

/// Output distribution by Schmidt-form tensor contraction: each source
/// contributes a double index (l, l') and party factors are measurement
/// matrix entries. Float-backed result, normalized within 1e-10.
JointDistribution evaluate_quantum(const QuantumStrategy& qs);

/// <prod_j f_j> = Tr[rho . tensor_j X_j] with X_j = sum_a f_j(a) M_a.
double observable_expectation(const QuantumStrategy& qs,
                              const std::vector<std::vector<double>>& functions);

/// Haar-ish random strategy: random Schmidt vectors, random projective
/// measurements from a QR-orthogonalized complex Gaussian unitary applied to
/// a fixed partition of the computational basis. Deterministic per seed.
QuantumStrategy random_strategy(const Network& net, int local_dim, std::uint64_t seed,
                                int out_alphabet = 2);

/// Entanglement-swapping strategy on the bilocality network: two maximally
/// entangled qubit pairs, a Bell-basis measurement at the middle party,
/// computational-basis measurements at the ends.
QuantumStrategy make_entanglement_swapping();

/// Triangle strategy: three maximally entangled pairs, every party outputs
/// the parity of its two computational-basis results.
QuantumStrategy make_triangle_parity();

}  // namespace finnet
