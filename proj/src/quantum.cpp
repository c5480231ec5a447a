#include "finnet/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

#include "finnet/rng.hpp"

namespace finnet {

namespace {

using cd = std::complex<double>;

int party_dim(const QuantumStrategy& qs, int party) {
  int d = 1;
  for (int i : qs.net.incident_sources(party)) d *= qs.sources[i].dim();
  return d;
}

// odometer over mixed radix; returns false when wrapped
bool advance(std::vector<int>& idx, const std::vector<int>& radix) {
  for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
    if (++idx[k] < radix[k]) return true;
    idx[k] = 0;
  }
  return false;
}

}  // namespace

std::vector<std::string> validate_strategy(const QuantumStrategy& qs) {
  std::vector<std::string> out;
  if (!qs.net.bipartite_only()) out.push_back("network must have bipartite sources only");
  if (static_cast<int>(qs.sources.size()) != qs.net.n_sources())
    out.push_back("source count mismatch");
  if (static_cast<int>(qs.measurements.size()) != qs.net.n_parties())
    out.push_back("measurement count mismatch");
  if (!out.empty()) return out;

  for (int i = 0; i < qs.net.n_sources(); ++i) {
    double s2 = 0;
    for (double l : qs.sources[i].schmidt) {
      if (l < 0) out.push_back("source " + std::to_string(i) + " has a negative Schmidt coefficient");
      s2 += l * l;
    }
    if (std::abs(s2 - 1.0) > 1e-12)
      out.push_back("source " + std::to_string(i) + " Schmidt vector not normalized");
  }
  for (int j = 0; j < qs.net.n_parties(); ++j) {
    const int d = party_dim(qs, j);
    const auto& meas = qs.measurements[j];
    if (meas.n_outcomes() < 1) {
      out.push_back("party " + std::to_string(j) + " has no outcomes");
      continue;
    }
    CMat sum = CMat::Zero(d, d);
    for (const auto& m : meas.effects) {
      if (m.rows() != d || m.cols() != d) {
        out.push_back("party " + std::to_string(j) + " effect dimension mismatch");
        continue;
      }
      if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        out.push_back("party " + std::to_string(j) + " effect not Hermitian");
      Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -1e-10)
        out.push_back("party " + std::to_string(j) + " effect not positive semidefinite");
      sum += m;
    }
    if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
      out.push_back("party " + std::to_string(j) + " effects do not sum to identity");
  }
  return out;
}

JointDistribution evaluate_quantum(const QuantumStrategy& qs) {
  auto bad = validate_strategy(qs);
  if (!bad.empty()) throw std::invalid_argument("evaluate_quantum: " + bad.front());

  const int n = qs.net.n_parties();
  const int m = qs.net.n_sources();

  std::vector<int> dims(m);
  for (int i = 0; i < m; ++i) dims[i] = qs.sources[i].dim();

  // party -> incident sources (ascending; defines subsystem order)
  std::vector<std::vector<int>> inc(n);
  for (int j = 0; j < n; ++j) inc[j] = qs.net.incident_sources(j);

  std::vector<int> alphabets(n);
  for (int j = 0; j < n; ++j) alphabets[j] = qs.measurements[j].n_outcomes();
  std::size_t out_size = 1;
  for (int k : alphabets) out_size *= static_cast<std::size_t>(k);
  std::vector<double> table(out_size, 0.0);

  // double odometer over (l, l') across sources
  std::vector<int> l(m, 0), lp(m, 0);
  std::vector<int> radix(dims);
  std::vector<cd> party_entry(n);
  do {
    std::fill(lp.begin(), lp.end(), 0);
    do {
      double coeff = 1.0;
      for (int i = 0; i < m; ++i) coeff *= qs.sources[i].schmidt[l[i]] * qs.sources[i].schmidt[lp[i]];
      if (coeff == 0.0) continue;
      // matrix entry index per party: row from l' ends, column from l ends
      std::vector<int> row(n, 0), col(n, 0);
      for (int j = 0; j < n; ++j) {
        for (int i : inc[j]) {
          row[j] = row[j] * dims[i] + lp[i];
          col[j] = col[j] * dims[i] + l[i];
        }
      }
      // accumulate coeff * prod_j M_aj(row_j, col_j) into all outcomes
      std::vector<int> a(n, 0);
      do {
        cd prod(coeff, 0.0);
        for (int j = 0; j < n; ++j) {
          prod *= qs.measurements[j].effects[a[j]](row[j], col[j]);
          if (prod == cd(0.0, 0.0)) break;
        }
        std::size_t idx = 0;
        for (int j = 0; j < n; ++j) idx = idx * alphabets[j] + a[j];
        table[idx] += prod.real();  // imaginary parts cancel over the full sum
      } while (advance(a, alphabets));
    } while (advance(lp, radix));
  } while (advance(l, radix));

  double total = 0;
  for (auto& v : table) {
    if (v < 0 && v > -1e-10) v = 0;
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::logic_error("evaluate_quantum: output normalization off by " +
                           std::to_string(total - 1.0));
  return JointDistribution::floating(alphabets, std::move(table));
}

double observable_expectation(const QuantumStrategy& qs,
                              const std::vector<std::vector<double>>& functions) {
  const int n = qs.net.n_parties();
  if (static_cast<int>(functions.size()) != n)
    throw std::invalid_argument("observable_expectation: one function per party");
  QuantumStrategy obs = qs;
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(functions[j].size()) != qs.measurements[j].n_outcomes())
      throw std::invalid_argument("observable_expectation: function length mismatch");
  }
  // X_j = sum_a f_j(a) M_a, evaluated by the same contraction with a single
  // pseudo-outcome per party
  const int m = qs.net.n_sources();
  std::vector<int> dims(m);
  for (int i = 0; i < m; ++i) dims[i] = qs.sources[i].dim();
  std::vector<std::vector<int>> inc(n);
  for (int j = 0; j < n; ++j) inc[j] = qs.net.incident_sources(j);

  std::vector<CMat> X(n);
  for (int j = 0; j < n; ++j) {
    const int d = qs.measurements[j].effects[0].rows();
    X[j] = CMat::Zero(d, d);
    for (int a = 0; a < qs.measurements[j].n_outcomes(); ++a)
      X[j] += functions[j][a] * qs.measurements[j].effects[a];
  }

  cd acc(0, 0);
  std::vector<int> l(m, 0), lp(m, 0);
  do {
    std::fill(lp.begin(), lp.end(), 0);
    do {
      double coeff = 1.0;
      for (int i = 0; i < m; ++i) coeff *= qs.sources[i].schmidt[l[i]] * qs.sources[i].schmidt[lp[i]];
      if (coeff == 0.0) continue;
      cd prod(coeff, 0.0);
      for (int j = 0; j < n; ++j) {
        int row = 0, col = 0;
        for (int i : inc[j]) {
          row = row * dims[i] + lp[i];
          col = col * dims[i] + l[i];
        }
        prod *= X[j](row, col);
      }
      acc += prod;
    } while (advance(lp, dims));
  } while (advance(l, dims));

  if (std::abs(acc.imag()) > 1e-9)
    throw std::logic_error("observable_expectation: non-real expectation");
  return acc.real();
}

namespace {

CMat random_unitary(int d, Rng& rng) {
  CMat g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = cd(rng.normal(), rng.normal());
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c) {
    cd diag = r(c, c);
    cd phase = std::abs(diag) > 0 ? diag / std::abs(diag) : cd(1, 0);
    q.col(c) *= phase;
  }
  return q;
}

}  // namespace

QuantumStrategy random_strategy(const Network& net, int local_dim, std::uint64_t seed,
                                int out_alphabet) {
  if (local_dim < 1) throw std::invalid_argument("random_strategy: local_dim >= 1");
  if (!net.bipartite_only()) throw std::invalid_argument("random_strategy: bipartite sources only");
  Rng rng(seed);
  QuantumStrategy qs;
  qs.net = net;
  for (int i = 0; i < net.n_sources(); ++i) {
    std::vector<double> lam(local_dim);
    double s2 = 0;
    for (auto& v : lam) {
      v = std::abs(rng.normal()) + 1e-3;
      s2 += v * v;
    }
    for (auto& v : lam) v /= std::sqrt(s2);
    qs.sources.push_back({std::move(lam)});
  }
  for (int j = 0; j < net.n_parties(); ++j) {
    int d = 1;
    for (int i : net.incident_sources(j)) d *= qs.sources[i].dim();
    const int k = std::min(out_alphabet, d);
    CMat u = random_unitary(d, rng);
    PartyMeasurement meas;
    for (int a = 0; a < k; ++a) meas.effects.push_back(CMat::Zero(d, d));
    for (int b = 0; b < d; ++b) {
      // round-robin partition of the rotated basis into outcomes
      meas.effects[b % k] += u.col(b) * u.col(b).adjoint();
    }
    qs.measurements.push_back(std::move(meas));
  }
  return qs;
}

QuantumStrategy make_entanglement_swapping() {
  const double s = 1.0 / std::sqrt(2.0);
  QuantumStrategy qs;
  qs.net = make_path3();
  qs.sources = {{{s, s}}, {{s, s}}};

  PartyMeasurement comp;
  for (int a = 0; a < 2; ++a) {
    CMat m = CMat::Zero(2, 2);
    m(a, a) = 1;
    comp.effects.push_back(m);
  }

  // Bell basis on C^2 (x) C^2: |phi+->|, |psi+->
  PartyMeasurement bell;
  auto bell_vec = [&](int idx) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    switch (idx) {
      case 0: v(0) = s; v(3) = s; break;    // phi+
      case 1: v(0) = s; v(3) = -s; break;   // phi-
      case 2: v(1) = s; v(2) = s; break;    // psi+
      default: v(1) = s; v(2) = -s; break;  // psi-
    }
    return v;
  };
  for (int b = 0; b < 4; ++b) {
    auto v = bell_vec(b);
    bell.effects.push_back(v * v.adjoint());
  }

  qs.measurements = {comp, bell, comp};
  return qs;
}

QuantumStrategy make_triangle_parity() {
  const double s = 1.0 / std::sqrt(2.0);
  QuantumStrategy qs;
  qs.net = make_triangle();
  qs.sources = {{{s, s}}, {{s, s}}, {{s, s}}};
  for (int j = 0; j < 3; ++j) {
    PartyMeasurement parity;
    for (int a = 0; a < 2; ++a) parity.effects.push_back(CMat::Zero(4, 4));
    for (int b = 0; b < 4; ++b) {
      int bits = ((b >> 1) & 1) ^ (b & 1);
      parity.effects[bits](b, b) = 1;
    }
    qs.measurements.push_back(std::move(parity));
  }
  return qs;
}

}  // namespace finnet
