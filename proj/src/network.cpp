#include "finnet/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "simplex.hpp"

namespace finnet {

bool Network::bipartite_only() const {
  for (const auto& s : sources)
    if (s.size() != 2) return false;
  return true;
}

std::vector<int> Network::incident_sources(int party) const {
  std::vector<int> out;
  for (int i = 0; i < n_sources(); ++i)
    if (std::find(sources[i].begin(), sources[i].end(), party) != sources[i].end())
      out.push_back(i);
  return out;
}

Network make_triangle() {
  return Network{{"A", "B", "C"}, {{0, 1}, {1, 2}, {0, 2}}};
}

Network make_path3() {
  return Network{{"A", "B", "C"}, {{0, 1}, {1, 2}}};
}

Network make_common_source3() {
  return Network{{"A", "B", "C"}, {{0, 1, 2}}};
}

Network make_square() {
  return Network{{"A", "B", "C", "D"}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
}

std::vector<std::string> validate_network(const Network& net) {
  std::vector<std::string> violations;
  const int n = net.n_parties();
  for (int i = 0; i < net.n_sources(); ++i) {
    const auto& s = net.sources[i];
    if (s.size() < 2) {
      violations.push_back("source " + std::to_string(i) + " connects fewer than 2 parties");
      continue;
    }
    std::set<int> uniq(s.begin(), s.end());
    if (uniq.size() != s.size())
      violations.push_back("source " + std::to_string(i) + " repeats a party index");
    for (int p : s)
      if (p < 0 || p >= n)
        violations.push_back("source " + std::to_string(i) + " references invalid party index " +
                             std::to_string(p));
  }
  // minimality: no source's party set contained in another's
  for (int i = 0; i < net.n_sources(); ++i) {
    std::set<int> si(net.sources[i].begin(), net.sources[i].end());
    for (int j = 0; j < net.n_sources(); ++j) {
      if (i == j) continue;
      std::set<int> sj(net.sources[j].begin(), net.sources[j].end());
      if (std::includes(sj.begin(), sj.end(), si.begin(), si.end()) &&
          (si != sj || i < j)) {
        violations.push_back("minimality violation: source " + std::to_string(i) +
                             " is contained in source " + std::to_string(j));
      }
    }
  }
  return violations;
}

bool is_fis(const Network& net, const RatVec& eta) {
  if (static_cast<int>(eta.size()) != net.n_parties())
    throw std::invalid_argument("is_fis: weight vector size does not match party count");
  for (const auto& w : eta)
    if (w < 0) return false;
  for (const auto& s : net.sources) {
    Rat sum = 0;
    for (int p : s) sum += eta[p];
    if (sum > 1) return false;
  }
  return true;
}

namespace {

void require_valid(const Network& net) {
  auto v = validate_network(net);
  if (!v.empty()) throw std::invalid_argument("invalid network: " + v.front());
}

// Active-constraint rank test: eta is a vertex iff the tight rows (source
// constraints at equality plus zero coordinates) span R^n.
bool is_extreme_point(const Network& net, const RatVec& eta) {
  const int n = net.n_parties();
  RatMat active;
  for (const auto& s : net.sources) {
    Rat sum = 0;
    for (int p : s) sum += eta[p];
    if (sum == 1) {
      RatVec row(n, Rat(0));
      for (int p : s) row[p] = 1;
      active.push_back(std::move(row));
    }
  }
  for (int j = 0; j < n; ++j) {
    if (eta[j] == 0) {
      RatVec row(n, Rat(0));
      row[j] = 1;
      active.push_back(std::move(row));
    }
  }
  return rat_rank(std::move(active)) == n;
}

std::vector<RatVec> enumerate_half_integral(const Network& net) {
  const int n = net.n_parties();
  std::vector<RatVec> out;
  const Rat half(1, 2);
  std::vector<int> digits(n, 0);
  for (;;) {
    RatVec eta(n);
    for (int j = 0; j < n; ++j) eta[j] = digits[j] == 0 ? Rat(0) : (digits[j] == 1 ? half : Rat(1));
    if (is_fis(net, eta) && is_extreme_point(net, eta)) out.push_back(eta);
    int k = n - 1;
    while (k >= 0 && digits[k] == 2) digits[k--] = 0;
    if (k < 0) break;
    ++digits[k];
  }
  return out;
}

// General rational vertex enumeration: all basic feasible points of
// { S eta <= 1, eta >= 0 }.
std::vector<RatVec> enumerate_general(const Network& net) {
  const int n = net.n_parties();
  const int m = net.n_sources();
  if (n > 10)
    throw std::invalid_argument("enumerate_extreme_fis: general path capped at 10 parties");

  RatMat rows;
  RatVec rhs;
  for (const auto& s : net.sources) {
    RatVec row(n, Rat(0));
    for (int p : s) row[p] = 1;
    rows.push_back(std::move(row));
    rhs.push_back(Rat(1));
  }
  for (int j = 0; j < n; ++j) {
    RatVec row(n, Rat(0));
    row[j] = Rat(-1);
    rows.push_back(std::move(row));
    rhs.push_back(Rat(0));
  }

  std::set<RatVec> found;
  const int total = m + n;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    RatMat a(n);
    RatVec b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = rows[pick[i]];
      b[i] = rhs[pick[i]];
    }
    if (auto x = rat_solve(std::move(a), std::move(b))) {
      bool feasible = true;
      for (int r = 0; r < total && feasible; ++r) {
        Rat dot = 0;
        for (int j = 0; j < n; ++j) dot += rows[r][j] * (*x)[j];
        if (dot > rhs[r]) feasible = false;
      }
      if (feasible) found.insert(*x);
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == total - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int i = k + 1; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
  return {found.begin(), found.end()};
}

}  // namespace

FisVertices enumerate_extreme_fis(const Network& net, int half_integral_cap) {
  require_valid(net);
  FisVertices out;
  if (net.bipartite_only() && net.n_sources() > 0) {
    if (net.n_parties() > half_integral_cap)
      throw std::invalid_argument("enumerate_extreme_fis: party count above enumeration cap");
    out.vertices = enumerate_half_integral(net);
  } else if (net.n_sources() == 0) {
    // unconstrained unit box: vertices are all 0/1 vectors
    const int n = net.n_parties();
    if (n > half_integral_cap)
      throw std::invalid_argument("enumerate_extreme_fis: party count above enumeration cap");
    for (long mask = 0; mask < (1L << n); ++mask) {
      RatVec eta(n);
      for (int j = 0; j < n; ++j) eta[j] = (mask >> j) & 1;
      out.vertices.push_back(std::move(eta));
    }
  } else {
    out.vertices = enumerate_general(net);
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  const Rat half(1, 2);
  out.half_integral = true;
  for (const auto& v : out.vertices)
    for (const auto& w : v)
      if (w != 0 && w != half && w != 1) out.half_integral = false;
  return out;
}

FisOptimum maximize_fis_objective(const Network& net, const RatVec& costs) {
  require_valid(net);
  const int n = net.n_parties();
  const int m = net.n_sources();
  if (static_cast<int>(costs.size()) != n)
    throw std::invalid_argument("maximize_fis_objective: cost vector size mismatch");
  for (const auto& c : costs)
    if (c < 0) throw std::invalid_argument("maximize_fis_objective: negative cost");

  RatMat A(m, RatVec(n, Rat(0)));
  for (int i = 0; i < m; ++i)
    for (int p : net.sources[i]) A[i][p] = 1;

  auto primal = detail::simplex_max(A, RatVec(m, Rat(1)), costs);
  if (!primal.feasible || !primal.bounded)
    throw std::logic_error("FIS primal LP must be feasible and bounded");

  // dual: min sum(c) s.t. A^T c >= costs, c >= 0, solved independently as
  // max -sum(c) s.t. -A^T c <= -costs.
  RatMat At(n, RatVec(m, Rat(0)));
  RatVec nb(n), nc(m, Rat(-1));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) At[j][i] = -A[i][j];
    nb[j] = -costs[j];
  }
  auto dual = detail::simplex_max(At, nb, nc);
  if (!dual.feasible || !dual.bounded)
    throw std::logic_error("FIS dual LP must be feasible and bounded");

  if (primal.value != -dual.value)
    throw std::logic_error("strong duality violated in exact arithmetic");

  // complementary slackness cross-check
  for (int j = 0; j < n; ++j) {
    if (primal.x[j] > 0) {
      Rat covered = 0;
      for (int i = 0; i < m; ++i) covered += A[i][j] * dual.x[i];
      if (covered != costs[j])
        throw std::logic_error("complementary slackness violated (party side)");
    }
  }
  for (int i = 0; i < m; ++i) {
    if (dual.x[i] > 0) {
      Rat load = 0;
      for (int j = 0; j < n; ++j) load += A[i][j] * primal.x[j];
      if (load != 1)
        throw std::logic_error("complementary slackness violated (source side)");
    }
  }

  return FisOptimum{primal.value, primal.x, dual.x};
}

}  // namespace finnet
