#include "finnet/finner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "finnet/parallel.hpp"

namespace finnet {

namespace {

double safe_log(double x) { return x > 0 ? std::log(x) : -std::numeric_limits<double>::infinity(); }

// Exact comparison P(a) <= prod m_j^{eta_j}: raise both sides to the lcm L of
// the eta denominators and compare integer powers.
bool exact_violates(const Rat& lhs, const std::vector<Rat>& factors, const RatVec& exponents) {
  Int L = lcm_denominators(exponents);
  long Ll = L.convert_to<long>();
  Rat lhs_pow = rat_pow(lhs, Ll);
  Rat rhs_pow(1);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    Rat kr = exponents[j] * Rat(L);
    Int k = boost::multiprecision::numerator(kr);  // denominator is 1
    rhs_pow *= rat_pow(factors[j], k.convert_to<long>());
  }
  return lhs_pow > rhs_pow;
}

}  // namespace

FinnerReport check_probability_form(const Network& net, const JointDistribution& P,
                                    const std::vector<RatVec>* fis, double log_tol) {
  if (P.arity() != net.n_parties())
    throw std::invalid_argument("check_probability_form: distribution arity does not match network");

  std::vector<RatVec> fis_list;
  if (fis) {
    for (const auto& eta : *fis)
      if (!is_fis(net, eta))
        throw std::invalid_argument("check_probability_form: supplied weights are not a FIS");
    fis_list = *fis;
  } else {
    fis_list = enumerate_extreme_fis(net).vertices;
  }

  const bool exact = P.is_exact();
  const int n = net.n_parties();

  RatVec zero_rat;
  std::vector<RatVec> marg_rat(n);
  std::vector<std::vector<double>> marg_f(n);
  for (int j = 0; j < n; ++j) {
    if (exact) marg_rat[j] = P.marginal_rat(j);
    marg_f[j] = P.marginal_float(j);
  }

  FinnerReport rep;
  rep.exact = exact;
  rep.checked_fis = fis_list.size();

  for (const auto& eta : fis_list) {
    for (std::size_t f = 0; f < P.size(); ++f) {
      ++rep.checked_outcomes;
      auto outcome = P.outcome_of(f);

      // zero rules: outcome of probability zero is trivially satisfied; a
      // positive outcome with a vanishing marginal factor cannot come from a
      // true distribution.
      bool lhs_zero = exact ? (P.p_rat(f) == 0) : (P.p(f) <= 0);
      if (lhs_zero) continue;
      bool rhs_zero = false;
      for (int j = 0; j < n; ++j) {
        if (eta[j] == 0) continue;
        bool mz = exact ? (marg_rat[j][outcome[j]] == 0) : (marg_f[j][outcome[j]] <= 0);
        if (mz) rhs_zero = true;
      }

      FinnerWitness w;
      w.eta = eta;
      w.outcome = outcome;
      w.lhs = P.p(f);
      double log_rhs = 0;
      for (int j = 0; j < n; ++j)
        if (eta[j] != 0) log_rhs += to_double(eta[j]) * safe_log(marg_f[j][outcome[j]]);
      w.rhs = std::exp(log_rhs);
      w.log_gap = safe_log(w.lhs) - log_rhs;

      bool violated;
      if (rhs_zero) {
        rep.inconsistent_input = true;
        violated = true;
        w.rhs = 0.0;
        w.log_gap = std::numeric_limits<double>::infinity();
      } else if (exact) {
        std::vector<Rat> factors;
        RatVec exps;
        for (int j = 0; j < n; ++j) {
          if (eta[j] == 0) continue;
          factors.push_back(marg_rat[j][outcome[j]]);
          exps.push_back(eta[j]);
        }
        violated = exps.empty() ? (P.p_rat(f) > 1) : exact_violates(P.p_rat(f), factors, exps);
      } else {
        violated = w.log_gap > log_tol;
      }

      if (violated) {
        rep.violated = true;
        if (rep.violations.size() < 256) rep.violations.push_back(w);
        if (!rep.worst || w.log_gap > rep.worst->log_gap) rep.worst = w;
      }
    }
  }
  return rep;
}

FunctionFormResult check_function_form(const Network& net, const JointDistribution& P,
                                       const RatVec& eta,
                                       const std::vector<std::vector<double>>& functions,
                                       double log_tol) {
  const int n = net.n_parties();
  if (P.arity() != n) throw std::invalid_argument("check_function_form: arity mismatch");
  if (!is_fis(net, eta)) throw std::invalid_argument("check_function_form: eta is not a FIS");
  if (static_cast<int>(functions.size()) != n)
    throw std::invalid_argument("check_function_form: one function per party required");
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(functions[j].size()) != P.alphabets()[j])
      throw std::invalid_argument("check_function_form: function length mismatch");
    for (double v : functions[j])
      if (v < 0) throw std::invalid_argument("check_function_form: negative function value");
  }

  FunctionFormResult res;
  double lhs = 0;
  for (std::size_t f = 0; f < P.size(); ++f) {
    auto o = P.outcome_of(f);
    double prod = P.p(f);
    for (int j = 0; j < n; ++j) prod *= functions[j][o[j]];
    lhs += prod;
  }
  res.lhs = lhs;

  double rhs = 1;
  for (int j = 0; j < n; ++j) {
    auto m = P.marginal_float(j);
    double e = to_double(eta[j]);
    if (e == 0) {
      double sup = 0;
      for (std::size_t a = 0; a < m.size(); ++a)
        if (m[a] > 0) sup = std::max(sup, functions[j][a]);
      rhs *= sup;
    } else {
      double s = 0;
      for (std::size_t a = 0; a < m.size(); ++a)
        if (m[a] > 0) s += m[a] * std::pow(functions[j][a], 1.0 / e);
      rhs *= std::pow(s, e);
    }
  }
  res.rhs = rhs;
  res.satisfied = !(safe_log(res.lhs) - safe_log(res.rhs) > log_tol);
  return res;
}

RegionScan scan_pq_region(int grid_n, int jobs) {
  if (grid_n < 2) throw std::invalid_argument("scan_pq_region: grid_n >= 2 required");
  const auto net = make_triangle();
  const auto fis = enumerate_extreme_fis(net).vertices;

  std::vector<std::pair<int, int>> points;
  for (int i = 0; i <= grid_n; ++i)
    for (int j = 0; j + i <= grid_n; ++j) points.emplace_back(i, j);

  RegionScan scan;
  scan.grid_n = grid_n;
  scan.cells.resize(points.size());

  parallel_for(points.size(), jobs, [&](std::size_t idx) {
    const Rat p(points[idx].first, grid_n);
    const Rat q(points[idx].second, grid_n);
    auto P = make_pq(p, q);
    ScanCell cell;
    cell.x = to_double(p);
    cell.y = to_double(q);
    // saturating outcome (0,0,0): P(000) = p, all marginals-at-0 = (1+p-q)/2;
    // violated iff 8 p^2 > (1+p-q)^3, the exact form of q > 1+p-2p^(2/3).
    const Rat m0 = (Rat(1) + p - q) / 2;
    cell.violated = 8 * p * p > rat_pow(Rat(1) + p - q, 3);
    cell.lhs = to_double(p);
    cell.rhs = std::pow(to_double(m0), 1.5);
    cell.boundary = 1.0 + to_double(p) - 2.0 * std::pow(to_double(p), 2.0 / 3.0);
    cell.violated_full = check_probability_form(net, P, &fis).violated;
    scan.cells[idx] = cell;
  });
  return scan;
}

RegionScan scan_r_line(int grid_n, int jobs) {
  if (grid_n < 2) throw std::invalid_argument("scan_r_line: grid_n >= 2 required");
  const auto net = make_triangle();
  const auto fis = enumerate_extreme_fis(net).vertices;

  RegionScan scan;
  scan.grid_n = grid_n;
  scan.cells.resize(static_cast<std::size_t>(grid_n) + 1);

  parallel_for(scan.cells.size(), jobs, [&](std::size_t idx) {
    const Rat r(static_cast<long>(idx), grid_n);
    auto P = make_r_mix(r);
    ScanCell cell;
    cell.x = to_double(r);
    cell.y = 0.0;
    bool violated = check_probability_form(net, P, &fis).violated;
    cell.violated = violated;
    cell.violated_full = violated;
    // the inequality that drives the violation interval: outcome (0,0,0)
    cell.lhs = to_double((Rat(1) - r) / 8);
    cell.rhs = std::pow(to_double((Rat(1) - r) / 2), 1.5);
    cell.boundary = 7.0 / 8.0;
    scan.cells[idx] = cell;
  });
  return scan;
}

std::vector<TopologyResult> certify_topology(const JointDistribution& P,
                                             const std::vector<Network>& candidates,
                                             double tol) {
  std::vector<TopologyResult> out;
  for (const auto& net : candidates) {
    if (net.n_parties() != P.arity())
      throw std::invalid_argument("certify_topology: candidate arity mismatch");
    TopologyResult res;
    auto rep = check_probability_form(net, P, nullptr, tol);
    if (rep.violated) {
      res.verdict = TopologyVerdict::ruled_out;
      res.witness = rep.worst;
      res.detail = "Finner inequality violated";
      out.push_back(std::move(res));
      continue;
    }
    // marginal independence: parties with disjoint source neighborhoods must
    // have factorizing pair marginals (the bilocality Eq-(1) constraint).
    bool indep_violated = false;
    std::string detail;
    for (int u = 0; u < net.n_parties() && !indep_violated; ++u) {
      for (int v = u + 1; v < net.n_parties() && !indep_violated; ++v) {
        auto su = net.incident_sources(u), sv = net.incident_sources(v);
        bool share = false;
        for (int i : su)
          if (std::find(sv.begin(), sv.end(), i) != sv.end()) share = true;
        if (share) continue;
        auto pair = P.marginal({u, v});
        double worst = 0;
        auto mu = P.marginal_float(u), mv = P.marginal_float(v);
        int wa = 0, wb = 0;
        for (int a = 0; a < P.alphabets()[u]; ++a)
          for (int b = 0; b < P.alphabets()[v]; ++b) {
            double dev = pair.p({a, b}) - mu[a] * mv[b];
            if (dev > worst) { worst = dev; wa = a; wb = b; }
          }
        if (worst > tol) {
          indep_violated = true;
          FinnerWitness w;
          w.eta = RatVec(P.arity(), Rat(0));
          w.eta[u] = 1;
          w.eta[v] = 1;
          w.outcome = {wa, wb};
          w.lhs = pair.p({wa, wb});
          w.rhs = mu[wa] * mv[wb];
          w.log_gap = safe_log(w.lhs) - safe_log(w.rhs);
          res.witness = w;
          detail = "marginal independence of parties " + net.parties[u] + "," +
                   net.parties[v] + " violated (no shared source)";
        }
      }
    }
    if (indep_violated) {
      res.verdict = TopologyVerdict::ruled_out;
      res.detail = detail;
    } else {
      res.verdict = TopologyVerdict::compatible_so_far;
      res.detail = "necessary conditions pass; achievability is NOT asserted";
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace finnet
