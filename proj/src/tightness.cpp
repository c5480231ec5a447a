#include "finnet/tightness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "finnet/distribution.hpp"
#include "finnet/finner.hpp"

namespace finnet {

namespace {

struct SplitResult {
  std::vector<int> set_E;
  std::vector<std::vector<std::pair<int, Rat>>> d_split;
};

// Dual-slackness split and the greedy water-filling choice of d_i^(j):
// ascending source order, each d takes min(c_i, what is still needed).
SplitResult split_parties(const Network& net, const RatVec& log2_targets, const RatVec& dual) {
  SplitResult out;
  for (int j = 0; j < net.n_parties(); ++j) {
    Rat covered(0);
    for (int i : net.incident_sources(j)) covered += dual[i];
    if (covered > log2_targets[j]) {
      out.set_E.push_back(j);
      std::vector<std::pair<int, Rat>> ds;
      Rat remaining = log2_targets[j];
      for (int i : net.incident_sources(j)) {
        Rat d = std::min(dual[i], remaining);
        ds.emplace_back(i, d);
        remaining -= d;
      }
      if (remaining != 0) throw std::logic_error("tightness: water-filling failed");
      out.d_split.push_back(std::move(ds));
    } else if (covered != log2_targets[j]) {
      throw std::logic_error("tightness: dual infeasible at a party");
    }
  }
  return out;
}

// Exact enumeration over the source Bernoullis X_i and the coupled Y_i^(j).
std::vector<Pow2Ext> enumerate_joint_exact(const Network& net, const RatVec& dual,
                                           const std::vector<int>& set_E,
                                           const std::vector<std::vector<std::pair<int, Rat>>>& d_split,
                                           long L) {
  const int n = net.n_parties();
  const int m = net.n_sources();
  const Pow2Ext one(L, Rat(1));

  std::vector<Pow2Ext> px1(m, one);
  for (int i = 0; i < m; ++i) px1[i] = Pow2Ext::pow2_neg(L, dual[i]);

  struct YVar {
    int party_slot;  // index into set_E
    int source;
    Pow2Ext q1;  // P(Y=1 | X=0); only used when dual[source] > 0
  };
  std::vector<YVar> yvars;
  for (std::size_t k = 0; k < set_E.size(); ++k) {
    for (const auto& [i, d] : d_split[k]) {
      YVar y;
      y.party_slot = static_cast<int>(k);
      y.source = i;
      if (dual[i] > 0) {
        Pow2Ext pd = Pow2Ext::pow2_neg(L, d);
        Pow2Ext pc = px1[i];
        y.q1 = (pd - pc) * (one - pc).inverse();
      } else {
        y.q1 = Pow2Ext(L, Rat(0));  // unused: X_i = 1 almost surely
      }
      yvars.push_back(std::move(y));
    }
  }

  std::vector<int> party_slot_of(n, -1);
  for (std::size_t k = 0; k < set_E.size(); ++k) party_slot_of[set_E[k]] = static_cast<int>(k);

  std::vector<Pow2Ext> joint(static_cast<std::size_t>(1) << n, Pow2Ext(L, Rat(0)));

  for (unsigned long xmask = 0; xmask < (1ul << m); ++xmask) {
    Pow2Ext wx = one;
    bool dead = false;
    for (int i = 0; i < m && !dead; ++i) {
      if (xmask & (1ul << i)) {
        wx *= px1[i];
      } else {
        Pow2Ext w0 = one - px1[i];
        if (w0.is_zero()) dead = true;
        wx *= w0;
      }
    }
    if (dead || wx.is_zero()) continue;

    // branch over Y vars whose source came up X=0
    std::vector<int> free_y;
    for (std::size_t v = 0; v < yvars.size(); ++v)
      if (!(xmask & (1ul << yvars[v].source))) free_y.push_back(static_cast<int>(v));

    std::vector<int> yval(yvars.size(), 1);  // X=1 forces Y=1
    std::function<void(std::size_t, const Pow2Ext&)> rec = [&](std::size_t t, const Pow2Ext& w) {
      if (t == free_y.size()) {
        // outputs
        std::size_t idx = 0;
        for (int j = 0; j < n; ++j) {
          int a = 1;
          if (party_slot_of[j] < 0) {
            for (int i : net.incident_sources(j))
              if (!(xmask & (1ul << i))) a = 0;
          } else {
            for (std::size_t v = 0; v < yvars.size(); ++v)
              if (yvars[v].party_slot == party_slot_of[j] && yval[v] == 0) a = 0;
          }
          idx = idx * 2 + static_cast<std::size_t>(a);
        }
        joint[idx] += w;
        return;
      }
      const int v = free_y[t];
      if (!yvars[v].q1.is_zero()) {
        yval[v] = 1;
        rec(t + 1, w * yvars[v].q1);
      }
      Pow2Ext q0 = one - yvars[v].q1;
      if (!q0.is_zero()) {
        yval[v] = 0;
        rec(t + 1, w * q0);
      }
      yval[v] = 1;
    };
    rec(0, wx);
  }
  return joint;
}

std::vector<double> enumerate_joint_float(const Network& net, const RatVec& dual,
                                          const std::vector<int>& set_E,
                                          const std::vector<std::vector<std::pair<int, Rat>>>& d_split) {
  const int n = net.n_parties();
  const int m = net.n_sources();

  std::vector<double> px1(m);
  for (int i = 0; i < m; ++i) px1[i] = std::exp2(-to_double(dual[i]));

  struct YVar {
    int party_slot;
    int source;
    double q1;
  };
  std::vector<YVar> yvars;
  for (std::size_t k = 0; k < set_E.size(); ++k)
    for (const auto& [i, d] : d_split[k]) {
      double pd = std::exp2(-to_double(d));
      double pc = px1[i];
      yvars.push_back({static_cast<int>(k), i, pc < 1.0 ? (pd - pc) / (1.0 - pc) : 0.0});
    }

  std::vector<int> party_slot_of(n, -1);
  for (std::size_t k = 0; k < set_E.size(); ++k) party_slot_of[set_E[k]] = static_cast<int>(k);

  std::vector<double> joint(static_cast<std::size_t>(1) << n, 0.0);
  for (unsigned long xmask = 0; xmask < (1ul << m); ++xmask) {
    double wx = 1;
    for (int i = 0; i < m; ++i) wx *= (xmask & (1ul << i)) ? px1[i] : 1.0 - px1[i];
    if (wx == 0) continue;
    std::vector<int> free_y;
    for (std::size_t v = 0; v < yvars.size(); ++v)
      if (!(xmask & (1ul << yvars[v].source))) free_y.push_back(static_cast<int>(v));
    std::vector<int> yval(yvars.size(), 1);
    std::function<void(std::size_t, double)> rec = [&](std::size_t t, double w) {
      if (w == 0) return;
      if (t == free_y.size()) {
        std::size_t idx = 0;
        for (int j = 0; j < n; ++j) {
          int a = 1;
          if (party_slot_of[j] < 0) {
            for (int i : net.incident_sources(j))
              if (!(xmask & (1ul << i))) a = 0;
          } else {
            for (std::size_t v = 0; v < yvars.size(); ++v)
              if (yvars[v].party_slot == party_slot_of[j] && yval[v] == 0) a = 0;
          }
          idx = idx * 2 + static_cast<std::size_t>(a);
        }
        joint[idx] += w;
        return;
      }
      const int v = free_y[t];
      yval[v] = 1;
      rec(t + 1, w * yvars[v].q1);
      yval[v] = 0;
      rec(t + 1, w * (1.0 - yvars[v].q1));
      yval[v] = 1;
    };
    rec(0, wx);
  }
  return joint;
}

long compute_level(const Network& net, const RatVec& log2_targets, const RatVec& dual,
                   const std::vector<std::vector<std::pair<int, Rat>>>& d_split, const Rat& value) {
  RatVec all = log2_targets;
  all.insert(all.end(), dual.begin(), dual.end());
  for (const auto& ds : d_split)
    for (const auto& [i, d] : ds) {
      (void)i;
      all.push_back(d);
    }
  all.push_back(value);
  Int L = lcm_denominators(all);
  if (L > 4096) throw std::invalid_argument("tightness: field level exceeds guard (4096)");
  (void)net;
  return L.convert_to<long>();
}

}  // namespace

TightnessCertificate build_certificate(const Network& net, const RatVec& log2_targets) {
  if (static_cast<int>(log2_targets.size()) != net.n_parties())
    throw std::invalid_argument("build_certificate: one exponent per party required");
  for (const auto& e : log2_targets)
    if (e < 0) throw std::invalid_argument("build_certificate: exponents must be >= 0");
  if (net.n_sources() > 24 || net.n_parties() > 24)
    throw std::invalid_argument("build_certificate: network too large for enumeration");

  TightnessCertificate cert;
  cert.net = net;
  cert.exact = true;
  cert.log2_targets = log2_targets;
  for (const auto& e : log2_targets) cert.targets.push_back(std::exp2(-to_double(e)));

  auto opt = maximize_fis_objective(net, log2_targets);
  cert.eta = opt.eta;
  cert.dual = opt.dual;
  cert.value = opt.value;

  auto split = split_parties(net, log2_targets, cert.dual);
  cert.set_E = split.set_E;
  cert.d_split = split.d_split;

  // every source with positive cost must touch a tight-constraint party,
  // else the dual were not optimal
  for (int i = 0; i < net.n_sources(); ++i) {
    if (cert.dual[i] == 0) continue;
    bool touches_F = false;
    for (int j : net.sources[i])
      if (std::find(cert.set_E.begin(), cert.set_E.end(), j) == cert.set_E.end())
        touches_F = true;
    if (!touches_F) throw std::logic_error("build_certificate: source not covered by a tight party");
  }

  cert.L = compute_level(net, log2_targets, cert.dual, cert.d_split, cert.value);
  cert.joint = enumerate_joint_exact(net, cert.dual, cert.set_E, cert.d_split, cert.L);
  for (const auto& v : cert.joint) cert.joint_float.push_back(v.to_double());

  auto rep = verify_certificate(cert);
  if (!rep.pass) {
    std::string why = "build_certificate: self-verification failed:";
    for (const auto& c : rep.checks)
      if (!c.pass) why += " [" + c.name + ": " + c.detail + "]";
    throw std::logic_error(why);
  }
  return cert;
}

TightnessCertificate build_certificate_float(const Network& net,
                                             const std::vector<double>& targets) {
  if (static_cast<int>(targets.size()) != net.n_parties())
    throw std::invalid_argument("build_certificate_float: one target per party required");
  RatVec exps;
  for (double p : targets) {
    if (!(p > 0) || p > 1)
      throw std::invalid_argument("build_certificate_float: targets must lie in (0, 1]");
    exps.push_back(rat_from_double(-std::log2(p)));
  }

  TightnessCertificate cert;
  cert.net = net;
  cert.exact = false;
  cert.log2_targets = exps;
  cert.targets = targets;

  auto opt = maximize_fis_objective(net, exps);
  cert.eta = opt.eta;
  cert.dual = opt.dual;
  cert.value = opt.value;

  auto split = split_parties(net, exps, cert.dual);
  cert.set_E = split.set_E;
  cert.d_split = split.d_split;
  cert.L = 1;
  cert.joint_float = enumerate_joint_float(net, cert.dual, cert.set_E, cert.d_split);

  auto rep = verify_certificate(cert);
  if (!rep.pass) {
    std::string why = "build_certificate_float: self-verification failed:";
    for (const auto& c : rep.checks)
      if (!c.pass) why += " [" + c.name + ": " + c.detail + "]";
    throw std::logic_error(why);
  }
  return cert;
}

VerifyReport verify_certificate(const TightnessCertificate& cert, double tol) {
  VerifyReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
    rep.checks.push_back({name, pass, detail});
    if (!pass) rep.pass = false;
  };

  const Network& net = cert.net;
  const int n = net.n_parties();
  const std::size_t table = static_cast<std::size_t>(1) << n;

  // feasibility and duality identities (exact in both paths: the float path
  // stores rationalized exponents)
  bool targets_ok = static_cast<int>(cert.log2_targets.size()) == n;
  for (const auto& e : cert.log2_targets)
    if (e < 0) targets_ok = false;
  add("targets-valid", targets_ok);
  if (!targets_ok) return rep;

  add("primal-feasible", is_fis(net, cert.eta));

  bool dual_ok = static_cast<int>(cert.dual.size()) == net.n_sources();
  for (const auto& c : cert.dual)
    if (c < 0) dual_ok = false;
  if (dual_ok)
    for (int j = 0; j < n; ++j) {
      Rat covered(0);
      for (int i : net.incident_sources(j)) covered += cert.dual[i];
      if (covered < cert.log2_targets[j]) dual_ok = false;
    }
  add("dual-feasible", dual_ok);

  Rat dual_sum(0), primal_val(0);
  for (const auto& c : cert.dual) dual_sum += c;
  for (int j = 0; j < n; ++j) primal_val += cert.eta[j] * cert.log2_targets[j];
  add("strong-duality", dual_sum == cert.value && primal_val == cert.value,
      "sum(c)=" + rat_to_string(dual_sum) + " value=" + rat_to_string(cert.value));

  // slack split and d feasibility
  bool split_ok = true;
  std::string split_why;
  {
    std::vector<int> expect_E;
    for (int j = 0; j < n; ++j) {
      Rat covered(0);
      for (int i : net.incident_sources(j)) covered += cert.dual[i];
      if (covered > cert.log2_targets[j]) expect_E.push_back(j);
    }
    if (expect_E != cert.set_E) { split_ok = false; split_why = "E-set mismatch"; }
    if (cert.d_split.size() != cert.set_E.size()) { split_ok = false; split_why = "d-split shape"; }
    for (std::size_t k = 0; split_ok && k < cert.set_E.size(); ++k) {
      Rat sum(0);
      for (const auto& [i, d] : cert.d_split[k]) {
        if (d < 0 || d > cert.dual[i]) { split_ok = false; split_why = "d out of [0, c]"; }
        sum += d;
      }
      if (sum != cert.log2_targets[cert.set_E[k]]) { split_ok = false; split_why = "d does not sum to the exponent"; }
    }
  }
  add("slack-split", split_ok, split_why);

  bool coverage = true;
  for (int i = 0; i < net.n_sources(); ++i) {
    if (cert.dual[i] == 0) continue;
    bool touches_F = false;
    for (int j : net.sources[i])
      if (std::find(cert.set_E.begin(), cert.set_E.end(), j) == cert.set_E.end()) touches_F = true;
    if (!touches_F) coverage = false;
  }
  add("source-coverage", coverage);

  // proceed as long as the shapes allow enumeration, so that a perturbed
  // dual shows up as a marginal failure and not only as a duality failure
  if (static_cast<int>(cert.dual.size()) != net.n_sources() ||
      cert.d_split.size() != cert.set_E.size())
    return rep;

  // recompute the joint distribution from the certificate fields
  std::vector<double> joint_float;
  std::vector<Pow2Ext> joint_exact;
  try {
    if (cert.exact) {
      joint_exact = enumerate_joint_exact(net, cert.dual, cert.set_E, cert.d_split, cert.L);
      for (const auto& v : joint_exact) joint_float.push_back(v.to_double());
    } else {
      joint_float = enumerate_joint_float(net, cert.dual, cert.set_E, cert.d_split);
    }
  } catch (const std::exception& ex) {
    add("joint-reproduced", false, ex.what());
    return rep;
  }

  if (cert.exact) {
    add("joint-reproduced", cert.joint.size() == table && joint_exact == cert.joint);
  } else {
    bool same = cert.joint_float.size() == table;
    for (std::size_t f = 0; same && f < table; ++f)
      if (std::abs(joint_float[f] - cert.joint_float[f]) > tol) same = false;
    add("joint-reproduced", same);
  }

  // normalization, marginals, saturation
  if (cert.exact) {
    Pow2Ext sum(cert.L, Rat(0));
    for (const auto& v : joint_exact) sum += v;
    add("normalization", sum == Pow2Ext(cert.L, Rat(1)));
    bool marg_ok = true;
    for (int j = 0; j < n; ++j) {
      Pow2Ext pj(cert.L, Rat(0));
      for (std::size_t f = 0; f < table; ++f)
        if (f & (table >> (j + 1))) pj += joint_exact[f];
      if (!(pj == Pow2Ext::pow2_neg(cert.L, cert.log2_targets[j]))) marg_ok = false;
    }
    add("marginals", marg_ok);
    add("saturation",
        joint_exact[table - 1] == Pow2Ext::pow2_neg(cert.L, cert.value),
        "P(1..1) must equal prod p_j^eta_j exactly");
  } else {
    double sum = 0;
    for (double v : joint_float) sum += v;
    add("normalization", std::abs(sum - 1.0) <= tol);
    bool marg_ok = true;
    for (int j = 0; j < n; ++j) {
      double pj = 0;
      for (std::size_t f = 0; f < table; ++f)
        if (f & (table >> (j + 1))) pj += joint_float[f];
      if (std::abs(pj - cert.targets[j]) > tol) marg_ok = false;
    }
    add("marginals", marg_ok);
    double expect = std::exp2(-to_double(cert.value));
    add("saturation", std::abs(joint_float[table - 1] - expect) <= tol);
  }

  // the constructed distribution is classical, so the full Finner suite must
  // pass, with equality at the all-ones outcome under eta*
  {
    auto dist = JointDistribution::floating(std::vector<int>(n, 2), joint_float);
    auto finner = check_probability_form(net, dist, nullptr, tol);
    add("finner-suite", !finner.violated);
    double lhs = joint_float[table - 1];
    double rhs = 1;
    for (int j = 0; j < n; ++j) {
      double pj = 0;
      for (std::size_t f = 0; f < table; ++f)
        if (f & (table >> (j + 1))) pj += joint_float[f];
      rhs *= std::pow(pj, to_double(cert.eta[j]));
    }
    add("finner-equality-at-ones", std::abs(std::log(lhs) - std::log(rhs)) <= 1e-7 || lhs == rhs,
        "lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs));
  }
  return rep;
}

}  // namespace finnet
