#include "finnet/hribbon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "finnet/finner.hpp"
#include "finnet/info.hpp"
#include "finnet/rng.hpp"

namespace finnet {

namespace {

double safe_log(double x) { return x > 0 ? std::log(x) : -std::numeric_limits<double>::infinity(); }

void check_point(const JointDistribution& P, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != P.arity())
    throw std::invalid_argument("ribbon point arity mismatch");
  for (double a : point)
    if (a < 0 || a > 1) throw std::invalid_argument("ribbon point entries must lie in [0,1]");
}

bool all_zero(const std::vector<double>& point) {
  for (double a : point)
    if (a != 0) return false;
  return true;
}

}  // namespace

NormWitness evaluate_norm_inequality(const JointDistribution& P,
                                     const std::vector<double>& point,
                                     const std::vector<std::vector<double>>& functions) {
  const int n = P.arity();
  NormWitness w;
  w.functions = functions;
  double lhs = 0;
  for (std::size_t f = 0; f < P.size(); ++f) {
    auto o = P.outcome_of(f);
    double prod = P.p(f);
    for (int j = 0; j < n; ++j) prod *= functions[j][o[j]];
    lhs += prod;
  }
  w.lhs = lhs;
  double rhs = 1;
  for (int j = 0; j < n; ++j) {
    auto m = P.marginal_float(j);
    if (point[j] == 0) {
      double sup = 0;
      for (std::size_t a = 0; a < m.size(); ++a)
        if (m[a] > 0) sup = std::max(sup, functions[j][a]);
      rhs *= sup;
    } else {
      double s = 0;
      for (std::size_t a = 0; a < m.size(); ++a)
        if (m[a] > 0) s += m[a] * std::pow(functions[j][a], 1.0 / point[j]);
      rhs *= std::pow(s, point[j]);
    }
  }
  w.rhs = rhs;
  return w;
}

RibbonVerdict falsify_by_norms(const JointDistribution& P, const std::vector<double>& point,
                               int restarts, int iters, std::uint64_t seed, double tol) {
  check_point(P, point);
  RibbonVerdict verdict;
  if (all_zero(point)) {
    verdict.status = RibbonStatus::member;  // sup norms: plain Holder, always holds
    return verdict;
  }

  const int n = P.arity();
  const auto& alpha = point;
  std::vector<std::vector<double>> marg(n);
  for (int j = 0; j < n; ++j) marg[j] = P.marginal_float(j);

  Rng rng(seed);
  double best_ratio = 0;
  std::vector<std::vector<double>> best_f;

  const int canonical = static_cast<int>(P.size());
  const int total_restarts = std::max(restarts, 1) + canonical + 1;

  for (int r = 0; r < total_restarts; ++r) {
    std::vector<std::vector<double>> f(n);
    for (int j = 0; j < n; ++j) f[j].assign(P.alphabets()[j], 1.0);
    if (r == 0) {
      // all ones
    } else if (r <= canonical) {
      auto o = P.outcome_of(static_cast<std::size_t>(r - 1));
      for (int j = 0; j < n; ++j) {
        std::fill(f[j].begin(), f[j].end(), 0.0);
        f[j][o[j]] = 1.0;
      }
    } else {
      for (int j = 0; j < n; ++j)
        for (auto& v : f[j]) v = std::exp(rng.normal());
    }

    for (int it = 0; it < iters; ++it) {
      bool moved = false;
      for (int j = 0; j < n; ++j) {
        // w_j(a) = E[prod_{k != j} f_k | A_j = a]
        std::vector<double> w(P.alphabets()[j], 0.0);
        for (std::size_t o = 0; o < P.size(); ++o) {
          auto out = P.outcome_of(o);
          double prod = P.p(o);
          for (int k = 0; k < n; ++k)
            if (k != j) prod *= f[k][out[k]];
          w[out[j]] += prod;
        }
        for (int a = 0; a < P.alphabets()[j]; ++a)
          w[a] = marg[j][a] > 0 ? w[a] / marg[j][a] : 0.0;

        std::vector<double> nf(P.alphabets()[j], 0.0);
        if (alpha[j] == 0) {
          std::fill(nf.begin(), nf.end(), 1.0);  // constant is optimal for sup norm
        } else if (alpha[j] == 1) {
          int arg = 0;
          for (int a = 1; a < P.alphabets()[j]; ++a)
            if (w[a] > w[arg]) arg = a;
          nf[arg] = 1.0;
        } else {
          const double expo = alpha[j] / (1.0 - alpha[j]);
          double mx = 0;
          for (int a = 0; a < P.alphabets()[j]; ++a) mx = std::max(mx, w[a]);
          if (mx <= 0) { nf = f[j]; }
          else {
            for (int a = 0; a < P.alphabets()[j]; ++a)
              nf[a] = w[a] > 0 ? std::pow(w[a] / mx, expo) : 0.0;
          }
        }
        if (nf != f[j]) moved = true;
        f[j] = std::move(nf);
      }
      if (!moved) break;
    }

    auto ev = evaluate_norm_inequality(P, point, f);
    if (ev.rhs > 0 && ev.lhs / ev.rhs > best_ratio) {
      best_ratio = ev.lhs / ev.rhs;
      best_f = f;
    }
  }

  if (!best_f.empty()) {
    // independent re-verification before claiming a violation
    auto ev = evaluate_norm_inequality(P, point, best_f);
    if (safe_log(ev.lhs) - safe_log(ev.rhs) > tol) {
      verdict.status = RibbonStatus::not_member;
      verdict.norm_witness = ev;
      return verdict;
    }
  }
  verdict.status = RibbonStatus::member_up_to_search;
  return verdict;
}

double channel_deficit_bits(const JointDistribution& P, const std::vector<double>& point,
                            const std::vector<std::vector<double>>& channel) {
  const int n = P.arity();
  const std::size_t no = P.size();
  if (channel.size() != no) throw std::invalid_argument("channel size mismatch");
  const std::size_t nu = channel[0].size();

  // I(U; all)
  std::vector<double> pu(nu, 0.0);
  double i_all = 0;
  for (std::size_t o = 0; o < no; ++o)
    for (std::size_t u = 0; u < nu; ++u) pu[u] += P.p(o) * channel[o][u];
  for (std::size_t o = 0; o < no; ++o) {
    const double po = P.p(o);
    if (po <= 0) continue;
    for (std::size_t u = 0; u < nu; ++u) {
      const double j = po * channel[o][u];
      if (j > 0) i_all += j * std::log2(channel[o][u] / pu[u]);
    }
  }

  double deficit = -i_all;
  for (int j = 0; j < n; ++j) {
    if (point[j] == 0) continue;
    auto m = P.marginal_float(j);
    std::vector<std::vector<double>> pua(P.alphabets()[j], std::vector<double>(nu, 0.0));
    for (std::size_t o = 0; o < no; ++o) {
      auto out = P.outcome_of(o);
      for (std::size_t u = 0; u < nu; ++u) pua[out[j]][u] += P.p(o) * channel[o][u];
    }
    double i_j = 0;
    for (int a = 0; a < P.alphabets()[j]; ++a) {
      if (m[a] <= 0) continue;
      for (std::size_t u = 0; u < nu; ++u) {
        const double joint = pua[a][u];
        if (joint > 0) i_j += joint * std::log2(joint / (m[a] * pu[u]));
      }
    }
    deficit += point[j] * i_j;
  }
  return deficit;
}

RibbonVerdict falsify_by_mutual_information(const JointDistribution& P,
                                            const std::vector<double>& point, int u_cap,
                                            int restarts, int iters, std::uint64_t seed,
                                            double tol) {
  check_point(P, point);
  RibbonVerdict verdict;
  if (all_zero(point)) {
    verdict.status = RibbonStatus::member;  // deficit = -I(U;all) <= 0 for every U
    return verdict;
  }

  const int n = P.arity();
  const std::size_t no = P.size();
  if (u_cap < 2) u_cap = static_cast<int>(no);
  const double alpha_sum = [&] {
    double s = 0;
    for (double a : point) s += a;
    return s;
  }();

  Rng rng(seed);
  double best_deficit = -1e300;
  std::vector<std::vector<double>> best_channel;

  auto consider = [&](std::vector<std::vector<double>> ch) {
    // a few fixed-point ascent sweeps, keeping the best deficit seen
    const std::size_t nu = ch[0].size();
    double d = channel_deficit_bits(P, point, ch);
    if (d > best_deficit) { best_deficit = d; best_channel = ch; }
    for (int it = 0; it < iters; ++it) {
      std::vector<double> pu(nu, 0.0);
      for (std::size_t o = 0; o < no; ++o)
        for (std::size_t u = 0; u < nu; ++u) pu[u] += P.p(o) * ch[o][u];
      std::vector<std::vector<std::vector<double>>> pu_a(n);
      for (int j = 0; j < n; ++j) {
        auto m = P.marginal_float(j);
        pu_a[j].assign(P.alphabets()[j], std::vector<double>(nu, 0.0));
        for (std::size_t o = 0; o < no; ++o) {
          auto out = P.outcome_of(o);
          for (std::size_t u = 0; u < nu; ++u) pu_a[j][out[j]][u] += P.p(o) * ch[o][u];
        }
        for (int a = 0; a < P.alphabets()[j]; ++a)
          for (std::size_t u = 0; u < nu; ++u)
            pu_a[j][a][u] = m[a] > 0 ? pu_a[j][a][u] / m[a] : 0.0;
      }
      bool changed = false;
      std::vector<std::vector<double>> next = ch;
      for (std::size_t o = 0; o < no; ++o) {
        if (P.p(o) <= 0) continue;
        auto out = P.outcome_of(o);
        double z = 0;
        std::vector<double> t(nu, 0.0);
        for (std::size_t u = 0; u < nu; ++u) {
          double logt = 0;
          bool zero = false;
          for (int j = 0; j < n; ++j) {
            if (point[j] == 0) continue;
            const double q = pu_a[j][out[j]][u];
            if (q <= 0) { zero = true; break; }
            logt += point[j] * std::log(q);
          }
          if (!zero && pu[u] > 0) logt -= (alpha_sum - 1.0) * std::log(pu[u]);
          t[u] = zero || pu[u] <= 0 ? 0.0 : std::exp(logt);
          z += t[u];
        }
        if (z > 0)
          for (std::size_t u = 0; u < nu; ++u) {
            const double v = t[u] / z;
            if (std::abs(v - next[o][u]) > 1e-15) changed = true;
            next[o][u] = v;
          }
      }
      ch = std::move(next);
      d = channel_deficit_bits(P, point, ch);
      if (d > best_deficit) { best_deficit = d; best_channel = ch; }
      if (!changed) break;
    }
  };

  // outcome-copy channel
  {
    std::vector<std::vector<double>> ch(no, std::vector<double>(no, 0.0));
    for (std::size_t o = 0; o < no; ++o) ch[o][o] = 1.0;
    consider(std::move(ch));
  }
  // per-party copy channels
  for (int j = 0; j < n; ++j) {
    const std::size_t nu = static_cast<std::size_t>(P.alphabets()[j]);
    std::vector<std::vector<double>> ch(no, std::vector<double>(nu, 0.0));
    for (std::size_t o = 0; o < no; ++o) ch[o][P.outcome_of(o)[j]] = 1.0;
    consider(std::move(ch));
  }
  // random channels
  const std::size_t nu = std::min<std::size_t>(static_cast<std::size_t>(u_cap), no);
  for (int r = 0; r < restarts; ++r) {
    std::vector<std::vector<double>> ch(no, std::vector<double>(nu, 0.0));
    for (std::size_t o = 0; o < no; ++o) {
      double z = 0;
      for (std::size_t u = 0; u < nu; ++u) {
        ch[o][u] = -std::log(std::max(rng.uniform(), 1e-12));
        z += ch[o][u];
      }
      for (std::size_t u = 0; u < nu; ++u) ch[o][u] /= z;
    }
    consider(std::move(ch));
  }

  if (!best_channel.empty()) {
    const double reverified = channel_deficit_bits(P, point, best_channel);
    if (reverified > tol) {
      verdict.status = RibbonStatus::not_member;
      ChannelWitness w;
      w.u_card = static_cast<int>(best_channel[0].size());
      w.channel = best_channel;
      w.deficit_bits = reverified;
      verdict.mi_witness = std::move(w);
      return verdict;
    }
  }
  verdict.status = RibbonStatus::member_up_to_search;
  return verdict;
}

std::vector<std::pair<RatVec, RibbonVerdict>> finner_as_ribbon(const Network& net,
                                                               const JointDistribution& P,
                                                               int restarts, std::uint64_t seed) {
  std::vector<std::pair<RatVec, RibbonVerdict>> out;
  for (const auto& eta : enumerate_extreme_fis(net).vertices) {
    std::vector<RatVec> one{eta};
    auto rep = check_probability_form(net, P, &one);
    RibbonVerdict v;
    if (rep.violated && rep.worst) {
      v.status = RibbonStatus::not_member;
      NormWitness w;
      w.functions.resize(net.n_parties());
      for (int j = 0; j < net.n_parties(); ++j) {
        w.functions[j].assign(P.alphabets()[j], 0.0);
        w.functions[j][rep.worst->outcome[j]] = 1.0;
      }
      auto ev = evaluate_norm_inequality(P, [&] {
        std::vector<double> pt(net.n_parties());
        for (int j = 0; j < net.n_parties(); ++j) pt[j] = to_double(eta[j]);
        return pt;
      }(), w.functions);
      v.norm_witness = ev;
    } else {
      std::vector<double> pt(net.n_parties());
      for (int j = 0; j < net.n_parties(); ++j) pt[j] = to_double(eta[j]);
      v = falsify_by_norms(P, pt, restarts, 100, seed);
    }
    out.emplace_back(eta, std::move(v));
  }
  return out;
}

}  // namespace finnet
