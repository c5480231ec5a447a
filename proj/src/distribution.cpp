#include "finnet/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace finnet {

namespace {

std::size_t table_size(const std::vector<int>& alphabets) {
  std::size_t s = 1;
  for (int k : alphabets) {
    if (k <= 0) throw std::invalid_argument("alphabet sizes must be positive");
    s *= static_cast<std::size_t>(k);
  }
  return s;
}

}  // namespace

JointDistribution JointDistribution::exact(std::vector<int> alphabets, RatVec probs) {
  JointDistribution d;
  d.alphabets_ = std::move(alphabets);
  d.size_ = table_size(d.alphabets_);
  if (probs.size() != d.size_) throw std::invalid_argument("probability table size mismatch");
  d.backend_ = Backend::exact;
  d.pr_ = std::move(probs);
  return d;
}

JointDistribution JointDistribution::floating(std::vector<int> alphabets, std::vector<double> probs) {
  JointDistribution d;
  d.alphabets_ = std::move(alphabets);
  d.size_ = table_size(d.alphabets_);
  if (probs.size() != d.size_) throw std::invalid_argument("probability table size mismatch");
  d.backend_ = Backend::floating;
  d.pd_ = std::move(probs);
  return d;
}

double JointDistribution::p(std::size_t flat) const {
  return is_exact() ? to_double(pr_[flat]) : pd_[flat];
}

const Rat& JointDistribution::p_rat(std::size_t flat) const {
  if (!is_exact()) throw std::logic_error("p_rat on float-backed distribution");
  return pr_[flat];
}

std::size_t JointDistribution::flat_index(const std::vector<int>& outcome) const {
  if (outcome.size() != alphabets_.size())
    throw std::invalid_argument("outcome arity mismatch");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < outcome.size(); ++j) {
    if (outcome[j] < 0 || outcome[j] >= alphabets_[j])
      throw std::out_of_range("outcome symbol out of alphabet range");
    idx = idx * static_cast<std::size_t>(alphabets_[j]) + static_cast<std::size_t>(outcome[j]);
  }
  return idx;
}

std::vector<int> JointDistribution::outcome_of(std::size_t flat) const {
  std::vector<int> out(alphabets_.size());
  for (int j = arity() - 1; j >= 0; --j) {
    out[j] = static_cast<int>(flat % static_cast<std::size_t>(alphabets_[j]));
    flat /= static_cast<std::size_t>(alphabets_[j]);
  }
  return out;
}

JointDistribution JointDistribution::marginal(const std::vector<int>& subset) const {
  if (subset.empty()) throw std::invalid_argument("marginal: empty party subset");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= arity())
      throw std::invalid_argument("marginal: invalid party index");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("marginal: subset must be sorted ascending");
  }
  std::vector<int> sub_alpha;
  for (int j : subset) sub_alpha.push_back(alphabets_[j]);
  const std::size_t sub_size = table_size(sub_alpha);

  auto sub_index = [&](const std::vector<int>& full) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < subset.size(); ++i)
      idx = idx * static_cast<std::size_t>(sub_alpha[i]) +
            static_cast<std::size_t>(full[subset[i]]);
    return idx;
  };

  if (is_exact()) {
    RatVec acc(sub_size, Rat(0));
    for (std::size_t f = 0; f < size_; ++f) acc[sub_index(outcome_of(f))] += pr_[f];
    return JointDistribution::exact(sub_alpha, std::move(acc));
  }
  std::vector<double> acc(sub_size, 0.0);
  for (std::size_t f = 0; f < size_; ++f) acc[sub_index(outcome_of(f))] += pd_[f];
  return JointDistribution::floating(sub_alpha, std::move(acc));
}

RatVec JointDistribution::marginal_rat(int party) const {
  if (!is_exact()) throw std::logic_error("marginal_rat on float-backed distribution");
  RatVec acc(static_cast<std::size_t>(alphabets_[party]), Rat(0));
  for (std::size_t f = 0; f < size_; ++f) acc[outcome_of(f)[party]] += pr_[f];
  return acc;
}

std::vector<double> JointDistribution::marginal_float(int party) const {
  std::vector<double> acc(static_cast<std::size_t>(alphabets_[party]), 0.0);
  for (std::size_t f = 0; f < size_; ++f) acc[outcome_of(f)[party]] += p(f);
  return acc;
}

JointDistribution JointDistribution::to_float() const {
  if (!is_exact()) return *this;
  std::vector<double> pd(size_);
  for (std::size_t f = 0; f < size_; ++f) pd[f] = to_double(pr_[f]);
  return JointDistribution::floating(alphabets_, std::move(pd));
}

std::vector<std::string> JointDistribution::validate() const {
  std::vector<std::string> out;
  if (is_exact()) {
    Rat sum = 0;
    for (std::size_t f = 0; f < size_; ++f) {
      if (pr_[f] < 0) out.push_back("negative probability at flat index " + std::to_string(f));
      sum += pr_[f];
    }
    if (sum != 1) out.push_back("probabilities sum to " + rat_to_string(sum) + ", not 1");
  } else {
    double sum = 0;
    for (std::size_t f = 0; f < size_; ++f) {
      if (pd_[f] < 0) out.push_back("negative probability at flat index " + std::to_string(f));
      sum += pd_[f];
    }
    if (std::abs(sum - 1.0) > 1e-12) out.push_back("probabilities sum to " + std::to_string(sum));
  }
  return out;
}

bool JointDistribution::operator==(const JointDistribution& o) const {
  if (alphabets_ != o.alphabets_ || backend_ != o.backend_) return false;
  return is_exact() ? pr_ == o.pr_ : pd_ == o.pd_;
}

JointDistribution make_uniform(const std::vector<int>& alphabets) {
  std::size_t s = 1;
  for (int k : alphabets) s *= static_cast<std::size_t>(k);
  return JointDistribution::exact(alphabets, RatVec(s, Rat(1) / Rat(static_cast<long>(s))));
}

JointDistribution make_delta(const std::vector<int>& alphabets, const std::vector<int>& outcome) {
  if (outcome.size() != alphabets.size())
    throw std::invalid_argument("make_delta: outcome arity mismatch");
  std::size_t s = 1, idx = 0;
  for (std::size_t j = 0; j < alphabets.size(); ++j) {
    s *= static_cast<std::size_t>(alphabets[j]);
    idx = idx * static_cast<std::size_t>(alphabets[j]) + static_cast<std::size_t>(outcome[j]);
  }
  RatVec t(s, Rat(0));
  t[idx] = 1;
  return JointDistribution::exact(alphabets, std::move(t));
}

JointDistribution make_ghz(int n_parties) {
  if (n_parties < 1) throw std::invalid_argument("make_ghz: need at least one party");
  std::vector<int> alpha(n_parties, 2);
  std::size_t s = std::size_t(1) << n_parties;
  RatVec t(s, Rat(0));
  t[0] = Rat(1, 2);
  t[s - 1] = Rat(1, 2);
  return JointDistribution::exact(alpha, std::move(t));
}

JointDistribution make_w() {
  RatVec t(8, Rat(0));
  t[1] = t[2] = t[4] = Rat(1, 3);  // 001, 010, 100
  return JointDistribution::exact({2, 2, 2}, std::move(t));
}

JointDistribution make_pq(const Rat& p, const Rat& q) {
  if (p < 0 || q < 0 || p + q > 1)
    throw std::invalid_argument("make_pq: need p,q >= 0 and p+q <= 1");
  RatVec t(8, (Rat(1) - p - q) / 6);
  t[0] = p;
  t[7] = q;
  return JointDistribution::exact({2, 2, 2}, std::move(t));
}

JointDistribution make_r_mix(const Rat& r) {
  if (r < 0 || r > 1) throw std::invalid_argument("make_r_mix: need 0 <= r <= 1");
  RatVec t(8, (Rat(1) - r) / 8);
  t[7] += r;
  return JointDistribution::exact({2, 2, 2}, std::move(t));
}

FactorizationReport check_bilocal_factorization(const JointDistribution& P, double tol) {
  if (P.arity() != 3)
    throw std::invalid_argument("check_bilocal_factorization: need exactly 3 parties");
  FactorizationReport rep;
  auto pac = P.marginal({0, 2});
  if (P.is_exact()) {
    auto pa = P.marginal_rat(0);
    auto pc = P.marginal_rat(2);
    Rat worst = 0;
    for (int a = 0; a < P.alphabets()[0]; ++a)
      for (int c = 0; c < P.alphabets()[2]; ++c) {
        Rat dev = rat_abs(pac.p_rat({a, c}) - pa[a] * pc[c]);
        worst = std::max(worst, dev);
      }
    rep.exact = true;
    rep.max_deviation_exact = worst;
    rep.max_deviation = to_double(worst);
    rep.pass = worst == 0;
  } else {
    auto pa = P.marginal_float(0);
    auto pc = P.marginal_float(2);
    double worst = 0;
    for (int a = 0; a < P.alphabets()[0]; ++a)
      for (int c = 0; c < P.alphabets()[2]; ++c)
        worst = std::max(worst, std::abs(pac.p({a, c}) - pa[a] * pc[c]));
    rep.exact = false;
    rep.max_deviation = worst;
    rep.pass = worst <= tol;
  }
  return rep;
}

}  // namespace finnet
