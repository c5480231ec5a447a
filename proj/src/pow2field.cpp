#include "finnet/pow2field.hpp"

#include <cmath>
#include <stdexcept>

namespace finnet {

Pow2Ext::Pow2Ext(long L, const Rat& constant) : L_(L), c_(static_cast<std::size_t>(L), Rat(0)) {
  if (L < 1) throw std::invalid_argument("Pow2Ext: level must be >= 1");
  c_[0] = constant;
}

Pow2Ext Pow2Ext::pow2_neg(long L, const Rat& e) {
  if (e < 0) throw std::invalid_argument("Pow2Ext::pow2_neg: exponent must be >= 0");
  Rat kL = e * L;
  if (boost::multiprecision::denominator(kL) != 1)
    throw std::invalid_argument("Pow2Ext::pow2_neg: exponent incompatible with level");
  long k = boost::multiprecision::numerator(kL).convert_to<long>();
  Pow2Ext out(L, Rat(0));
  // z^k with z^L = 1/2
  Rat scale = rat_pow(Rat(1, 2), k / L);
  out.c_[static_cast<std::size_t>(k % L)] = scale;
  return out;
}

Pow2Ext Pow2Ext::operator+(const Pow2Ext& o) const {
  if (L_ != o.L_) throw std::invalid_argument("Pow2Ext: level mismatch");
  Pow2Ext out(L_, Rat(0));
  for (long i = 0; i < L_; ++i) out.c_[i] = c_[i] + o.c_[i];
  return out;
}

Pow2Ext Pow2Ext::operator-(const Pow2Ext& o) const {
  if (L_ != o.L_) throw std::invalid_argument("Pow2Ext: level mismatch");
  Pow2Ext out(L_, Rat(0));
  for (long i = 0; i < L_; ++i) out.c_[i] = c_[i] - o.c_[i];
  return out;
}

Pow2Ext Pow2Ext::operator*(const Pow2Ext& o) const {
  if (L_ != o.L_) throw std::invalid_argument("Pow2Ext: level mismatch");
  RatVec conv(static_cast<std::size_t>(2 * L_ - 1), Rat(0));
  for (long i = 0; i < L_; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j < L_; ++j) {
      if (o.c_[j] == 0) continue;
      conv[i + j] += c_[i] * o.c_[j];
    }
  }
  Pow2Ext out(L_, Rat(0));
  for (long d = 0; d < 2 * L_ - 1; ++d) {
    if (conv[d] == 0) continue;
    if (d < L_)
      out.c_[d] += conv[d];
    else
      out.c_[d - L_] += conv[d] / 2;  // z^L = 1/2
  }
  return out;
}

bool Pow2Ext::operator==(const Pow2Ext& o) const { return L_ == o.L_ && c_ == o.c_; }

bool Pow2Ext::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

double Pow2Ext::to_double() const {
  double z = std::pow(2.0, -1.0 / static_cast<double>(L_));
  double acc = 0, zp = 1;
  for (long i = 0; i < L_; ++i) {
    acc += finnet::to_double(c_[i]) * zp;
    zp *= z;
  }
  return acc;
}

namespace {

using Poly = RatVec;  // coefficient vector, lowest degree first

int degree(const Poly& p) {
  for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
    if (p[d] != 0) return d;
  return -1;
}

Poly poly_sub_scaled(const Poly& a, const Poly& b, const Rat& s, int shift) {
  Poly out = a;
  if (out.size() < b.size() + static_cast<std::size_t>(shift)) out.resize(b.size() + shift, Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) out[i + shift] -= s * b[i];
  return out;
}

// a mod b and the quotient
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("poly division by zero");
  Poly q(a.size(), Rat(0));
  int da = degree(a);
  while (da >= db) {
    Rat s = a[da] / b[db];
    q[da - db] += s;
    a = poly_sub_scaled(a, b, s, da - db);
    da = degree(a);
  }
  return {q, a};
}

}  // namespace

Pow2Ext Pow2Ext::inverse() const {
  if (is_zero()) throw std::domain_error("Pow2Ext: inverse of zero");
  // extended Euclid for gcd(this, modulus) over Q[x]
  Poly m(static_cast<std::size_t>(L_) + 1, Rat(0));
  m[static_cast<std::size_t>(L_)] = 1;
  m[0] = Rat(-1, 2);
  Poly r0 = m, r1 = c_;
  Poly s0(1, Rat(0)), s1(1, Rat(1));  // coefficients of `this` in the combination
  while (degree(r1) > 0) {
    auto [q, r] = poly_divmod(r0, r1);
    // s2 = s0 - q*s1
    Poly s2 = s0;
    const int dq = degree(q);
    for (int i = 0; i <= dq; ++i)
      if (q[i] != 0) s2 = poly_sub_scaled(s2, s1, q[i], i);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (degree(r1) != 0)
    throw std::logic_error("Pow2Ext: modulus not coprime with element");
  const Rat g = r1[0];
  Pow2Ext out(L_, Rat(0));
  for (long i = 0; i < L_ && i < static_cast<long>(s1.size()); ++i) out.c_[i] = s1[i] / g;
  // s1 can have degree >= L only transiently; reduce defensively
  for (long d = L_; d < static_cast<long>(s1.size()); ++d) {
    if (s1[d] == 0) continue;
    out.c_[d % L_] += s1[d] / g * rat_pow(Rat(1, 2), d / L_);
  }
  return out;
}

}  // namespace finnet
