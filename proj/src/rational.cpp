#include "finnet/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace finnet {

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: 0 to negative power");
    return Rat(1) / rat_pow(base, -e);
  }
  Rat acc(1), b = base;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
    return Rat(num) / Rat(den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    if (tail.empty()) tail = "0";
    Int ip(head), fp(tail);
    Int den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    Rat r = Rat(ip) + Rat(fp) / Rat(den);
    return neg ? Rat(-r) : r;
  }
  return Rat(Int(s));
}

std::string rat_to_string(const Rat& x) {
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::optional<Rat> rat_sqrt_exact(const Rat& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return Rat(0);
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  Int rn = boost::multiprecision::sqrt(num);
  Int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rat(rn) / Rat(rd);
}

std::optional<long> log2_exact(const Rat& x) {
  if (x <= 0) return std::nullopt;
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  if (num == 1) {
    // x = 1/den: den must be a power of two
    long k = 0;
    Int d = den;
    while (d % 2 == 0) { d /= 2; ++k; }
    if (d != 1) return std::nullopt;
    return -k;
  }
  if (den == 1) {
    long k = 0;
    Int n = num;
    while (n % 2 == 0) { n /= 2; ++k; }
    if (n != 1) return std::nullopt;
    return k;
  }
  return std::nullopt;
}

Int lcm_denominators(const RatVec& xs) {
  Int l = 1;
  for (const auto& x : xs) l = boost::multiprecision::lcm(l, Int(boost::multiprecision::denominator(x)));
  return l;
}

int rat_rank(RatMat a) {
  if (a.empty()) return 0;
  const size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i != r && a[i][c] != 0) {
        Rat f = a[i][c] / a[r][c];
        for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::optional<RatVec> rat_solve(RatMat a, RatVec b) {
  const size_t n = a.size();
  if (n == 0 || a[0].size() != n || b.size() != n)
    throw std::invalid_argument("rat_solve: not a square system");
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (size_t i = 0; i < n; ++i) {
      if (i != c && a[i][c] != 0) {
        Rat f = a[i][c] / a[c][c];
        for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        b[i] -= f * b[c];
      }
    }
  }
  RatVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace finnet
