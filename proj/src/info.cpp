#include "finnet/info.hpp"

#include <cmath>
#include <map>

namespace finnet {

CmiResult conditional_mutual_information(const std::vector<CmiAtom>& atoms) {
  std::map<std::tuple<std::string, std::string, std::string>, Rat> pxyz;
  std::map<std::pair<std::string, std::string>, Rat> pxz, pyz;
  std::map<std::string, Rat> pz;
  for (const auto& a : atoms) {
    pxyz[{a.x, a.y, a.z}] += a.p;
    pxz[{a.x, a.z}] += a.p;
    pyz[{a.y, a.z}] += a.p;
    pz[a.z] += a.p;
  }

  CmiResult res;
  res.max_factorization_dev = 0;
  double bits = 0;
  for (const auto& [key, p] : pxyz) {
    const auto& [x, y, z] = key;
    Rat dev = rat_abs(p * pz[z] - pxz[{x, z}] * pyz[{y, z}]);
    if (dev > res.max_factorization_dev) res.max_factorization_dev = dev;
    if (p > 0) {
      double num = to_double(p) * to_double(pz[z]);
      double den = to_double(pxz[{x, z}]) * to_double(pyz[{y, z}]);
      if (den > 0) bits += to_double(p) * std::log2(num / den);
    }
  }
  res.exactly_zero = res.max_factorization_dev == 0;
  res.bits = bits;
  return res;
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

}  // namespace finnet
