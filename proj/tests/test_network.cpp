#include <doctest.h>

#include <algorithm>
#include <set>

#include "finnet/network.hpp"
#include "finnet/rng.hpp"

using namespace finnet;

namespace {

// independent oracle: feasible half-integral points that are not midpoints
// of two other feasible half-integral points
std::vector<RatVec> half_integral_oracle(const Network& net) {
  const int n = net.n_parties();
  std::vector<RatVec> feasible;
  std::vector<int> digits(n, 0);
  for (;;) {
    RatVec eta(n);
    for (int j = 0; j < n; ++j) eta[j] = Rat(digits[j], 2);
    if (is_fis(net, eta)) feasible.push_back(eta);
    int k = n - 1;
    while (k >= 0 && digits[k] == 2) digits[k--] = 0;
    if (k < 0) break;
    ++digits[k];
  }
  std::vector<RatVec> extreme;
  for (const auto& v : feasible) {
    bool midpoint = false;
    for (std::size_t i = 0; i < feasible.size() && !midpoint; ++i)
      for (std::size_t j = i + 1; j < feasible.size() && !midpoint; ++j) {
        bool eq = true;
        for (int k = 0; k < n; ++k)
          if (feasible[i][k] + feasible[j][k] != 2 * v[k]) eq = false;
        if (eq && !(feasible[i] == v) && !(feasible[j] == v)) midpoint = true;
      }
    if (!midpoint) extreme.push_back(v);
  }
  std::sort(extreme.begin(), extreme.end());
  return extreme;
}

}  // namespace

TEST_CASE("validate_network") {
  CHECK(validate_network(make_triangle()).empty());
  CHECK(validate_network(make_path3()).empty());

  Network dup{{"A", "B"}, {{0, 1}, {0, 1}}};
  CHECK(!validate_network(dup).empty());

  Network contained{{"A", "B", "C"}, {{0, 1, 2}, {0, 1}}};
  auto v = validate_network(contained);
  REQUIRE(!v.empty());
  CHECK(v.front().find("minimality") != std::string::npos);

  Network bad_index{{"A", "B"}, {{0, 5}}};
  CHECK(!validate_network(bad_index).empty());
}

TEST_CASE("is_fis on the triangle") {
  auto tri = make_triangle();
  CHECK(is_fis(tri, {Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
  CHECK(!is_fis(tri, {Rat(1), Rat(1), Rat(0)}));
  CHECK(is_fis(tri, {Rat(1), Rat(0), Rat(0)}));
  CHECK(!is_fis(tri, {Rat(-1, 2), Rat(0), Rat(0)}));
  CHECK_THROWS(is_fis(tri, {Rat(1), Rat(0)}));
}

TEST_CASE("triangle extreme FIS") {
  auto verts = enumerate_extreme_fis(make_triangle());
  CHECK(verts.half_integral);
  std::vector<RatVec> expect{
      {Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)},
      {Rat(1, 2), Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(0), Rat(0)}};
  std::sort(expect.begin(), expect.end());
  CHECK(verts.vertices == expect);
  CHECK(verts.vertices == half_integral_oracle(make_triangle()));
}

TEST_CASE("bilocality path extreme FIS") {
  auto verts = enumerate_extreme_fis(make_path3());
  std::vector<RatVec> expect{
      {Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)},
      {Rat(1), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(1)}};
  std::sort(expect.begin(), expect.end());
  CHECK(verts.vertices == expect);
  // (1/2,1/2,1/2) is feasible but the midpoint of (1,0,1) and (0,1,0)
  CHECK(is_fis(make_path3(), {Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
  CHECK(std::find(verts.vertices.begin(), verts.vertices.end(),
                  RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)}) == verts.vertices.end());
}

TEST_CASE("single party, no sources") {
  Network lone{{"A"}, {}};
  auto verts = enumerate_extreme_fis(lone);
  std::vector<RatVec> expect{{Rat(0)}, {Rat(1)}};
  CHECK(verts.vertices == expect);
}

TEST_CASE("extremality: no vertex is a midpoint of two others") {
  for (const auto& net : {make_triangle(), make_path3(), make_square()}) {
    auto verts = enumerate_extreme_fis(net).vertices;
    for (const auto& v : verts)
      for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
          if (verts[i] == v || verts[j] == v) continue;
          bool eq = true;
          for (int k = 0; k < net.n_parties(); ++k)
            if (verts[i][k] + verts[j][k] != 2 * v[k]) eq = false;
          CHECK(!eq);
        }
  }
}

TEST_CASE("bipartite-only vertices are half-integral") {
  for (const auto& net : {make_triangle(), make_path3(), make_square()}) {
    auto verts = enumerate_extreme_fis(net);
    CHECK(verts.half_integral);
  }
}

TEST_CASE("half-integral sweep agrees with the oracle on small graphs") {
  // a few graph shapes on <= 5 parties
  std::vector<Network> nets{
      make_triangle(), make_path3(), make_square(),
      Network{{"A", "B", "C", "D"}, {{0, 1}, {1, 2}, {2, 3}}},
      Network{{"A", "B", "C", "D", "E"}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}},
      Network{{"A", "B", "C", "D"}, {{0, 1}, {0, 2}, {0, 3}}}};
  for (const auto& net : nets) {
    auto verts = enumerate_extreme_fis(net);
    CHECK(verts.vertices == half_integral_oracle(net));
  }
}

TEST_CASE("multipartite-source network uses general vertex enumeration") {
  Network hyper{{"A", "B", "C", "D"}, {{0, 1, 2}, {0, 3}}};
  REQUIRE(validate_network(hyper).empty());
  auto verts = enumerate_extreme_fis(hyper);
  for (const auto& v : verts.vertices) CHECK(is_fis(hyper, v));
  // (0,1,0,1) must be there: B and D saturate independent constraints
  CHECK(std::find(verts.vertices.begin(), verts.vertices.end(),
                  RatVec{Rat(0), Rat(1), Rat(0), Rat(1)}) != verts.vertices.end());
  // every vertex has rank-n active set (definition cross-check): here just
  // confirm no duplicates and nonempty
  std::set<RatVec> uniq(verts.vertices.begin(), verts.vertices.end());
  CHECK(uniq.size() == verts.vertices.size());
  CHECK(verts.vertices.size() >= 5);
}

TEST_CASE("maximize_fis_objective on the triangle") {
  auto tri = make_triangle();
  auto opt = maximize_fis_objective(tri, {Rat(2), Rat(2), Rat(2)});
  CHECK(opt.value == Rat(3));
  CHECK(opt.eta == RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)});
  CHECK(opt.dual == RatVec{Rat(1), Rat(1), Rat(1)});

  auto zero = maximize_fis_objective(tri, {Rat(0), Rat(0), Rat(0)});
  CHECK(zero.value == Rat(0));
  CHECK(zero.dual == RatVec{Rat(0), Rat(0), Rat(0)});
  CHECK(is_fis(tri, zero.eta));
}

TEST_CASE("maximize_fis_objective on the path") {
  auto opt = maximize_fis_objective(make_path3(), {Rat(1), Rat(0), Rat(1)});
  CHECK(opt.value == Rat(2));
  CHECK(opt.eta == RatVec{Rat(1), Rat(0), Rat(1)});
  CHECK(opt.dual == RatVec{Rat(1), Rat(1)});
}

TEST_CASE("LP value equals vertex maximum on random costs") {
  Rng rng(7);
  for (const auto& net : {make_triangle(), make_path3(), make_square()}) {
    auto verts = enumerate_extreme_fis(net).vertices;
    for (int trial = 0; trial < 25; ++trial) {
      RatVec costs;
      for (int j = 0; j < net.n_parties(); ++j) costs.push_back(Rat(rng.uniform_int(0, 12), 4));
      auto opt = maximize_fis_objective(net, costs);
      Rat best(0);
      for (const auto& v : verts) {
        Rat val(0);
        for (int j = 0; j < net.n_parties(); ++j) val += costs[j] * v[j];
        best = std::max(best, val);
      }
      CHECK(opt.value == best);
      Rat dual_sum(0);
      for (const auto& c : opt.dual) dual_sum += c;
      CHECK(dual_sum == opt.value);  // strong duality, exact
    }
  }
}
