#include <doctest.h>

#include <cmath>

#include "finnet/finner.hpp"
#include "finnet/rng.hpp"

using namespace finnet;

namespace {

JointDistribution random_exact_dist(Rng& rng, const std::vector<int>& alphabets) {
  std::size_t size = 1;
  for (int k : alphabets) size *= static_cast<std::size_t>(k);
  RatVec t(size);
  Rat total(0);
  for (auto& v : t) {
    v = Rat(rng.uniform_int(0, 24));
    total += v;
  }
  if (total == 0) { t[0] = 1; total = 1; }
  for (auto& v : t) v /= total;
  return JointDistribution::exact(alphabets, std::move(t));
}

}  // namespace

TEST_CASE("GHZ violates the triangle inequality at (0,0,0)") {
  auto rep = check_probability_form(make_triangle(), make_ghz());
  CHECK(rep.violated);
  CHECK(rep.exact);
  REQUIRE(rep.worst.has_value());
  CHECK(rep.worst->outcome == std::vector<int>{0, 0, 0});
  CHECK(rep.worst->eta == RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)});
  CHECK(rep.worst->lhs == doctest::Approx(0.5));
  CHECK(rep.worst->rhs == doctest::Approx(std::sqrt(1.0 / 8.0)));
  // lhs - rhs = 1/2 - 1/sqrt(8)
  CHECK(rep.worst->lhs - rep.worst->rhs == doctest::Approx(0.5 - 1.0 / std::sqrt(8.0)));
}

TEST_CASE("W satisfies the triangle inequality; tightest outcome (0,0,1)") {
  auto rep = check_probability_form(make_triangle(), make_w());
  CHECK(!rep.violated);
  // tightest outcome by hand: 1/3 <= sqrt(2/3 * 2/3 * 1/3)
  CHECK(1.0 / 3.0 <= std::sqrt(4.0 / 27.0));
}

TEST_CASE("uniform distribution satisfies with slack") {
  auto rep = check_probability_form(make_triangle(), make_uniform({2, 2, 2}));
  CHECK(!rep.violated);
}

TEST_CASE("r_mix(0.9) violates at (0,0,0)") {
  auto rep = check_probability_form(make_triangle(), make_r_mix(Rat(9, 10)));
  CHECK(rep.violated);
  REQUIRE(rep.worst.has_value());
  CHECK(rep.worst->outcome == std::vector<int>{0, 0, 0});
  CHECK(rep.worst->lhs == doctest::Approx(0.0125));
  CHECK(rep.worst->rhs == doctest::Approx(std::pow(0.05, 1.5)));
}

TEST_CASE("r = 7/8 equality is classified satisfied (exact squared form)") {
  auto rep = check_probability_form(make_triangle(), make_r_mix(Rat(7, 8)));
  CHECK(!rep.violated);
  // the exact equality: (1/64)^2 == (1/16)^3
  CHECK(rat_pow(Rat(1, 64), 2) == rat_pow(Rat(1, 16), 3));
  auto rep2 = check_probability_form(make_triangle(), make_r_mix(Rat(15, 16)));
  CHECK(rep2.violated);
  auto rep3 = check_probability_form(make_triangle(), make_r_mix(Rat(1, 2)));
  CHECK(!rep3.violated);
}

TEST_CASE("supplied non-FIS weights are rejected") {
  std::vector<RatVec> bad{{Rat(1), Rat(1), Rat(1)}};
  CHECK_THROWS(check_probability_form(make_triangle(), make_ghz(), &bad));
  CHECK_THROWS(check_probability_form(make_triangle(), make_uniform({2, 2})));
}

TEST_CASE("function form: indicators reproduce the probability form") {
  auto tri = make_triangle();
  auto ghz = make_ghz();
  RatVec half{Rat(1, 2), Rat(1, 2), Rat(1, 2)};
  std::vector<std::vector<double>> ind{{1, 0}, {1, 0}, {1, 0}};
  auto res = check_function_form(tri, ghz, half, ind);
  CHECK(res.lhs == doctest::Approx(0.5));
  CHECK(res.rhs == doctest::Approx(std::sqrt(1.0 / 8.0)));
  CHECK(!res.satisfied);

  std::vector<std::vector<double>> ones{{1, 1}, {1, 1}, {1, 1}};
  auto triv = check_function_form(tri, ghz, half, ones);
  CHECK(triv.lhs == doctest::Approx(1.0));
  CHECK(triv.rhs == doctest::Approx(1.0));
  CHECK(triv.satisfied);

  CHECK_THROWS(check_function_form(tri, ghz, half, {{1, -1}, {1, 0}, {1, 0}}));
}

TEST_CASE("indicator reduction equals probability form on random distributions") {
  Rng rng(5);
  auto tri = make_triangle();
  auto fis = enumerate_extreme_fis(tri).vertices;
  for (int trial = 0; trial < 10; ++trial) {
    auto P = random_exact_dist(rng, {2, 2, 2});
    for (const auto& eta : fis) {
      std::vector<RatVec> one{eta};
      auto rep = check_probability_form(tri, P, &one);
      bool any_violation = false;
      for (std::size_t f = 0; f < P.size(); ++f) {
        auto o = P.outcome_of(f);
        std::vector<std::vector<double>> ind(3);
        for (int j = 0; j < 3; ++j) {
          ind[j].assign(2, 0.0);
          ind[j][o[j]] = 1.0;
        }
        auto res = check_function_form(tri, P, eta, ind);
        if (!res.satisfied) any_violation = true;
      }
      CHECK(rep.violated == any_violation);
    }
  }
}

TEST_CASE("monotonicity: checking extreme FIS suffices") {
  // if eta <= eta' entrywise then rhs(eta) >= rhs(eta'), so interior FIS are
  // implied by extreme ones; cross-check against dense FIS sampling
  Rng rng(17);
  auto tri = make_triangle();
  auto fis = enumerate_extreme_fis(tri).vertices;
  for (int trial = 0; trial < 20; ++trial) {
    auto P = random_exact_dist(rng, {2, 2, 2});
    auto extreme_rep = check_probability_form(tri, P, &fis);
    // dense sample of interior FIS
    bool any_interior_violation = false;
    for (int s = 0; s < 40; ++s) {
      RatVec eta(3);
      do {
        for (int j = 0; j < 3; ++j) eta[j] = Rat(rng.uniform_int(0, 8), 16);
      } while (!is_fis(tri, eta));
      std::vector<RatVec> one{eta};
      if (check_probability_form(tri, P, &one).violated) any_interior_violation = true;
    }
    if (any_interior_violation) CHECK(extreme_rep.violated);
  }
}

TEST_CASE("exact and float verdicts agree away from the boundary") {
  Rng rng(23);
  auto tri = make_triangle();
  for (int trial = 0; trial < 30; ++trial) {
    auto P = random_exact_dist(rng, {2, 2, 2});
    auto exact_rep = check_probability_form(tri, P);
    auto float_rep = check_probability_form(tri, P.to_float());
    // compare only when the float worst gap is clearly away from zero
    double gap = float_rep.worst ? float_rep.worst->log_gap
                                 : (exact_rep.worst ? exact_rep.worst->log_gap : -1.0);
    if (std::abs(gap) > 1e-9) CHECK(exact_rep.violated == float_rep.violated);
  }
}

TEST_CASE("pq scan examples") {
  auto scan = scan_pq_region(40);
  auto cell_at = [&](double p, double q) {
    for (const auto& c : scan.cells)
      if (std::abs(c.x - p) < 1e-12 && std::abs(c.y - q) < 1e-12) return c;
    REQUIRE(false);
    return scan.cells.front();
  };
  // (1/8, 0.7): boundary at q = 1.125 - 2(1/4) = 0.625 < 0.7 -> violated
  CHECK(cell_at(0.125, 0.7).violated);
  CHECK(!cell_at(0.125, 0.5).violated);
  CHECK(cell_at(0.5, 0.5).violated);  // GHZ
  // verdict vs analytic boundary: exact agreement except the straddling cell
  for (const auto& c : scan.cells) {
    if (std::abs(c.y - c.boundary) > 1.0 / 40.0 + 1e-9)
      CHECK(c.violated == (c.y > c.boundary));
  }
}

TEST_CASE("r scan: violation interval is (7/8, 1)") {
  const int g = 256;
  auto scan = scan_r_line(g);
  for (const auto& c : scan.cells) {
    bool expect = c.x > 7.0 / 8.0 && c.x < 1.0;
    CHECK(c.violated == expect);
  }
}

TEST_CASE("certify_topology: GHZ against the three-party candidates") {
  std::vector<Network> candidates{make_triangle(), make_path3(), make_common_source3()};
  auto results = certify_topology(make_ghz(), candidates);
  REQUIRE(results.size() == 3);
  CHECK(results[0].verdict == TopologyVerdict::ruled_out);
  CHECK(results[1].verdict == TopologyVerdict::ruled_out);
  REQUIRE(results[1].witness.has_value());
  // the (1,0,1) vertex catches the factorization failure pointwise:
  // P(000) = 1/2 > P_A(0) P_C(0) = 1/4
  CHECK(results[1].witness->eta == RatVec{Rat(1), Rat(0), Rat(1)});
  CHECK(results[2].verdict == TopologyVerdict::compatible_so_far);

  auto all_pu = certify_topology(make_uniform({2, 2, 2}), candidates);
  for (const auto& r : all_pu) CHECK(r.verdict == TopologyVerdict::compatible_so_far);

  auto w_tri = certify_topology(make_w(), {make_triangle()});
  CHECK(w_tri[0].verdict == TopologyVerdict::compatible_so_far);
  CHECK(w_tri[0].detail.find("NOT asserted") != std::string::npos);
}
