#include <doctest.h>

#include "finnet/distribution.hpp"
#include "finnet/rng.hpp"

using namespace finnet;

TEST_CASE("indexing convention: last party fastest") {
  auto d = make_delta({2, 2, 2}, {0, 1, 0});
  CHECK(d.p_rat(std::size_t{2}) == 1);  // 0*4 + 1*2 + 0
  CHECK(d.flat_index({1, 0, 1}) == 5);
  CHECK(d.outcome_of(5) == std::vector<int>{1, 0, 1});
}

TEST_CASE("marginals of named families") {
  auto ghz = make_ghz();
  auto ma = ghz.marginal({0});
  CHECK(ma.p_rat(std::size_t{0}) == Rat(1, 2));
  CHECK(ma.p_rat(std::size_t{1}) == Rat(1, 2));

  auto w = make_w();
  auto mc = w.marginal_rat(2);
  CHECK(mc[0] == Rat(2, 3));
  CHECK(mc[1] == Rat(1, 3));

  auto pu = make_uniform({2, 2, 2});
  auto mab = pu.marginal({0, 1});
  for (std::size_t f = 0; f < 4; ++f) CHECK(mab.p_rat(f) == Rat(1, 4));
}

TEST_CASE("pq family") {
  CHECK(make_pq(Rat(1, 2), Rat(1, 2)) == make_ghz());
  auto p = make_pq(Rat(1, 5), Rat(3, 10));
  CHECK(p.p_rat(std::size_t{0}) == Rat(1, 5));
  CHECK(p.p_rat(std::size_t{7}) == Rat(3, 10));
  for (std::size_t f = 1; f < 7; ++f) CHECK(p.p_rat(f) == Rat(1, 12));
  CHECK(p.validate().empty());
  CHECK_THROWS(make_pq(Rat(3, 4), Rat(1, 2)));
  CHECK_THROWS(make_pq(Rat(-1, 4), Rat(1, 2)));
}

TEST_CASE("pq marginal closed form: P_A(0) = (1+p-q)/2") {
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; i + j <= 6; ++j) {
      Rat p(i, 6), q(j, 6);
      auto d = make_pq(p, q);
      CHECK(d.marginal_rat(0)[0] == (Rat(1) + p - q) / 2);
    }
}

TEST_CASE("r_mix family") {
  CHECK(make_r_mix(Rat(0)) == make_uniform({2, 2, 2}));
  auto d = make_r_mix(Rat(7, 8));
  CHECK(d.p_rat(std::size_t{0}) == Rat(1, 64));
  CHECK(d.p_rat(std::size_t{7}) == Rat(7, 8) + Rat(1, 64));
  CHECK_THROWS(make_r_mix(Rat(9, 8)));
}

TEST_CASE("tower property of marginals") {
  Rng rng(11);
  std::vector<int> alphabets{2, 3, 2, 2};
  std::size_t size = 24;
  RatVec t(size);
  Rat total(0);
  for (auto& v : t) {
    v = Rat(rng.uniform_int(0, 20));
    total += v;
  }
  for (auto& v : t) v /= total;
  auto P = JointDistribution::exact(alphabets, std::move(t));
  auto via_T = P.marginal({0, 1, 3}).marginal({0, 2});  // subset {0,3} via {0,1,3}
  auto direct = P.marginal({0, 3});
  CHECK(via_T == direct);
}

TEST_CASE("bilocal factorization check") {
  // product distribution: pass with deviation 0
  RatVec t;
  RatVec pa{Rat(1, 4), Rat(3, 4)}, pb{Rat(1, 2), Rat(1, 2)}, pc{Rat(2, 3), Rat(1, 3)};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) t.push_back(pa[a] * pb[b] * pc[c]);
  auto prod = JointDistribution::exact({2, 2, 2}, std::move(t));
  auto rep = check_bilocal_factorization(prod);
  CHECK(rep.pass);
  CHECK(rep.max_deviation_exact == 0);

  auto ghz_rep = check_bilocal_factorization(make_ghz());
  CHECK(!ghz_rep.pass);
  CHECK(ghz_rep.max_deviation_exact == Rat(1, 4));  // P_AC(00)=1/2 vs 1/4

  CHECK_THROWS(check_bilocal_factorization(make_uniform({2, 2})));
}

TEST_CASE("float backend and validation") {
  auto f = make_ghz().to_float();
  CHECK(!f.is_exact());
  CHECK(f.p(std::size_t{0}) == doctest::Approx(0.5));
  CHECK(f.validate().empty());
  CHECK_THROWS(f.p_rat(std::size_t{0}));

  auto bad = JointDistribution::floating({2}, {0.7, 0.2});
  CHECK(!bad.validate().empty());
}
