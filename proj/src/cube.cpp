#include "finnet/cube.hpp"

#include <algorithm>
#include <stdexcept>

namespace finnet {

namespace {

RatVec widths(const RatVec& cuts) {
  RatVec w;
  Rat prev(0);
  for (const auto& c : cuts) {
    w.push_back(c - prev);
    prev = c;
  }
  w.push_back(Rat(1) - prev);
  return w;
}

// probability that a cell labeled `label` outputs `out`
Rat match_prob(int label, int out, int alphabet) {
  if (label == -1) return Rat(1, alphabet);
  return label == out ? Rat(1) : Rat(0);
}

}  // namespace

CubeStrategy make_question_cube(int alphabet) {
  CubeStrategy s;
  s.alphabet = alphabet;
  for (int f = 0; f < 3; ++f) s.faces[f] = {{-1}};
  return s;
}

std::vector<std::string> validate_strategy(const CubeStrategy& s) {
  std::vector<std::string> out;
  if (s.alphabet < 1) out.push_back("alphabet must be positive");
  for (int ax = 0; ax < 3; ++ax) {
    Rat prev(0);
    for (const auto& c : s.cuts[ax]) {
      if (!(c > prev) || !(c < 1))
        out.push_back("cuts on axis " + std::to_string(ax) +
                      " must be strictly increasing within (0,1)");
      prev = c;
    }
  }
  // faces[0] = A over (axis1, axis2); faces[1] = B over (axis0, axis2);
  // faces[2] = C over (axis0, axis1)
  const int rows_of[3] = {1, 0, 0};
  const int cols_of[3] = {2, 2, 1};
  for (int f = 0; f < 3; ++f) {
    const auto& grid = s.faces[f];
    const int nr = static_cast<int>(s.cuts[rows_of[f]].size()) + 1;
    const int nc = static_cast<int>(s.cuts[cols_of[f]].size()) + 1;
    if (static_cast<int>(grid.size()) != nr) {
      out.push_back("face " + std::to_string(f) + " row count mismatch");
      continue;
    }
    for (const auto& row : grid) {
      if (static_cast<int>(row.size()) != nc) {
        out.push_back("face " + std::to_string(f) + " column count mismatch");
        break;
      }
      for (int v : row)
        if (v < -1 || v >= s.alphabet)
          out.push_back("face " + std::to_string(f) + " has an out-of-range label");
    }
  }
  return out;
}

JointDistribution evaluate_cube(const CubeStrategy& s) {
  auto bad = validate_strategy(s);
  if (!bad.empty()) throw std::invalid_argument("evaluate_cube: " + bad.front());
  const int k = s.alphabet;
  const auto wa = widths(s.cuts[0]), wb = widths(s.cuts[1]), wc = widths(s.cuts[2]);
  RatVec table(static_cast<std::size_t>(k) * k * k, Rat(0));
  for (std::size_t i = 0; i < wa.size(); ++i) {
    for (std::size_t j = 0; j < wb.size(); ++j) {
      for (std::size_t l = 0; l < wc.size(); ++l) {
        const Rat vol = wa[i] * wb[j] * wc[l];
        if (vol == 0) continue;
        const int la = s.faces[0][j][l];  // A sees (axis1, axis2)
        const int lb = s.faces[1][i][l];  // B sees (axis0, axis2)
        const int lc = s.faces[2][i][j];  // C sees (axis0, axis1)
        for (int a = 0; a < k; ++a) {
          Rat pa = match_prob(la, a, k);
          if (pa == 0) continue;
          for (int b = 0; b < k; ++b) {
            Rat pb = match_prob(lb, b, k);
            if (pb == 0) continue;
            for (int c = 0; c < k; ++c) {
              Rat pc = match_prob(lc, c, k);
              if (pc == 0) continue;
              table[(static_cast<std::size_t>(a) * k + b) * k + c] += vol * pa * pb * pc;
            }
          }
        }
      }
    }
  }
  return JointDistribution::exact({k, k, k}, std::move(table));
}

JointDistribution contract_closed_form(const JointDistribution& P, const Rat& t) {
  if (P.arity() != 3 || P.alphabets() != std::vector<int>{2, 2, 2} || !P.is_exact())
    throw std::invalid_argument("contract_closed_form: exact binary 3-party distribution required");
  if (t < 0 || t > 1) throw std::invalid_argument("contract_closed_form: t out of [0,1]");
  RatVec ma = P.marginal_rat(0), mb = P.marginal_rat(1), mc = P.marginal_rat(2);
  const Rat t2 = t * t, t3 = t * t * t;
  RatVec table(8);
  for (std::size_t f = 0; f < 8; ++f) {
    auto o = P.outcome_of(f);
    table[f] = (Rat(1) - 3 * t2 + 2 * t3 + 8 * t3 * P.p_rat(f) +
                2 * t2 * (Rat(1) - t) * (ma[o[0]] + mb[o[1]] + mc[o[2]])) /
               8;
  }
  return JointDistribution::exact({2, 2, 2}, std::move(table));
}

ContractionResult contract(const JointDistribution& P, const CubeStrategy& s, const Rat& t) {
  if (s.alphabet != 2)
    throw std::invalid_argument("contract: binary outputs required");
  if (t < 0 || t > 1) throw std::invalid_argument("contract: t out of [0,1]");
  if (!(evaluate_cube(s) == P))
    throw std::invalid_argument("contract: strategy does not realize the given distribution");

  CubeStrategy corner;
  corner.alphabet = 2;
  if (t == 0) {
    corner = make_question_cube(2);
  } else if (t == 1) {
    corner = s;
  } else {
    for (int ax = 0; ax < 3; ++ax) {
      corner.cuts[ax].push_back(Rat(1) - t);
      for (const auto& c : s.cuts[ax]) corner.cuts[ax].push_back(Rat(1) - t + t * c);
    }
    const int rows_of[3] = {1, 0, 0};
    const int cols_of[3] = {2, 2, 1};
    for (int f = 0; f < 3; ++f) {
      const int nr = static_cast<int>(s.cuts[rows_of[f]].size()) + 2;
      const int nc = static_cast<int>(s.cuts[cols_of[f]].size()) + 2;
      corner.faces[f].assign(nr, std::vector<int>(nc, -1));
      for (int r = 1; r < nr; ++r)
        for (int c = 1; c < nc; ++c) corner.faces[f][r][c] = s.faces[f][r - 1][c - 1];
    }
  }

  auto closed = contract_closed_form(P, t);
  auto direct = evaluate_cube(corner);
  if (!(closed == direct))
    throw std::logic_error("contract: closed form and corner strategy disagree");
  return ContractionResult{std::move(closed), std::move(corner)};
}

RatVec gamma_generator(const std::array<int, 3>& labels, const Rat& eps) {
  if (!(eps > 0) || !(eps < 1)) throw std::invalid_argument("gamma_generator: eps in (0,1)");
  CubeStrategy s;
  s.alphabet = 2;
  for (int ax = 0; ax < 3; ++ax) s.cuts[ax] = {eps};
  for (int f = 0; f < 3; ++f) s.faces[f] = {{labels[f], -1}, {-1, -1}};
  auto Q = evaluate_cube(s);
  RatVec gamma(8);
  for (std::size_t o = 0; o < 8; ++o) gamma[o] = 8 * (Q.p_rat(o) - Rat(1, 8));
  return gamma;
}

int gamma_span_rank() {
  RatMat rows;
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y)
      for (int z = -1; z <= 1; ++z) {
        if (x == -1 && y == -1 && z == -1) continue;
        for (const Rat& eps : {Rat(1, 4), Rat(1, 6)})
          rows.push_back(gamma_generator({x, y, z}, eps));
      }
  return rat_rank(std::move(rows));
}

namespace {

struct PlannedCube {
  std::array<int, 3> labels;
  Rat eps;
};

// Accumulated parity coefficients of sum_i Gamma_i, indexed by party mask.
struct ParityAcc {
  std::array<Rat, 8> c{};  // index 0 unused

  void add_cube(const std::array<int, 3>& labels, const Rat& eps) {
    std::vector<int> det;
    std::array<int, 3> sigma{1, 1, 1};
    for (int j = 0; j < 3; ++j) {
      if (labels[j] != -1) {
        det.push_back(j);
        sigma[j] = labels[j] == 0 ? 1 : -1;
      }
    }
    const Rat e2 = eps * eps, e3 = e2 * eps;
    for (int j : det) c[1 << j] += e2 * sigma[j];
    for (std::size_t u = 0; u < det.size(); ++u)
      for (std::size_t v = u + 1; v < det.size(); ++v)
        c[(1 << det[u]) | (1 << det[v])] += e3 * sigma[det[u]] * sigma[det[v]];
    if (det.size() == 3) c[7] += e3 * sigma[0] * sigma[1] * sigma[2];
  }
};

// label triples realizing a requested sign pattern on the deterministic faces
std::array<int, 3> labels_from_sigma(const std::vector<int>& parties,
                                     const std::vector<int>& sigma) {
  std::array<int, 3> lab{-1, -1, -1};
  for (std::size_t i = 0; i < parties.size(); ++i) lab[parties[i]] = sigma[i] > 0 ? 0 : 1;
  return lab;
}

// Adds cubes realizing coefficient `target` on the eps^3 parity of the given
// party set (|parties| in {2,3}), using the homogenized four-cube identity
// (u+1)^3 + (u-1)^3 - u^3 - u^3 = 6u. Variants are picked so the eps^2
// singles byproducts largely cancel; whatever remains is folded into `acc`
// and absorbed by the lower-order solves.
void add_cubic_target(std::vector<PlannedCube>& plan, ParityAcc& acc,
                      const std::vector<int>& parties, const Rat& target, const Rat& eps0) {
  if (target == 0) return;
  const int sgn = target > 0 ? 1 : -1;
  const Rat u = rat_abs(target) / (6 * eps0 * eps0 * eps0);

  struct Term { Rat value; };                      // signed multiples of eps0
  const std::array<Rat, 4> values{u + 1, u - 1, -u, -u};

  auto push = [&](const Rat& v, bool is_equal_pair, int pair_slot) {
    if (v == 0) return;
    int s = (v > 0 ? 1 : -1) * sgn;  // required sign of the cube's sigma product
    Rat base = eps0 * rat_abs(v);
    std::vector<int> sigma;
    if (parties.size() == 2) {
      // slot1 negates slot0, so the equal-base pair cancels its singles
      sigma = (pair_slot == 0) ? std::vector<int>{1, s} : std::vector<int>{-1, -s};
    } else {
      if (is_equal_pair) {
        // sigma products must both equal s; full negation would flip the
        // product, so two of the three singles cancel and one doubles
        if (s == -1)
          sigma = (pair_slot == 0) ? std::vector<int>{1, 1, -1} : std::vector<int>{-1, -1, -1};
        else
          sigma = (pair_slot == 0) ? std::vector<int>{1, -1, -1} : std::vector<int>{-1, 1, -1};
      } else {
        sigma = (pair_slot == 0)
                    ? std::vector<int>{1, 1, s}
                    : std::vector<int>{-1, -1, s};
      }
    }
    auto lab = labels_from_sigma(parties, sigma);
    plan.push_back({lab, base});
    acc.add_cube(lab, base);
  };

  push(values[0], false, 0);
  push(values[1], false, 1);
  push(values[2], true, 0);
  push(values[3], true, 1);
}

}  // namespace

Rat ball_radius_l1() { return Rat(1, 524288); }  // (1/64)^3 / 2

BallResult ball_construction(const RatVec& S) {
  if (S.size() != 8) throw std::invalid_argument("ball_construction: need 8 entries");
  Rat sum(0);
  for (const auto& v : S) sum += v;
  if (sum != 0) throw std::invalid_argument("ball_construction: entries must sum to 0");

  // parity coefficients of 8*S
  std::array<Rat, 8> t{};
  for (int mask = 1; mask < 8; ++mask) {
    for (int o = 0; o < 8; ++o) {
      int bits = ((o >> 2) & (mask & 1)) ^ (((o >> 1) & 1) & ((mask >> 1) & 1)) ^
                 ((o & 1) & ((mask >> 2) & 1));
      t[mask] += (bits ? Rat(-1) : Rat(1)) * S[o];
    }
  }

  const RatVec scales{Rat(1, 26), Rat(1, 32), Rat(1, 48), Rat(1, 64),
                      Rat(1, 96), Rat(1, 128), Rat(1, 192), Rat(1, 256)};
  std::string last_error = "empty scale list";
  for (const auto& eps0 : scales) {
    std::vector<PlannedCube> plan;
    ParityAcc acc;

    add_cubic_target(plan, acc, {0, 1, 2}, t[7], eps0);
    add_cubic_target(plan, acc, {0, 1}, t[3] - acc.c[3], eps0);
    add_cubic_target(plan, acc, {0, 2}, t[5] - acc.c[5], eps0);
    add_cubic_target(plan, acc, {1, 2}, t[6] - acc.c[6], eps0);

    bool ok = true;
    for (int j = 0; j < 3 && ok; ++j) {
      const int mask = 1 << j;
      Rat resid = t[mask] - acc.c[mask];
      if (resid == 0) continue;
      // single eps^2 generator when the coefficient is a rational square
      auto root = rat_sqrt_exact(rat_abs(resid));
      if (root && *root < Rat(1, 8)) {
        std::array<int, 3> lab{-1, -1, -1};
        lab[j] = resid > 0 ? 0 : 1;
        plan.push_back({lab, *root});
        acc.add_cube(lab, *root);
        continue;
      }
      const Rat e = 3 * eps0;
      const Rat h = resid / (4 * e);
      if (!(rat_abs(h) < e)) { ok = false; last_error = "single-direction residual too large"; break; }
      std::array<int, 3> lab0{-1, -1, -1}, lab1{-1, -1, -1};
      lab0[j] = 0;
      lab1[j] = 1;
      plan.push_back({lab0, e + h});
      acc.add_cube(lab0, e + h);
      plan.push_back({lab1, e - h});
      acc.add_cube(lab1, e - h);
    }
    if (!ok) continue;

    for (int mask = 1; mask < 8; ++mask)
      if (acc.c[mask] != t[mask]) throw std::logic_error("ball_construction: parity solve failed");

    Rat total(0);
    bool fits = true;
    for (const auto& cube : plan) {
      if (!(cube.eps > 0) || !(cube.eps < 1)) { fits = false; break; }
      total += cube.eps;
    }
    if (!fits || !(total < 1)) { last_error = "interval packing exceeds the unit cube"; continue; }

    CubeStrategy s;
    s.alphabet = 2;
    const int n = static_cast<int>(plan.size());
    Rat off(0);
    for (int q = 0; q < n; ++q) {
      off += plan[q].eps;
      for (int ax = 0; ax < 3; ++ax) s.cuts[ax].push_back(off);
    }
    for (int f = 0; f < 3; ++f)
      s.faces[f].assign(n + 1, std::vector<int>(n + 1, -1));
    for (int q = 0; q < n; ++q) {
      s.faces[0][q][q] = plan[q].labels[0];
      s.faces[1][q][q] = plan[q].labels[1];
      s.faces[2][q][q] = plan[q].labels[2];
    }

    auto achieved = evaluate_cube(s);
    for (std::size_t o = 0; o < 8; ++o) {
      if (achieved.p_rat(o) != Rat(1, 8) + S[o])
        throw std::logic_error("ball_construction: achieved distribution mismatch");
    }
    return BallResult{std::move(s), std::move(achieved)};
  }
  throw std::invalid_argument("ball_construction: S outside representable radius (" + last_error + ")");
}

GridSearchResult grid_search(const JointDistribution& target, int k, int d, std::uint64_t guard) {
  if (!target.is_exact() || target.arity() != 3)
    throw std::invalid_argument("grid_search: exact 3-party target required");
  if (k < 1 || d < 1 || k - 1 > d - 1)
    throw std::invalid_argument("grid_search: need 1 <= k <= d");
  const int alphabet = target.alphabets()[0];
  for (int a : target.alphabets())
    if (a != alphabet) throw std::invalid_argument("grid_search: equal alphabets required");

  // label assignments per cut choice: alphabet^(3 k^2)
  long double assigns = 1;
  for (int i = 0; i < 3 * k * k; ++i) assigns *= alphabet;
  if (assigns > static_cast<long double>(guard))
    throw std::invalid_argument("grid_search: label space exceeds guard");

  // all (k-1)-subsets of {1/d, ..., (d-1)/d}
  std::vector<RatVec> cut_options;
  std::vector<int> pick(k - 1);
  for (int i = 0; i < k - 1; ++i) pick[i] = i + 1;
  if (k == 1) {
    cut_options.push_back({});
  } else {
    for (;;) {
      RatVec cuts;
      for (int v : pick) cuts.push_back(Rat(v, d));
      cut_options.push_back(std::move(cuts));
      int i = k - 2;
      while (i >= 0 && pick[i] == d - 1 - (k - 2 - i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  GridSearchResult res;
  bool have = false;
  const std::uint64_t n_labels = static_cast<std::uint64_t>(assigns);
  const int cells2 = k * k;

  for (const auto& ca : cut_options)
    for (const auto& cb : cut_options)
      for (const auto& cc : cut_options) {
        CubeStrategy s;
        s.alphabet = alphabet;
        s.cuts = {ca, cb, cc};
        for (int f = 0; f < 3; ++f) s.faces[f].assign(k, std::vector<int>(k, 0));
        for (std::uint64_t code = 0; code < n_labels; ++code) {
          std::uint64_t c = code;
          for (int f = 0; f < 3; ++f)
            for (int cell = 0; cell < cells2; ++cell) {
              s.faces[f][cell / k][cell % k] = static_cast<int>(c % alphabet);
              c /= alphabet;
            }
          auto P = evaluate_cube(s);
          Rat dist(0);
          for (std::size_t o = 0; o < P.size(); ++o)
            dist += rat_abs(P.p_rat(o) - target.p_rat(o));
          ++res.evaluated;
          if (!have || dist < res.best_l1) {
            have = true;
            res.best_l1 = dist;
            res.best = s;
          }
          if (res.best_l1 == 0) break;
        }
        if (have && res.best_l1 == 0) break;
      }
  res.exact_hit = have && res.best_l1 == 0;
  return res;
}

}  // namespace finnet
