#pragma once

// Internal exact-rational simplex, two-phase with Bland's rule. Only the
// small LPs this project needs (FIS polytopes and their duals); not a
// general-purpose solver.

#include <stdexcept>
#include <vector>

#include "finnet/rational.hpp"

namespace finnet::detail {

struct SimplexResult {
  bool feasible = false;
  bool bounded = false;
  Rat value;
  RatVec x;
};

// maximize c.x  s.t.  A x <= b, x >= 0   (b of arbitrary sign)
inline SimplexResult simplex_max(const RatMat& A, RatVec b, const RatVec& c) {
  const size_t m = A.size();
  const size_t n = c.size();
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("simplex: ragged constraint matrix");
  if (b.size() != m) throw std::invalid_argument("simplex: rhs size mismatch");

  // Tableau columns: n structural + m slacks + up to m artificials + rhs.
  // Rows with negative rhs are negated (slack coefficient -1) and get an
  // artificial basis variable.
  std::vector<size_t> art_rows;
  RatMat T(m, RatVec());
  for (size_t i = 0; i < m; ++i) {
    RatVec row(n + m, Rat(0));
    Rat sign = (b[i] < 0) ? Rat(-1) : Rat(1);
    for (size_t j = 0; j < n; ++j) row[j] = sign * A[i][j];
    row[n + i] = sign;  // slack
    T[i] = std::move(row);
    b[i] *= sign;
    if (sign < 0) art_rows.push_back(i);
  }
  const size_t n_art = art_rows.size();
  const size_t total = n + m + n_art;
  for (size_t i = 0; i < m; ++i) T[i].resize(total, Rat(0));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;
  for (size_t k = 0; k < n_art; ++k) {
    T[art_rows[k]][n + m + k] = 1;
    basis[art_rows[k]] = n + m + k;
  }

  auto pivot = [&](size_t prow, size_t pcol) {
    Rat pv = T[prow][pcol];
    for (auto& v : T[prow]) v /= pv;
    b[prow] /= pv;
    for (size_t i = 0; i < m; ++i) {
      if (i == prow || T[i][pcol] == 0) continue;
      Rat f = T[i][pcol];
      for (size_t j = 0; j < total; ++j) T[i][j] -= f * T[prow][j];
      b[i] -= f * b[prow];
    }
    basis[prow] = pcol;
  };

  // Runs phase with objective vector obj over all columns. Returns false if
  // unbounded. Bland's rule: entering = lowest-index column with positive
  // reduced cost; leaving = lowest-index basic var among min-ratio rows.
  auto run = [&](const RatVec& obj, size_t ncols) -> bool {
    for (;;) {
      // reduced costs: obj_j - z_j where z_j = sum_i obj_basis(i) * T[i][j]
      size_t enter = total;
      for (size_t j = 0; j < ncols; ++j) {
        Rat red = obj[j];
        for (size_t i = 0; i < m; ++i)
          if (obj[basis[i]] != 0) red -= obj[basis[i]] * T[i][j];
        if (red > 0) { enter = j; break; }
      }
      if (enter == total) return true;  // optimal
      size_t leave = m;
      Rat best;
      for (size_t i = 0; i < m; ++i) {
        if (T[i][enter] > 0) {
          Rat ratio = b[i] / T[i][enter];
          if (leave == m || ratio < best ||
              (ratio == best && basis[i] < basis[leave])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave == m) return false;  // unbounded
      pivot(leave, enter);
    }
  };

  SimplexResult res;
  if (n_art > 0) {
    RatVec obj1(total, Rat(0));
    for (size_t k = 0; k < n_art; ++k) obj1[n + m + k] = Rat(-1);
    if (!run(obj1, total)) throw std::logic_error("simplex: phase 1 unbounded");
    Rat phase1 = 0;
    for (size_t i = 0; i < m; ++i)
      if (basis[i] >= n + m) phase1 += b[i];
    if (phase1 != 0) { res.feasible = false; return res; }
    // drive remaining artificials out of the basis
    for (size_t i = 0; i < m; ++i) {
      if (basis[i] >= n + m) {
        size_t j = 0;
        for (; j < n + m; ++j)
          if (T[i][j] != 0) break;
        if (j < n + m) pivot(i, j);
        // else: redundant row, artificial stays at value 0
      }
    }
  }
  res.feasible = true;

  RatVec obj2(total, Rat(0));
  for (size_t j = 0; j < n; ++j) obj2[j] = c[j];
  if (!run(obj2, n + m)) { res.bounded = false; return res; }
  res.bounded = true;
  res.x.assign(n, Rat(0));
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = b[i];
  res.value = 0;
  for (size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

}  // namespace finnet::detail
