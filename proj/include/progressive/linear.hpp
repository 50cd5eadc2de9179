#pragma once

// Exact feasibility of small linear systems over the rationals.
//
// Phase-one simplex on a dense tableau with Bland's rule: the pivot sequence
// is fully determined by the input, and anti-cycling is guaranteed.

#include <optional>
#include <vector>

#include "progressive/enumerate.hpp"
#include "progressive/error.hpp"
#include "progressive/rational.hpp"

namespace progressive {

enum class RowKind { Equal, LessEqual, GreaterEqual };

struct LinearSystem {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<RowKind> kinds;
  std::vector<bool> nonneg;  // one flag per variable

  std::size_t num_variables() const { return nonneg.size(); }

  void add_row(std::vector<Rational> coeffs, RowKind kind, Rational rhs) {
    a.push_back(std::move(coeffs));
    kinds.push_back(kind);
    b.push_back(std::move(rhs));
  }

  bool satisfied_by(const std::vector<Rational>& x) const {
    if (x.size() != num_variables()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (nonneg[j] && x[j] < 0) return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < x.size(); ++j) lhs += a[i][j] * x[j];
      switch (kinds[i]) {
        case RowKind::Equal:
          if (lhs != b[i]) return false;
          break;
        case RowKind::LessEqual:
          if (lhs > b[i]) return false;
          break;
        case RowKind::GreaterEqual:
          if (lhs < b[i]) return false;
          break;
      }
    }
    return true;
  }
};

/// One exact solution of the system, or nullopt when it is infeasible.
inline std::optional<std::vector<Rational>> exact_feasible(const LinearSystem& sys,
                                                           const EnumerationBudget& budget = {}) {
  const std::size_t m = sys.a.size();
  const std::size_t nvars = sys.num_variables();
  if (sys.b.size() != m || sys.kinds.size() != m) throw PreconditionError("linear system shape mismatch");
  for (const auto& row : sys.a) {
    if (row.size() != nvars) throw PreconditionError("linear system row has wrong width");
  }
  if (nvars > budget.max_variables) throw GuardExceeded("linear system exceeds the variable budget");

  // Column layout: split free variables into positive and negative parts,
  // then one slack per inequality, then one artificial per row.
  std::vector<std::size_t> pos_col(nvars), neg_col(nvars, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    pos_col[j] = ncols++;
    if (!sys.nonneg[j]) neg_col[j] = ncols++;
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (sys.kinds[i] != RowKind::Equal) slack_col[i] = ncols++;
  }
  const std::size_t first_artificial = ncols;
  ncols += m;
  if (m == 0) return std::vector<Rational>(nvars, Rational(0));

  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(ncols + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nvars; ++j) {
      t[i][pos_col[j]] = sys.a[i][j];
      if (neg_col[j] != SIZE_MAX) t[i][neg_col[j]] = -sys.a[i][j];
    }
    if (slack_col[i] != SIZE_MAX) t[i][slack_col[i]] = sys.kinds[i] == RowKind::LessEqual ? 1 : -1;
    t[i][ncols] = sys.b[i];
    if (t[i][ncols] < 0) {
      for (auto& v : t[i]) v = -v;
    }
    t[i][first_artificial + i] = 1;
    basis[i] = first_artificial + i;
  }

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> z(ncols + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < first_artificial; ++j) z[j] -= t[i][j];
    z[ncols] -= t[i][ncols];
  }

  while (true) {
    std::size_t enter = SIZE_MAX;
    for (std::size_t j = 0; j < first_artificial; ++j) {
      if (z[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == SIZE_MAX) break;

    std::size_t leave = SIZE_MAX;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][ncols] / t[i][enter];
      if (leave == SIZE_MAX || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a
    // positive entry.
    if (leave == SIZE_MAX) throw InternalError("phase-one simplex became unbounded");

    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j <= ncols; ++j) {
        if (t[leave][j] != 0) t[i][j] -= factor * t[leave][j];
      }
    }
    if (z[enter] != 0) {
      const Rational factor = z[enter];
      for (std::size_t j = 0; j <= ncols; ++j) {
        if (t[leave][j] != 0) z[j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  if (z[ncols] != 0) return std::nullopt;

  std::vector<Rational> column_value(ncols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) column_value[basis[i]] = t[i][ncols];
  std::vector<Rational> x(nvars);
  for (std::size_t j = 0; j < nvars; ++j) {
    x[j] = column_value[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) x[j] -= column_value[neg_col[j]];
  }
  if (!sys.satisfied_by(x)) throw InternalError("simplex returned a point that violates the system");
  return x;
}

}  // namespace progressive
