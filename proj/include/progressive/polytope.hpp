#pragma once

// The linear system cutting out cumulative RCFs that satisfy the random theta
// axioms, its total-unimodularity certificate, and an exact vertex
// enumeration used to confirm integrality.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "progressive/core.hpp"
#include "progressive/models.hpp"
#include "progressive/random.hpp"
#include "progressive/rational.hpp"

namespace progressive {

using IntMatrix = std::vector<std::vector<int>>;

/// Which family of inequalities produced a row.
enum class RowFamily : int {
  RemoveWorse = 1,   // q(y,S) - q(y,S\{x}) <= 0 for y > x
  RemoveBetter = 2,  // q(y,S\{x}) - q(y,S) <= 0 for x > y
  Monotone = 3,      // q(x,S) - q(next worse,S) <= 0
  Cap = 4,           // q(worst of S, S) <= 1
};

struct RowTag {
  RowFamily family;
  std::size_t set_index;
  Alt x;
  Alt y;  // second alternative; equals x for Cap rows
};

struct Column {
  Alt x;
  std::size_t set_index;
};

/// Lambda q <= rhs over columns indexed by the pairs (x, S) with x in S.
struct ConstraintSystem {
  DomainPtr domain;
  Ordering order;
  std::vector<Column> columns;
  IntMatrix lambda;
  std::vector<int> rhs;
  std::vector<RowTag> tags;

  std::size_t column_of(Alt x, std::size_t set_index) const {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].x == x && columns[j].set_index == set_index) return j;
    }
    throw DomainMismatch("no column for the requested (x, S)");
  }
};

/// Rows are grouped by family; columns follow canonical set order and, within
/// a set, the global ranking.
inline ConstraintSystem build_constraints(const DomainPtr& domain, const Ordering& order) {
  detail::require_full(*domain, "build_constraints");
  if (order.size() != domain->size()) throw DomainMismatch("ordering size differs from domain");
  ConstraintSystem sys{domain, order, {}, {}, {}, {}};
  const std::size_t n = domain->size();
  std::vector<std::size_t> col(domain->num_sets() * n, SIZE_MAX);
  for (std::size_t i = 0; i < domain->num_sets(); ++i) {
    for (Alt x : restrict_ordering(order, domain->set(i))) {
      col[i * n + x] = sys.columns.size();
      sys.columns.push_back({x, i});
    }
  }
  const std::size_t width = sys.columns.size();
  auto add = [&](std::size_t plus, std::size_t minus, int rhs, RowTag tag) {
    std::vector<int> row(width, 0);
    row[plus] = 1;
    if (minus != SIZE_MAX) row[minus] = -1;
    sys.lambda.push_back(std::move(row));
    sys.rhs.push_back(rhs);
    sys.tags.push_back(tag);
  };

  const auto removal = detail::removal_table(*domain);
  for (RowFamily family : {RowFamily::RemoveWorse, RowFamily::RemoveBetter}) {
    for (std::size_t i = 0; i < domain->num_sets(); ++i) {
      const auto ranked = restrict_ordering(order, domain->set(i));
      for (Alt y : ranked) {
        for (Alt x : ranked) {
          const std::size_t j = removal[i * n + x];
          if (x == y || j == SIZE_MAX) continue;
          if (family == RowFamily::RemoveWorse && order.better(y, x)) {
            add(col[i * n + y], col[j * n + y], 0, {family, i, x, y});
          } else if (family == RowFamily::RemoveBetter && order.better(x, y)) {
            add(col[j * n + y], col[i * n + y], 0, {family, i, x, y});
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < domain->num_sets(); ++i) {
    const auto ranked = restrict_ordering(order, domain->set(i));
    for (std::size_t k = 0; k + 1 < ranked.size(); ++k) {
      add(col[i * n + ranked[k]], col[i * n + ranked[k + 1]], 0, {RowFamily::Monotone, i, ranked[k], ranked[k + 1]});
    }
  }
  for (std::size_t i = 0; i < domain->num_sets(); ++i) {
    const Alt worst = restrict_ordering(order, domain->set(i)).back();
    add(col[i * n + worst], SIZE_MAX, 1, {RowFamily::Cap, i, worst, worst});
  }
  return sys;
}

/// Heller-Tompkins sufficient condition applied to the transpose of lambda with
/// the partition R1 = all rows, R2 = empty: entries in {-1,0,1}, at most two
/// nonzeros per row of lambda, and two nonzeros must have opposite signs.
inline bool heller_check(const IntMatrix& lambda) {
  for (const auto& row : lambda) {
    int nonzeros = 0;
    int sign_sum = 0;
    for (int v : row) {
      if (v < -1 || v > 1) return false;
      if (v != 0) {
        ++nonzeros;
        sign_sum += v;
      }
    }
    if (nonzeros > 2) return false;
    if (nonzeros == 2 && sign_sum != 0) return false;
  }
  return true;
}

inline bool heller_check(const ConstraintSystem& sys) { return heller_check(sys.lambda); }

/// Exact determinant by fraction-free elimination.
inline Integer determinant(const IntMatrix& m) {
  const std::size_t k = m.size();
  if (k == 0) return Integer(1);
  std::vector<std::vector<Integer>> a(k, std::vector<Integer>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = m[i][j];
  }
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (a[p][p] == 0) {
      std::size_t swap_row = p + 1;
      while (swap_row < k && a[swap_row][p] == 0) ++swap_row;
      if (swap_row == k) return Integer(0);
      std::swap(a[p], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) {
        a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
      }
    }
    prev = a[p][p];
  }
  return sign * a[k - 1][k - 1];
}

using Point = std::vector<Rational>;

namespace detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & ~o.words_[k]) != 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

/// All vertices of {q in [0,1]^d : lambda q <= rhs}, sorted.
///
/// Double description: start from the vertices of the unit cube and cut with
/// one row at a time. A new vertex is created on every edge between a kept
/// and a cut vertex; adjacency uses the combinatorial test on tight sets.
inline std::vector<Point> enumerate_vertices(const IntMatrix& lambda, const std::vector<int>& rhs,
                                             std::size_t max_dimension = 12) {
  const std::size_t d = lambda.empty() ? 0 : lambda.front().size();
  if (d == 0) throw PreconditionError("constraint system has no columns");
  if (d > max_dimension) throw GuardExceeded("vertex enumeration is limited to 12 columns");
  const std::size_t total = 2 * d + lambda.size();

  // Constraint k < d: q_k >= 0; d <= k < 2d: q_{k-d} <= 1; then lambda rows.
  auto slack = [&](std::size_t k, const Point& q) -> Rational {
    if (k < d) return q[k];
    if (k < 2 * d) return Rational(1) - q[k - d];
    const auto& row = lambda[k - 2 * d];
    Rational s = rhs[k - 2 * d];
    for (std::size_t j = 0; j < d; ++j) {
      if (row[j] != 0) s -= row[j] * q[j];
    }
    return s;
  };

  struct Vertex {
    Point q;
    detail::Bits tight;
  };
  auto tight_set = [&](const Point& q, std::size_t active) {
    detail::Bits b(total);
    for (std::size_t k = 0; k < active; ++k) {
      if (slack(k, q) == 0) b.set(k);
    }
    return b;
  };

  std::vector<Vertex> verts;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    Point q(d);
    for (std::size_t j = 0; j < d; ++j) q[j] = ((mask >> j) & 1U) ? 1 : 0;
    auto b = tight_set(q, 2 * d);
    verts.push_back({std::move(q), std::move(b)});
  }

  for (std::size_t r = 0; r < lambda.size(); ++r) {
    const std::size_t k = 2 * d + r;
    std::vector<Rational> s(verts.size());
    std::vector<std::size_t> plus, minus;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      s[v] = slack(k, verts[v].q);
      if (s[v] > 0) plus.push_back(v);
      if (s[v] < 0) minus.push_back(v);
    }
    if (minus.empty()) {
      for (std::size_t v = 0; v < verts.size(); ++v) {
        if (s[v] == 0) verts[v].tight.set(k);
      }
      continue;
    }
    std::vector<Vertex> next;
    std::set<Point> fresh;
    for (std::size_t u : plus) {
      for (std::size_t w : minus) {
        const auto common = verts[u].tight & verts[w].tight;
        if (common.count() + 1 < d) continue;
        bool adjacent = true;
        for (std::size_t v = 0; v < verts.size() && adjacent; ++v) {
          if (v != u && v != w && common.subset_of(verts[v].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        const Rational t = s[u] / (s[u] - s[w]);
        Point q(d);
        for (std::size_t j = 0; j < d; ++j) q[j] = verts[u].q[j] + t * (verts[w].q[j] - verts[u].q[j]);
        fresh.insert(std::move(q));
      }
    }
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (s[v] >= 0) {
        if (s[v] == 0) verts[v].tight.set(k);
        next.push_back(std::move(verts[v]));
      }
    }
    for (const auto& q : fresh) {
      auto b = tight_set(q, k + 1);
      next.push_back({q, std::move(b)});
    }
    verts = std::move(next);
  }

  std::vector<Point> out;
  out.reserve(verts.size());
  for (auto& v : verts) out.push_back(std::move(v.q));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Point> enumerate_vertices(const ConstraintSystem& sys) {
  return enumerate_vertices(sys.lambda, sys.rhs);
}

/// The cumulative RCF of a choice function as a point in column order.
inline Point crcf_point(const ConstraintSystem& sys, const ChoiceFunction& c) {
  require_same_domain(sys.domain, c.domain());
  Point q(sys.columns.size());
  for (std::size_t j = 0; j < sys.columns.size(); ++j) {
    const auto& col = sys.columns[j];
    q[j] = sys.order.better(c[col.set_index], col.x) ? 1 : 0;
  }
  return q;
}

/// The choice function whose cumulative RCF is q, if q is one.
///
/// A 0/1 block for set S is monotone down the ranking; it is a cumulative RCF
/// exactly when the best alternative carries 0. An all-ones block is a
/// vertex pattern no choice function produces.
inline std::optional<ChoiceFunction> function_of_vertex(const ConstraintSystem& sys, const Point& q) {
  const Domain& d = *sys.domain;
  std::vector<Alt> picks(d.num_sets());
  for (std::size_t i = 0; i < d.num_sets(); ++i) {
    const auto ranked = restrict_ordering(sys.order, d.set(i));
    std::size_t zeros = 0;
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      const Rational& v = q[sys.column_of(ranked[k], i)];
      if (v != 0 && v != 1) return std::nullopt;
      if (v == 0) {
        if (zeros != k) return std::nullopt;
        ++zeros;
      }
    }
    if (zeros == 0) return std::nullopt;
    picks[i] = ranked[zeros - 1];
  }
  return ChoiceFunction(sys.domain, std::move(picks));
}

enum class VertexKind {
  Function,   // the cumulative RCF of a choice function
  Truncated,  // 0/1 point with some set's block all ones
  Other,      // fractional, or not monotone within a block
};

struct VertexClass {
  VertexKind kind;
  std::optional<ChoiceFunction> function;
};

inline VertexClass classify_vertex(const ConstraintSystem& sys, const Point& q) {
  if (auto c = function_of_vertex(sys, q)) return {VertexKind::Function, std::move(c)};
  const Domain& d = *sys.domain;
  bool binary_monotone = true;
  bool some_all_ones = false;
  for (std::size_t i = 0; i < d.num_sets() && binary_monotone; ++i) {
    const auto ranked = restrict_ordering(sys.order, d.set(i));
    bool all_ones = true;
    Rational previous = 0;
    for (Alt x : ranked) {
      const Rational& v = q[sys.column_of(x, i)];
      if ((v != 0 && v != 1) || v < previous) binary_monotone = false;
      if (v != 1) all_ones = false;
      previous = v;
    }
    some_all_ones = some_all_ones || all_ones;
  }
  if (binary_monotone && some_all_ones) return {VertexKind::Truncated, std::nullopt};
  return {VertexKind::Other, std::nullopt};
}

/// Lambda as CSV, one row per line.
inline void write_matrix_csv(const ConstraintSystem& sys, std::ostream& out) {
  for (const auto& row : sys.lambda) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j != 0) out << ',';
      out << row[j];
    }
    out << '\n';
  }
}

/// Sidecar describing each row: index, family, set, alternatives, rhs.
inline void write_row_tags_csv(const ConstraintSystem& sys, std::ostream& out) {
  const Domain& d = *sys.domain;
  out << "row,family,set,x,y,rhs\n";
  for (std::size_t r = 0; r < sys.tags.size(); ++r) {
    const auto& t = sys.tags[r];
    out << r << ',' << static_cast<int>(t.family) << ',' << '"' << d.set_to_string(d.set(t.set_index)) << '"' << ','
        << d.name(t.x) << ',' << d.name(t.y) << ',' << sys.rhs[r] << '\n';
  }
}

}  // namespace progressive
