#pragma once

// Revealed betweenness, its axioms, and recovery of the primitive ordering
// from a choice model.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "progressive/core.hpp"
#include "progressive/enumerate.hpp"
#include "progressive/model.hpp"
#include "progressive/models.hpp"

namespace progressive {

/// (middle; lo, hi): middle revealed between lo and hi, with lo < hi.
struct Triple {
  Alt middle;
  Alt lo;
  Alt hi;

  static Triple make(Alt middle, Alt x, Alt z) {
    if (middle == x || middle == z || x == z) throw PreconditionError("betweenness triple needs distinct elements");
    return {middle, std::min(x, z), std::max(x, z)};
  }

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

class BetweennessRelation {
 public:
  explicit BetweennessRelation(std::size_t n, std::set<Triple> triples = {}) : n_(n), triples_(std::move(triples)) {
    for (const auto& t : triples_) {
      if (t.middle >= n_ || t.hi >= n_) throw DomainMismatch("betweenness triple outside the alternative set");
      if (t.middle == t.lo || t.middle == t.hi || t.lo >= t.hi) {
        throw PreconditionError("betweenness triple is not canonical");
      }
    }
  }

  std::size_t universe_size() const { return n_; }
  const std::set<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  void insert(Alt y, Alt x, Alt z) {
    const auto t = Triple::make(y, x, z);
    if (t.hi >= n_) throw DomainMismatch("betweenness triple outside the alternative set");
    triples_.insert(t);
  }

  /// B(y; x, z).
  bool between(Alt y, Alt x, Alt z) const {
    if (y == x || y == z || x == z) return false;
    return triples_.count(Triple::make(y, x, z)) != 0;
  }

  /// Number of distinct comparisons on the unordered triple {a, b, c}.
  int comparisons(Alt a, Alt b, Alt c) const {
    return static_cast<int>(between(a, b, c)) + static_cast<int>(between(b, a, c)) + static_cast<int>(between(c, a, b));
  }
  bool appears(Alt a, Alt b, Alt c) const { return comparisons(a, b, c) > 0; }

  /// Relation induced on a subset of alternatives.
  BetweennessRelation restricted(SetMask keep) const {
    std::set<Triple> out;
    for (const auto& t : triples_) {
      if (contains(keep, t.middle) && contains(keep, t.lo) && contains(keep, t.hi)) out.insert(t);
    }
    return BetweennessRelation(n_, std::move(out));
  }

  friend bool operator==(const BetweennessRelation&, const BetweennessRelation&) = default;

 private:
  std::size_t n_;
  std::set<Triple> triples_;
};

/// B(c(S); c(S\{z}), z) whenever the three are distinct.
inline BetweennessRelation betweenness(const ChoiceModel& model) {
  const Domain& d = *model.domain();
  const auto removal = detail::removal_table(d);
  BetweennessRelation rel(d.size());
  for (const auto& c : model) {
    for (std::size_t i = 0; i < d.num_sets(); ++i) {
      if (cardinality(d.set(i)) < 3) continue;
      for (Alt z : members(d.set(i))) {
        const std::size_t j = removal[i * d.size() + z];
        if (j == SIZE_MAX) continue;
        const Alt y = c[i];
        const Alt x = c[j];
        if (y != x && y != z) rel.insert(y, x, z);
      }
    }
  }
  return rel;
}

struct AxiomReport {
  bool b1 = true;
  bool sb1 = true;
  bool b2 = true;
  bool b3 = true;
  std::optional<std::array<Alt, 3>> b1_triple;   // a triple with two or more comparisons
  std::optional<std::array<Alt, 3>> sb1_triple;  // a triple with no comparison or several
  std::optional<std::array<Alt, 4>> b2_quad;     // (x, y, z, w) with B(y;x,z), B(z;x,w), B(w;x,y)
  std::optional<std::array<Alt, 4>> b3_quad;     // (x, y, z, w) breaking the exclusive or

  bool b1_to_b3() const { return b1 && b2 && b3; }
};

inline AxiomReport check_axioms(const BetweennessRelation& rel) {
  const auto n = static_cast<Alt>(rel.universe_size());
  AxiomReport r;
  for (Alt a = 0; a < n; ++a) {
    for (Alt b = a + 1; b < n; ++b) {
      for (Alt c = b + 1; c < n; ++c) {
        const int k = rel.comparisons(a, b, c);
        if (k > 1 && r.b1) {
          r.b1 = false;
          r.b1_triple = std::array<Alt, 3>{a, b, c};
        }
        if (k != 1 && r.sb1) {
          r.sb1 = false;
          r.sb1_triple = std::array<Alt, 3>{a, b, c};
        }
      }
    }
  }
  for (const auto& t : rel.triples()) {
    for (int orient = 0; orient < 2; ++orient) {
      const Alt y = t.middle;
      const Alt x = orient == 0 ? t.lo : t.hi;
      const Alt z = orient == 0 ? t.hi : t.lo;
      for (Alt w = 0; w < n; ++w) {
        if (w == x || w == y || w == z) continue;
        if (r.b2 && rel.between(z, x, w) && rel.between(w, x, y)) {
          r.b2 = false;
          r.b2_quad = std::array<Alt, 4>{x, y, z, w};
        }
        if (r.b3 && rel.appears(x, y, w) && rel.appears(y, z, w) && rel.between(y, x, w) == rel.between(y, z, w)) {
          r.b3 = false;
          r.b3_quad = std::array<Alt, 4>{x, y, z, w};
        }
      }
    }
  }
  return r;
}

/// True iff every triple of rel is ordered lo..middle..hi monotonically under order.
inline bool agrees(const BetweennessRelation& rel, const Ordering& order) {
  for (const auto& t : rel.triples()) {
    const auto m = order.rank(t.middle);
    const auto l = order.rank(t.lo);
    const auto h = order.rank(t.hi);
    if (!((l < m && m < h) || (h < m && m < l))) return false;
  }
  return true;
}

/// An order on the four alternatives of quad agreeing with every triple of rel
/// inside it, as a ranking of those four, best first.
inline std::optional<std::array<Alt, 4>> local_ordering(const BetweennessRelation& rel, std::array<Alt, 4> quad) {
  std::sort(quad.begin(), quad.end());
  if (std::adjacent_find(quad.begin(), quad.end()) != quad.end()) {
    throw PreconditionError("local_ordering needs four distinct alternatives");
  }
  do {
    bool ok = true;
    for (std::size_t i = 0; i < 4 && ok; ++i) {
      for (std::size_t j = 0; j < 4 && ok; ++j) {
        for (std::size_t k = 0; k < 4 && ok; ++k) {
          if (i == j || j == k || i == k) continue;
          const bool inside = (i < j && j < k) || (k < j && j < i);
          if (!inside && rel.between(quad[j], quad[i], quad[k])) ok = false;
        }
      }
    }
    if (ok) return quad;
  } while (std::next_permutation(quad.begin(), quad.end()));
  return std::nullopt;
}

namespace detail {

// Places alternatives best to worst, trying candidates in index order. A
// prefix is abandoned when a triple's middle is placed while both outer
// elements are still free, or both outer elements are placed without it.
inline void agreeing_orders(const BetweennessRelation& rel, const std::function<bool(const Ordering&)>& visit) {
  const std::size_t n = rel.universe_size();
  std::vector<Alt> prefix;
  SetMask placed = 0;
  std::vector<std::vector<Triple>> touching(n);
  for (const auto& t : rel.triples()) {
    touching[t.middle].push_back(t);
    touching[t.lo].push_back(t);
    touching[t.hi].push_back(t);
  }
  auto consistent = [&](Alt v) {
    for (const auto& t : touching[v]) {
      const bool m = contains(placed, t.middle);
      const bool l = contains(placed, t.lo);
      const bool h = contains(placed, t.hi);
      if (m && !l && !h) return false;
      if (l && h && !m) return false;
    }
    return true;
  };
  std::function<bool()> step = [&]() -> bool {
    if (prefix.size() == n) return visit(Ordering(prefix));
    for (Alt v = 0; v < n; ++v) {
      if (contains(placed, v)) continue;
      placed |= singleton(v);
      prefix.push_back(v);
      const bool stop = consistent(v) && step();
      prefix.pop_back();
      placed &= ~singleton(v);
      if (stop) return true;
    }
    return false;
  };
  step();
}

}  // namespace detail

/// First agreeing order in lexicographic branch order.
inline std::optional<Ordering> find_agreeing_ordering(const BetweennessRelation& rel) {
  std::optional<Ordering> found;
  detail::agreeing_orders(rel, [&](const Ordering& o) {
    found = o;
    return true;
  });
  return found;
}

/// All agreeing orders, lexicographic by ranking.
inline std::vector<Ordering> all_agreeing_orderings(const BetweennessRelation& rel) {
  std::vector<Ordering> out;
  detail::agreeing_orders(rel, [&](const Ordering& o) {
    out.push_back(o);
    return false;
  });
  return out;
}

inline bool model_within_theta(const ChoiceModel& model, const Ordering& order) {
  for (const auto& c : model) {
    if (!satisfies_theta(c, order).ok) return false;
  }
  return true;
}

struct Identification {
  BetweennessRelation relation;
  AxiomReport axioms;
  std::vector<Ordering> orderings;  // every > with the model inside theta_model(>), sorted
};

/// Primitive orderings consistent with the model.
///
/// When B1-B3 hold, the agreeing orders are filtered by theta membership; the
/// result is cross-checked against a scan of all n! orders.
inline Identification identify_primitive(const ChoiceModel& model) {
  const Domain& d = *model.domain();
  detail::require_full(d, "identify_primitive");
  if (d.size() > 6) throw GuardExceeded("identify_primitive is limited to n <= 6");
  auto rel = betweenness(model);
  auto report = check_axioms(rel);

  std::vector<Ordering> by_axioms;
  if (report.b1_to_b3()) {
    for (auto& o : all_agreeing_orderings(rel)) {
      if (model_within_theta(model, o)) by_axioms.push_back(std::move(o));
    }
  }
  std::vector<Ordering> by_scan;
  for (auto& o : all_orderings(d.size())) {
    if (model_within_theta(model, o)) by_scan.push_back(std::move(o));
  }
  std::sort(by_axioms.begin(), by_axioms.end());
  if (by_axioms != by_scan) throw InternalError("betweenness search and brute-force scan disagree");
  return {std::move(rel), report, std::move(by_scan)};
}

}  // namespace progressive
