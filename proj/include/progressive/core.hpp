#pragma once

// Choice domains, primitive orderings, choice functions and the comparison
// relation between them.
//
// Alternatives are interned: every algorithm works on indices 0..n-1 and the
// symbols are only consulted at the I/O boundary. A choice set is a bitmask
// over alternative indices, so a domain holds at most 64 alternatives.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "progressive/error.hpp"

namespace progressive {

using Alt = std::uint8_t;
using SetMask = std::uint64_t;

inline constexpr std::size_t kMaxAlternatives = 64;

inline SetMask singleton(Alt x) { return SetMask{1} << x; }
inline bool contains(SetMask s, Alt x) { return (s >> x) & 1U; }
inline std::size_t cardinality(SetMask s) { return static_cast<std::size_t>(std::popcount(s)); }

/// Members of a set in ascending index order.
inline std::vector<Alt> members(SetMask s) {
  std::vector<Alt> out;
  out.reserve(cardinality(s));
  while (s != 0) {
    out.push_back(static_cast<Alt>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

namespace detail {

// Canonical set order: larger sets first, then lexicographic on the ascending
// member lists. For {a,b,c} this yields abc, ab, ac, bc.
inline bool canonical_set_less(SetMask a, SetMask b) {
  const auto ca = cardinality(a);
  const auto cb = cardinality(b);
  if (ca != cb) return ca > cb;
  return members(a) < members(b);
}

inline std::string default_name(std::size_t i) {
  std::string name;
  if (i < 26) {
    name.push_back(static_cast<char>('a' + i));
  } else {
    name = "x" + std::to_string(i);
  }
  return name;
}

}  // namespace detail

/// Alternative set X plus a collection of choice sets, each of size >= 2.
class Domain {
 public:
  Domain(std::vector<std::string> alternatives, std::vector<SetMask> sets)
      : names_(std::move(alternatives)), sets_(std::move(sets)) {
    if (names_.empty()) throw PreconditionError("domain needs at least one alternative");
    if (names_.size() > kMaxAlternatives) {
      throw GuardExceeded("domain supports at most 64 alternatives");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw ParseError("empty alternative symbol");
      if (!symbol_index_.emplace(names_[i], static_cast<Alt>(i)).second) {
        throw ParseError("duplicate alternative symbol '" + names_[i] + "'");
      }
    }
    if (sets_.empty()) throw PreconditionError("domain needs at least one choice set");
    const SetMask universe = universe_mask();
    for (SetMask s : sets_) {
      if ((s & ~universe) != 0) throw DomainMismatch("choice set uses an unknown alternative");
      if (cardinality(s) < 2) throw PreconditionError("choice sets must have at least two alternatives");
    }
    std::sort(sets_.begin(), sets_.end(), detail::canonical_set_less);
    if (std::adjacent_find(sets_.begin(), sets_.end()) != sets_.end()) {
      throw PreconditionError("duplicate choice set in domain");
    }
    for (std::size_t i = 0; i < sets_.size(); ++i) set_index_.emplace(sets_[i], i);
  }

  /// Every subset of size >= 2.
  static std::shared_ptr<const Domain> full(std::vector<std::string> alternatives) {
    const std::size_t n = alternatives.size();
    if (n > 20) throw GuardExceeded("full domain limited to 20 alternatives");
    std::vector<SetMask> sets;
    for (SetMask s = 0; s < (SetMask{1} << n); ++s) {
      if (cardinality(s) >= 2) sets.push_back(s);
    }
    return std::make_shared<const Domain>(std::move(alternatives), std::move(sets));
  }

  /// Full domain on alternatives named a, b, c, ...
  static std::shared_ptr<const Domain> full(std::size_t n) { return full(default_names(n)); }

  static std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(detail::default_name(i));
    return names;
  }

  std::size_t size() const { return names_.size(); }
  std::size_t num_sets() const { return sets_.size(); }
  SetMask set(std::size_t i) const { return sets_[i]; }
  std::span<const SetMask> sets() const { return sets_; }
  SetMask universe_mask() const {
    return names_.size() == 64 ? ~SetMask{0} : (SetMask{1} << names_.size()) - 1;
  }

  std::optional<std::size_t> index_of(SetMask s) const {
    auto it = set_index_.find(s);
    if (it == set_index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(Alt x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Alt> alternative(const std::string& symbol) const {
    auto it = symbol_index_.find(symbol);
    if (it == symbol_index_.end()) return std::nullopt;
    return it->second;
  }

  /// True when Omega holds exactly the 2^n - n - 1 subsets of size >= 2.
  bool is_full() const {
    const std::size_t n = names_.size();
    if (n >= 63) return false;
    return sets_.size() == (std::size_t{1} << n) - n - 1;
  }

  /// Single-character symbols allow the compact string notation ("aaab").
  bool has_char_symbols() const {
    return std::all_of(names_.begin(), names_.end(), [](const std::string& s) { return s.size() == 1; });
  }

  std::string set_to_string(SetMask s) const {
    std::string out = "{";
    bool first = true;
    for (Alt x : members(s)) {
      if (!first) out += ",";
      out += x < names_.size() ? names_[x] : "#" + std::to_string(x);
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.names_ == b.names_ && a.sets_ == b.sets_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<SetMask> sets_;
  std::unordered_map<std::string, Alt> symbol_index_;
  std::unordered_map<SetMask, std::size_t> set_index_;
};

using DomainPtr = std::shared_ptr<const Domain>;

inline bool same_domain(const DomainPtr& a, const DomainPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_domain(const DomainPtr& a, const DomainPtr& b) {
  if (!same_domain(a, b)) throw DomainMismatch("values are defined on different choice domains");
}

/// Strict total order on X, stored best to worst.
class Ordering {
 public:
  explicit Ordering(std::vector<Alt> ranking) : ranking_(std::move(ranking)), rank_(ranking_.size(), 0) {
    std::vector<bool> seen(ranking_.size(), false);
    for (std::size_t pos = 0; pos < ranking_.size(); ++pos) {
      const Alt x = ranking_[pos];
      if (x >= ranking_.size() || seen[x]) throw PreconditionError("ordering is not a permutation");
      seen[x] = true;
      rank_[x] = static_cast<Alt>(pos);
    }
  }

  /// Identity order: 0 > 1 > ... > n-1.
  static Ordering identity(std::size_t n) {
    std::vector<Alt> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Alt>(i);
    return Ordering(std::move(r));
  }

  std::size_t size() const { return ranking_.size(); }
  const std::vector<Alt>& ranking() const { return ranking_; }
  std::size_t rank(Alt x) const { return rank_[x]; }
  bool better(Alt x, Alt y) const { return rank_[x] < rank_[y]; }

  Ordering inverse() const { return Ordering(std::vector<Alt>(ranking_.rbegin(), ranking_.rend())); }

  /// "a>b>c" using the domain symbols.
  std::string to_string(const Domain& domain) const {
    std::string out;
    for (std::size_t i = 0; i < ranking_.size(); ++i) {
      if (i != 0) out += ">";
      out += domain.name(ranking_[i]);
    }
    return out;
  }

  friend bool operator==(const Ordering&, const Ordering&) = default;
  friend auto operator<=>(const Ordering& a, const Ordering& b) { return a.ranking_ <=> b.ranking_; }

 private:
  std::vector<Alt> ranking_;
  std::vector<Alt> rank_;
};

/// The global order filtered to S, order preserved.
inline std::vector<Alt> restrict_ordering(const Ordering& global, SetMask s) {
  const SetMask universe = global.size() >= 64 ? ~SetMask{0} : (SetMask{1} << global.size()) - 1;
  if ((s & ~universe) != 0) throw DomainMismatch("choice set has an alternative missing from the ordering");
  std::vector<Alt> out;
  for (Alt x : global.ranking()) {
    if (contains(s, x)) out.push_back(x);
  }
  return out;
}

/// Per-set strict orders {>_S}, optionally induced by one global order.
class PrimitiveOrderings {
 public:
  /// Each ranking lists the members of the matching domain set, best first.
  PrimitiveOrderings(DomainPtr domain, std::vector<std::vector<Alt>> per_set)
      : domain_(std::move(domain)), per_set_(std::move(per_set)) {
    if (per_set_.size() != domain_->num_sets()) {
      throw DomainMismatch("per-set orderings must cover every choice set");
    }
    build_ranks();
  }

  static PrimitiveOrderings from_global(DomainPtr domain, const Ordering& global) {
    if (global.size() != domain->size()) throw DomainMismatch("global ordering size differs from domain");
    std::vector<std::vector<Alt>> per_set;
    per_set.reserve(domain->num_sets());
    for (SetMask s : domain->sets()) per_set.push_back(restrict_ordering(global, s));
    PrimitiveOrderings out(std::move(domain), std::move(per_set));
    out.global_ = global;
    return out;
  }

  const DomainPtr& domain() const { return domain_; }
  const std::optional<Ordering>& global() const { return global_; }
  const std::vector<Alt>& ranking(std::size_t set_index) const { return per_set_[set_index]; }

  /// x >_S y for the set at set_index.
  bool better(std::size_t set_index, Alt x, Alt y) const {
    const std::size_t n = domain_->size();
    return rank_[set_index * n + x] < rank_[set_index * n + y];
  }

  /// Position of x in the ranking of the given set (0 is best).
  std::size_t rank(std::size_t set_index, Alt x) const { return rank_[set_index * domain_->size() + x]; }

  const Ordering& require_global() const {
    if (!global_) throw PreconditionError("operation requires a single global primitive ordering");
    return *global_;
  }

 private:
  void build_ranks() {
    const std::size_t n = domain_->size();
    rank_.assign(per_set_.size() * n, static_cast<Alt>(0xFF));
    for (std::size_t i = 0; i < per_set_.size(); ++i) {
      const SetMask s = domain_->set(i);
      SetMask seen = 0;
      if (per_set_[i].size() != cardinality(s)) throw PreconditionError("per-set ranking is not a permutation of its set");
      for (std::size_t pos = 0; pos < per_set_[i].size(); ++pos) {
        const Alt x = per_set_[i][pos];
        if (x >= n || !contains(s, x) || contains(seen, x)) {
          throw PreconditionError("per-set ranking is not a permutation of " + domain_->set_to_string(s));
        }
        seen |= singleton(x);
        rank_[i * n + x] = static_cast<Alt>(pos);
      }
    }
  }

  DomainPtr domain_;
  std::vector<std::vector<Alt>> per_set_;
  std::optional<Ordering> global_;
  std::vector<Alt> rank_;
};

/// A selection c: Omega -> X with c(S) in S, indexed by canonical set order.
class ChoiceFunction {
 public:
  ChoiceFunction(DomainPtr domain, std::vector<Alt> picks) : domain_(std::move(domain)), picks_(std::move(picks)) {
    if (picks_.size() != domain_->num_sets()) throw DomainMismatch("choice function must be total on the domain");
    for (std::size_t i = 0; i < picks_.size(); ++i) {
      if (picks_[i] >= domain_->size() || !contains(domain_->set(i), picks_[i])) {
        throw PreconditionError("choice function picks outside " + domain_->set_to_string(domain_->set(i)));
      }
    }
  }

  /// Compact notation: one symbol per set in canonical order, e.g. "aaab".
  static ChoiceFunction from_string(DomainPtr domain, std::string_view text) {
    if (!domain->has_char_symbols()) throw ParseError("compact notation needs single-character symbols");
    if (text.size() != domain->num_sets()) {
      throw ParseError("function string '" + std::string(text) + "' has wrong length");
    }
    std::vector<Alt> picks;
    picks.reserve(text.size());
    for (char ch : text) {
      auto x = domain->alternative(std::string(1, ch));
      if (!x) throw ParseError(std::string("unknown alternative '") + ch + "'");
      picks.push_back(*x);
    }
    return ChoiceFunction(std::move(domain), std::move(picks));
  }

  /// The maximizer of a strict preference.
  static ChoiceFunction maximizer(DomainPtr domain, const Ordering& preference) {
    std::vector<Alt> picks;
    picks.reserve(domain->num_sets());
    for (SetMask s : domain->sets()) {
      for (Alt x : preference.ranking()) {
        if (contains(s, x)) {
          picks.push_back(x);
          break;
        }
      }
    }
    return ChoiceFunction(std::move(domain), std::move(picks));
  }

  const DomainPtr& domain() const { return domain_; }
  Alt operator[](std::size_t set_index) const { return picks_[set_index]; }
  const std::vector<Alt>& picks() const { return picks_; }

  /// c(S) for a set given by mask; throws if S is not in the domain.
  Alt at(SetMask s) const {
    auto i = domain_->index_of(s);
    if (!i) throw DomainMismatch("choice set " + domain_->set_to_string(s) + " not in domain");
    return picks_[*i];
  }

  std::string to_string() const {
    std::string out;
    if (domain_->has_char_symbols()) {
      for (Alt x : picks_) out += domain_->name(x);
      return out;
    }
    out = "[";
    for (std::size_t i = 0; i < picks_.size(); ++i) {
      if (i != 0) out += ",";
      out += domain_->name(picks_[i]);
    }
    return out + "]";
  }

  friend bool operator==(const ChoiceFunction& a, const ChoiceFunction& b) {
    return a.picks_ == b.picks_ && same_domain(a.domain_, b.domain_);
  }
  friend bool operator<(const ChoiceFunction& a, const ChoiceFunction& b) { return a.picks_ < b.picks_; }

 private:
  DomainPtr domain_;
  std::vector<Alt> picks_;
};

struct ChoiceFunctionHash {
  std::size_t operator()(const ChoiceFunction& c) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Alt x : c.picks()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

enum class Comparison { Dominates, DominatedBy, Equal, Incomparable };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Dominates: return "dominates";
    case Comparison::DominatedBy: return "dominated_by";
    case Comparison::Equal: return "equal";
    case Comparison::Incomparable: return "incomparable";
  }
  return "?";
}

/// c |> c' iff c(S) >=_S c'(S) on every S with at least one strict set.
inline Comparison compare(const ChoiceFunction& c, const ChoiceFunction& other, const PrimitiveOrderings& ord) {
  require_same_domain(c.domain(), other.domain());
  require_same_domain(c.domain(), ord.domain());
  bool some_better = false;
  bool some_worse = false;
  for (std::size_t i = 0; i < c.picks().size(); ++i) {
    if (c[i] == other[i]) continue;
    if (ord.better(i, c[i], other[i])) {
      some_better = true;
    } else {
      some_worse = true;
    }
    if (some_better && some_worse) return Comparison::Incomparable;
  }
  if (some_better) return Comparison::Dominates;
  if (some_worse) return Comparison::DominatedBy;
  return Comparison::Equal;
}

/// c |>= c'.
inline bool dominates_or_equal(const ChoiceFunction& c, const ChoiceFunction& other, const PrimitiveOrderings& ord) {
  const auto r = compare(c, other, ord);
  return r == Comparison::Dominates || r == Comparison::Equal;
}

namespace detail {

template <bool TakeBest>
ChoiceFunction pointwise(const ChoiceFunction& c, const ChoiceFunction& other, const PrimitiveOrderings& ord) {
  require_same_domain(c.domain(), other.domain());
  require_same_domain(c.domain(), ord.domain());
  std::vector<Alt> picks(c.picks().size());
  for (std::size_t i = 0; i < picks.size(); ++i) {
    const bool first_better = ord.better(i, c[i], other[i]) || c[i] == other[i];
    picks[i] = (first_better == TakeBest) ? c[i] : other[i];
  }
  return ChoiceFunction(c.domain(), std::move(picks));
}

}  // namespace detail

/// Pointwise >_S-best of the two picks.
inline ChoiceFunction join(const ChoiceFunction& c, const ChoiceFunction& other, const PrimitiveOrderings& ord) {
  return detail::pointwise<true>(c, other, ord);
}

/// Pointwise >_S-worst of the two picks.
inline ChoiceFunction meet(const ChoiceFunction& c, const ChoiceFunction& other, const PrimitiveOrderings& ord) {
  return detail::pointwise<false>(c, other, ord);
}

}  // namespace progressive
