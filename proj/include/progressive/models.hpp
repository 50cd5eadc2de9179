#pragma once

// Operations on choice models: lattice checks and closure, chains, rational
// choice, the theta axioms and the minimal self-progressive extension of
// rational choice, and mixture closure.

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <unordered_set>
#include <vector>

#include "progressive/core.hpp"
#include "progressive/enumerate.hpp"
#include "progressive/model.hpp"
#include "progressive/rational.hpp"

namespace progressive {

// ---------------------------------------------------------------------------
// Lattice structure

struct LatticeWitness {
  ChoiceFunction first;
  ChoiceFunction second;
  ChoiceFunction escaped;  // join or meet of the pair, not in the model
  bool join_escaped;
};

struct LatticeCheck {
  bool is_lattice = true;
  std::optional<LatticeWitness> witness;
};

/// True iff the join and meet of every pair lie in the model.
inline LatticeCheck is_lattice(const ChoiceModel& model, const PrimitiveOrderings& ord) {
  require_same_domain(model.domain(), ord.domain());
  for (std::size_t i = 0; i < model.size(); ++i) {
    for (std::size_t j = i + 1; j < model.size(); ++j) {
      auto up = join(model[i], model[j], ord);
      if (!model.contains(up)) return {false, LatticeWitness{model[i], model[j], std::move(up), true}};
      auto down = meet(model[i], model[j], ord);
      if (!model.contains(down)) return {false, LatticeWitness{model[i], model[j], std::move(down), false}};
    }
  }
  return {};
}

/// Smallest superset closed under join and meet.
inline ChoiceModel lattice_closure(const ChoiceModel& model, const PrimitiveOrderings& ord,
                                   std::size_t max_size = 1'000'000) {
  require_same_domain(model.domain(), ord.domain());
  std::vector<ChoiceFunction> items(model.begin(), model.end());
  std::unordered_set<ChoiceFunction, ChoiceFunctionHash> seen(items.begin(), items.end());
  auto add = [&](ChoiceFunction c) {
    if (seen.insert(c).second) {
      if (items.size() >= max_size) throw GuardExceeded("lattice closure exceeded its size budget");
      items.push_back(std::move(c));
    }
  };
  // Each new element is combined with everything before it, so every pair is
  // visited exactly once.
  for (std::size_t k = 1; k < items.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      add(join(items[j], items[k], ord));
      add(meet(items[j], items[k], ord));
    }
  }
  return ChoiceModel(model.domain(), std::move(items));
}

/// True iff every pair is comparable.
inline bool is_chain(const ChoiceModel& model, const PrimitiveOrderings& ord) {
  for (std::size_t i = 0; i < model.size(); ++i) {
    for (std::size_t j = i + 1; j < model.size(); ++j) {
      if (compare(model[i], model[j], ord) == Comparison::Incomparable) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rational choice

/// A preference whose maximizer is c, or nullopt when c is not rational.
///
/// Builds the revealed-preference digraph (c(S) -> y for y in S) and returns
/// its lexicographically least topological order.
inline std::optional<Ordering> rationalize(const ChoiceFunction& c) {
  const Domain& domain = *c.domain();
  const std::size_t n = domain.size();
  std::vector<SetMask> beats(n, 0);
  for (std::size_t i = 0; i < domain.num_sets(); ++i) beats[c[i]] |= domain.set(i) & ~singleton(c[i]);

  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (Alt y : members(beats[x])) ++indegree[y];
  }
  std::priority_queue<Alt, std::vector<Alt>, std::greater<>> ready;
  for (std::size_t x = 0; x < n; ++x) {
    if (indegree[x] == 0) ready.push(static_cast<Alt>(x));
  }
  std::vector<Alt> ranking;
  while (!ready.empty()) {
    const Alt x = ready.top();
    ready.pop();
    ranking.push_back(x);
    for (Alt y : members(beats[x])) {
      if (--indegree[y] == 0) ready.push(y);
    }
  }
  if (ranking.size() != n) return std::nullopt;
  return Ordering(std::move(ranking));
}

/// Every maximizer of a strict preference on the domain.
inline ChoiceModel enumerate_rational(const DomainPtr& domain) {
  if (domain->size() > 6) throw GuardExceeded("enumerate_rational is limited to n <= 6");
  std::vector<ChoiceFunction> fs;
  for (const auto& pref : all_orderings(domain->size())) fs.push_back(ChoiceFunction::maximizer(domain, pref));
  return ChoiceModel(domain, std::move(fs));
}

/// Literal single-crossing check: for each x > y under the global order, if
/// preference i ranks x above y then so does every earlier preference.
inline bool is_single_crossing(std::span<const Ordering> prefs, const Ordering& global) {
  const std::size_t n = global.size();
  for (const auto& p : prefs) {
    if (p.size() != n) throw DomainMismatch("preference size differs from the global ordering");
  }
  for (Alt x = 0; x < n; ++x) {
    for (Alt y = 0; y < n; ++y) {
      if (x == y || !global.better(x, y)) continue;
      for (std::size_t i = 0; i < prefs.size(); ++i) {
        if (!prefs[i].better(x, y)) continue;
        for (std::size_t j = 0; j < i; ++j) {
          if (!prefs[j].better(x, y)) return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Theta axioms

enum class ThetaAxiom { First, Second };

struct ThetaViolation {
  std::size_t set_index;  // S
  Alt removed;            // x
  Alt chosen;             // c(S)
  Alt chosen_after;       // c(S \ {x})
  ThetaAxiom axiom;
};

struct ThetaCheck {
  bool ok = true;
  std::optional<ThetaViolation> violation;
};

namespace detail {

inline void require_full(const Domain& domain, const char* what) {
  if (!domain.is_full()) throw PreconditionError(std::string(what) + " requires the full choice domain");
}

// Index of S \ {x} for every set and member, SIZE_MAX when not in the domain.
inline std::vector<std::size_t> removal_table(const Domain& domain) {
  const std::size_t n = domain.size();
  std::vector<std::size_t> table(domain.num_sets() * n, SIZE_MAX);
  for (std::size_t i = 0; i < domain.num_sets(); ++i) {
    for (Alt x : members(domain.set(i))) {
      if (auto j = domain.index_of(domain.set(i) & ~singleton(x))) table[i * n + x] = *j;
    }
  }
  return table;
}

// Theta check of the single pick y at set i against picks of the smaller sets.
template <typename PickOf>
std::optional<ThetaViolation> theta_violation_at(const Domain& domain, const Ordering& order,
                                                 const std::vector<std::size_t>& removal, std::size_t i, Alt y,
                                                 PickOf pick_of) {
  const std::size_t n = domain.size();
  for (Alt x : restrict_ordering(order, domain.set(i))) {
    const std::size_t j = removal[i * n + x];
    if (x == y || j == SIZE_MAX) continue;
    const Alt after = pick_of(j);
    if (order.better(y, x)) {
      if (after != y && !order.better(after, y)) return ThetaViolation{i, x, y, after, ThetaAxiom::First};
    } else {
      if (after != y && !order.better(y, after)) return ThetaViolation{i, x, y, after, ThetaAxiom::Second};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// theta1: c(S) > x implies c(S\{x}) >= c(S); theta2: x > c(S) implies c(S) >= c(S\{x}).
inline ThetaCheck satisfies_theta(const ChoiceFunction& c, const Ordering& order) {
  const Domain& domain = *c.domain();
  detail::require_full(domain, "satisfies_theta");
  if (order.size() != domain.size()) throw DomainMismatch("ordering size differs from domain");
  const auto removal = detail::removal_table(domain);
  for (std::size_t i = 0; i < domain.num_sets(); ++i) {
    if (auto v = detail::theta_violation_at(domain, order, removal, i, c[i], [&](std::size_t j) { return c[j]; })) {
      return {false, v};
    }
  }
  return {};
}

/// The minimal self-progressive extension of rational choice.
///
/// Computed twice: by a pruned search over all functions satisfying theta1 and
/// theta2, and as the lattice closure of the rational model. The two must agree.
inline ChoiceModel theta_model(const DomainPtr& domain, const Ordering& order) {
  detail::require_full(*domain, "theta_model");
  if (domain->size() > 4) throw GuardExceeded("theta_model is limited to n <= 4");
  if (order.size() != domain->size()) throw DomainMismatch("ordering size differs from domain");

  const auto removal = detail::removal_table(*domain);
  const std::size_t sets = domain->num_sets();
  std::vector<std::vector<Alt>> options;
  for (SetMask s : domain->sets()) options.push_back(members(s));

  // Canonical order puts larger sets first, so fill from the back: every
  // S \ {x} is assigned before S.
  std::vector<Alt> picks(sets, 0);
  std::vector<ChoiceFunction> found;
  std::function<void(std::size_t)> fill = [&](std::size_t remaining) {
    if (remaining == 0) {
      found.emplace_back(domain, picks);
      return;
    }
    const std::size_t i = remaining - 1;
    for (Alt y : options[i]) {
      if (detail::theta_violation_at(*domain, order, removal, i, y, [&](std::size_t j) { return picks[j]; })) continue;
      picks[i] = y;
      fill(remaining - 1);
    }
  };
  fill(sets);
  ChoiceModel by_axioms(domain, std::move(found));

  const auto ord = PrimitiveOrderings::from_global(domain, order);
  const ChoiceModel by_closure = lattice_closure(enumerate_rational(domain), ord);
  if (!(by_axioms == by_closure)) {
    throw InternalError("theta axioms and lattice closure of rational choice disagree");
  }
  return by_axioms;
}

// ---------------------------------------------------------------------------
// Mixtures and set-contingent utilities

struct MixtureWitness {
  ChoiceFunction first;
  ChoiceFunction second;
  ChoiceFunction mixture;
};

struct MixtureCheck {
  bool closed = true;
  std::optional<MixtureWitness> witness;
};

/// True iff every pointwise selection from any pair of the model is in it.
inline MixtureCheck is_mixture_closed(const ChoiceModel& model, std::size_t max_differing_sets = 24) {
  for (std::size_t a = 0; a < model.size(); ++a) {
    for (std::size_t b = a + 1; b < model.size(); ++b) {
      const auto& c1 = model[a];
      const auto& c2 = model[b];
      std::vector<std::size_t> differ;
      for (std::size_t i = 0; i < c1.picks().size(); ++i) {
        if (c1[i] != c2[i]) differ.push_back(i);
      }
      if (differ.size() > max_differing_sets) throw GuardExceeded("too many differing sets to enumerate mixtures");
      const std::uint64_t count = std::uint64_t{1} << differ.size();
      std::vector<Alt> picks = c1.picks();
      for (std::uint64_t mask = 1; mask + 1 < count; ++mask) {
        for (std::size_t k = 0; k < differ.size(); ++k) {
          picks[differ[k]] = ((mask >> k) & 1U) ? c2[differ[k]] : c1[differ[k]];
        }
        ChoiceFunction mix(model.domain(), picks);
        if (!model.contains(mix)) return {false, MixtureWitness{c1, c2, std::move(mix)}};
      }
    }
  }
  return {};
}

/// U(x, S), stored densely as [set][alternative].
class SetContingentUtility {
 public:
  SetContingentUtility(DomainPtr domain, std::vector<std::vector<Rational>> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_->num_sets()) throw DomainMismatch("utility must cover every choice set");
    for (const auto& row : values_) {
      if (row.size() != domain_->size()) throw DomainMismatch("utility row has wrong width");
    }
  }

  const DomainPtr& domain() const { return domain_; }
  const Rational& operator()(Alt x, std::size_t set_index) const { return values_[set_index][x]; }

  /// argmax over all choice functions of the sum of U(c(S), S).
  ChoiceModel argmax(const EnumerationBudget& budget = {}) const {
    std::vector<std::vector<Alt>> best(domain_->num_sets());
    std::size_t total = 1;
    for (std::size_t i = 0; i < domain_->num_sets(); ++i) {
      const auto ms = members(domain_->set(i));
      Rational top = values_[i][ms.front()];
      for (Alt x : ms) top = std::max(top, values_[i][x]);
      for (Alt x : ms) {
        if (values_[i][x] == top) best[i].push_back(x);
      }
      if (total > budget.max_functions / best[i].size()) throw GuardExceeded("argmax set exceeds the budget");
      total *= best[i].size();
    }
    std::vector<ChoiceFunction> out;
    std::vector<std::size_t> digit(best.size(), 0);
    std::vector<Alt> picks(best.size());
    while (true) {
      for (std::size_t i = 0; i < best.size(); ++i) picks[i] = best[i][digit[i]];
      out.emplace_back(domain_, picks);
      std::size_t i = best.size();
      while (i > 0) {
        --i;
        if (++digit[i] < best[i].size()) break;
        digit[i] = 0;
        if (i == 0) return ChoiceModel(domain_, std::move(out));
      }
    }
  }

 private:
  DomainPtr domain_;
  std::vector<std::vector<Rational>> values_;
};

struct SetContingentRepresentation {
  SetContingentUtility utility;
  bool represents;  // model == argmax set of the utility
};

/// 0/1 utility: U(x,S) = 1 iff some member of the model picks x at S.
inline SetContingentRepresentation set_contingent_representation(const ChoiceModel& model) {
  const Domain& domain = *model.domain();
  std::vector<std::vector<Rational>> values(domain.num_sets(), std::vector<Rational>(domain.size(), Rational(0)));
  std::vector<SetMask> support(domain.num_sets(), 0);
  for (const auto& c : model) {
    for (std::size_t i = 0; i < domain.num_sets(); ++i) {
      values[i][c[i]] = 1;
      support[i] |= singleton(c[i]);
    }
  }
  // The model always lies inside the argmax set, so equality is a count check.
  std::size_t product = 1;
  bool represents = true;
  for (SetMask s : support) {
    product *= cardinality(s);
    if (product > model.size()) {
      represents = false;
      break;
    }
  }
  represents = represents && product == model.size();
  return {SetContingentUtility(model.domain(), std::move(values)), represents};
}

}  // namespace progressive
