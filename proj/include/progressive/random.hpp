#pragma once

// Random choice functions, the progressive (chain) decomposition, random
// choice model membership, cumulative RCFs and the random theta axioms.
//
// All arithmetic is exact.

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "progressive/core.hpp"
#include "progressive/enumerate.hpp"
#include "progressive/linear.hpp"
#include "progressive/model.hpp"
#include "progressive/models.hpp"
#include "progressive/rational.hpp"

namespace progressive {

/// rho_x(S), stored densely as [set][alternative]; zero outside S.
class RandomChoiceFunction {
 public:
  RandomChoiceFunction(DomainPtr domain, std::vector<std::vector<Rational>> probs)
      : domain_(std::move(domain)), probs_(std::move(probs)) {
    if (probs_.size() != domain_->num_sets()) throw DomainMismatch("RCF must cover every choice set");
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (probs_[i].size() != domain_->size()) throw DomainMismatch("RCF row has wrong width");
      Rational total = 0;
      for (std::size_t x = 0; x < probs_[i].size(); ++x) {
        const Rational& p = probs_[i][x];
        if (p < 0) throw InvariantViolation("negative choice probability");
        if (p != 0 && !contains(domain_->set(i), static_cast<Alt>(x))) {
          throw InvariantViolation("probability assigned outside " + domain_->set_to_string(domain_->set(i)));
        }
        total += p;
      }
      if (total != 1) {
        throw InvariantViolation("probabilities on " + domain_->set_to_string(domain_->set(i)) + " sum to " +
                                 format_rational(total));
      }
    }
  }

  static RandomChoiceFunction deterministic(const ChoiceFunction& c) {
    const Domain& d = *c.domain();
    std::vector<std::vector<Rational>> probs(d.num_sets(), std::vector<Rational>(d.size(), Rational(0)));
    for (std::size_t i = 0; i < d.num_sets(); ++i) probs[i][c[i]] = 1;
    return RandomChoiceFunction(c.domain(), std::move(probs));
  }

  const DomainPtr& domain() const { return domain_; }
  const Rational& prob(std::size_t set_index, Alt x) const { return probs_[set_index][x]; }
  const std::vector<std::vector<Rational>>& table() const { return probs_; }

  friend bool operator==(const RandomChoiceFunction& a, const RandomChoiceFunction& b) {
    return same_domain(a.domain_, b.domain_) && a.probs_ == b.probs_;
  }

 private:
  DomainPtr domain_;
  std::vector<std::vector<Rational>> probs_;
};

/// rho_up(y, S): total probability of alternatives strictly better than y.
class CumulativeRCF {
 public:
  CumulativeRCF(DomainPtr domain, std::vector<std::vector<Rational>> cum)
      : domain_(std::move(domain)), cum_(std::move(cum)) {}

  const DomainPtr& domain() const { return domain_; }
  const Rational& operator()(Alt y, std::size_t set_index) const { return cum_[set_index][y]; }

 private:
  DomainPtr domain_;
  std::vector<std::vector<Rational>> cum_;
};

struct ProgressiveComponent {
  Rational weight;
  ChoiceFunction function;

  friend bool operator==(const ProgressiveComponent&, const ProgressiveComponent&) = default;
};

/// Positive weights summing to one over a strictly decreasing chain c1 |> c2 |> ...
using ProgressiveRepresentation = std::vector<ProgressiveComponent>;

using WeightedFunctions = std::vector<std::pair<ChoiceFunction, Rational>>;

/// rho_x(S) = sum of weights of functions picking x at S.
inline RandomChoiceFunction compose(const WeightedFunctions& dist) {
  if (dist.empty()) throw PreconditionError("compose needs at least one weighted function");
  const DomainPtr& domain = dist.front().first.domain();
  std::vector<std::vector<Rational>> probs(domain->num_sets(), std::vector<Rational>(domain->size(), Rational(0)));
  Rational total = 0;
  for (const auto& [c, w] : dist) {
    require_same_domain(domain, c.domain());
    if (w < 0) throw InvariantViolation("negative mixture weight");
    total += w;
    for (std::size_t i = 0; i < domain->num_sets(); ++i) probs[i][c[i]] += w;
  }
  if (total != 1) throw InvariantViolation("mixture weights sum to " + format_rational(total));
  return RandomChoiceFunction(domain, std::move(probs));
}

inline RandomChoiceFunction compose(const ProgressiveRepresentation& rep) {
  WeightedFunctions dist;
  dist.reserve(rep.size());
  for (const auto& comp : rep) dist.emplace_back(comp.function, comp.weight);
  return compose(dist);
}

inline CumulativeRCF cumulative(const RandomChoiceFunction& rho, const Ordering& global) {
  const Domain& d = *rho.domain();
  if (global.size() != d.size()) throw DomainMismatch("ordering size differs from domain");
  std::vector<std::vector<Rational>> cum(d.num_sets(), std::vector<Rational>(d.size(), Rational(0)));
  for (std::size_t i = 0; i < d.num_sets(); ++i) {
    Rational above = 0;
    for (Alt y : restrict_ordering(global, d.set(i))) {
      cum[i][y] = above;
      above += rho.prob(i, y);
    }
  }
  return CumulativeRCF(rho.domain(), std::move(cum));
}

/// The unique progressive representation of rho under the given orderings.
///
/// Each set lays its positive-probability alternatives on (0,1] best first;
/// the union of all interval endpoints cuts (0,1] into segments, and each
/// segment selects one choice function weighted by its length.
inline ProgressiveRepresentation decompose_progressive(const RandomChoiceFunction& rho,
                                                       const PrimitiveOrderings& ord) {
  require_same_domain(rho.domain(), ord.domain());
  const Domain& d = *rho.domain();
  std::vector<std::vector<std::pair<Rational, Alt>>> uppers(d.num_sets());
  std::set<Rational> breakpoints;
  for (std::size_t i = 0; i < d.num_sets(); ++i) {
    Rational upper = 0;
    for (Alt x : ord.ranking(i)) {
      if (rho.prob(i, x) == 0) continue;
      upper += rho.prob(i, x);
      uppers[i].emplace_back(upper, x);
      breakpoints.insert(upper);
    }
  }

  ProgressiveRepresentation rep;
  std::vector<std::size_t> cursor(d.num_sets(), 0);
  std::vector<Alt> picks(d.num_sets());
  Rational previous = 0;
  for (const Rational& r : breakpoints) {
    for (std::size_t i = 0; i < d.num_sets(); ++i) {
      while (uppers[i][cursor[i]].first < r) ++cursor[i];
      picks[i] = uppers[i][cursor[i]].second;
    }
    ChoiceFunction c(rho.domain(), picks);
    if (!rep.empty() && rep.back().function == c) {
      rep.back().weight += r - previous;
    } else {
      rep.push_back({r - previous, std::move(c)});
    }
    previous = r;
  }
  return rep;
}

/// True iff consecutive components are strictly decreasing under |>.
inline bool is_progressive_chain(const ProgressiveRepresentation& rep, const PrimitiveOrderings& ord) {
  for (std::size_t k = 0; k + 1 < rep.size(); ++k) {
    if (compare(rep[k].function, rep[k + 1].function, ord) != Comparison::Dominates) return false;
  }
  return true;
}

struct DeltaMembership {
  bool member = false;
  std::optional<std::vector<Rational>> weights;  // aligned with the model's functions
};

/// Exact test of rho in Delta(model): compose(w) = rho, w >= 0, sum w = 1.
inline DeltaMembership in_delta(const RandomChoiceFunction& rho, const ChoiceModel& model,
                                const EnumerationBudget& budget = {}) {
  require_same_domain(rho.domain(), model.domain());
  if (model.size() > budget.max_variables) throw GuardExceeded("model exceeds the solver variable budget");
  const Domain& d = *rho.domain();
  LinearSystem sys;
  sys.nonneg.assign(model.size(), true);
  for (std::size_t i = 0; i < d.num_sets(); ++i) {
    for (Alt x : members(d.set(i))) {
      std::vector<Rational> row(model.size(), Rational(0));
      for (std::size_t k = 0; k < model.size(); ++k) {
        if (model[k][i] == x) row[k] = 1;
      }
      sys.add_row(std::move(row), RowKind::Equal, rho.prob(i, x));
    }
  }
  sys.add_row(std::vector<Rational>(model.size(), Rational(1)), RowKind::Equal, Rational(1));
  auto solution = exact_feasible(sys, budget);
  if (!solution) return {};
  return {true, std::move(solution)};
}

struct RThetaWitness {
  std::size_t set_index;  // S
  Alt removed;            // x
  Alt fixed;              // y
  ThetaAxiom axiom;
};

struct RThetaCheck {
  bool ok = true;
  std::optional<RThetaWitness> witness;
};

/// rtheta1: y > x implies rho_up(y, S\{x}) >= rho_up(y, S);
/// rtheta2: x > y implies rho_up(y, S) >= rho_up(y, S\{x}).
inline RThetaCheck satisfies_rtheta(const RandomChoiceFunction& rho, const Ordering& global) {
  const Domain& d = *rho.domain();
  detail::require_full(d, "satisfies_rtheta");
  const auto cum = cumulative(rho, global);
  const auto removal = detail::removal_table(d);
  for (std::size_t i = 0; i < d.num_sets(); ++i) {
    const auto ranked = restrict_ordering(global, d.set(i));
    for (Alt x : ranked) {
      const std::size_t j = removal[i * d.size() + x];
      if (j == SIZE_MAX) continue;
      for (Alt y : ranked) {
        if (y == x) continue;
        if (global.better(y, x)) {
          if (cum(y, j) < cum(y, i)) return {false, RThetaWitness{i, x, y, ThetaAxiom::First}};
        } else {
          if (cum(y, i) < cum(y, j)) return {false, RThetaWitness{i, x, y, ThetaAxiom::Second}};
        }
      }
    }
  }
  return {};
}

/// Progressive representation of rho whose components all satisfy theta.
inline ProgressiveRepresentation decompose_theta(const RandomChoiceFunction& rho, const Ordering& global) {
  if (!satisfies_rtheta(rho, global).ok) throw PreconditionError("RCF violates the random theta axioms");
  auto rep = decompose_progressive(rho, PrimitiveOrderings::from_global(rho.domain(), global));
  for (const auto& comp : rep) {
    if (!satisfies_theta(comp.function, global).ok) {
      throw InternalError("progressive component " + comp.function.to_string() + " violates theta");
    }
  }
  return rep;
}

}  // namespace progressive
