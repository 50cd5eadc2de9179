#pragma once

// Example choice models: similarity-based lottery choice, satisficing with
// thresholds, multiple rationales, and seeded random models.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "progressive/core.hpp"
#include "progressive/enumerate.hpp"
#include "progressive/model.hpp"
#include "progressive/oracle.hpp"
#include "progressive/rational.hpp"

namespace progressive {

struct Lottery {
  Rational prize;
  Rational probability;

  Rational expected_value() const { return prize * probability; }
  std::string name() const { return "(" + format_rational(prize) + "," + format_rational(probability) + ")"; }
};

/// Lotteries (m, p) over a rational grid with pairwise distinct expected values.
class LotteryGrid {
 public:
  explicit LotteryGrid(std::vector<Lottery> lotteries) : lotteries_(std::move(lotteries)) {
    if (lotteries_.size() < 2) throw PreconditionError("a lottery grid needs at least two lotteries");
    std::set<Rational> evs;
    for (const auto& l : lotteries_) {
      if (l.prize <= 0 || l.prize > 1 || l.probability <= 0 || l.probability > 1) {
        throw PreconditionError("lottery coordinates must lie in (0,1]");
      }
      if (!evs.insert(l.expected_value()).second) {
        throw PreconditionError("lotteries " + l.name() + " and another share an expected value");
      }
    }
    if (lotteries_.size() > 64) throw GuardExceeded("a lottery grid holds at most 64 lotteries");
  }

  /// Every (m, p) pair; throws if two share an expected value.
  static LotteryGrid from_axes(const std::vector<Rational>& prizes, const std::vector<Rational>& probabilities) {
    std::vector<Lottery> ls;
    for (const auto& m : prizes) {
      for (const auto& p : probabilities) ls.push_back({m, p});
    }
    return LotteryGrid(std::move(ls));
  }

  /// Every (m, p) pair, keeping the first lottery of each expected value.
  static LotteryGrid distinct_ev(const std::vector<Rational>& prizes, const std::vector<Rational>& probabilities) {
    std::vector<Lottery> ls;
    std::set<Rational> evs;
    for (const auto& m : prizes) {
      for (const auto& p : probabilities) {
        if (evs.insert(m * p).second) ls.push_back({m, p});
      }
    }
    return LotteryGrid(std::move(ls));
  }

  const std::vector<Lottery>& lotteries() const { return lotteries_; }
  std::size_t size() const { return lotteries_.size(); }

  /// Every binary set of lotteries.
  DomainPtr domain() const {
    std::vector<std::string> names;
    for (const auto& l : lotteries_) names.push_back(l.name());
    std::vector<SetMask> sets;
    for (std::size_t i = 0; i < lotteries_.size(); ++i) {
      for (std::size_t j = i + 1; j < lotteries_.size(); ++j) sets.push_back(singleton(Alt(i)) | singleton(Alt(j)));
    }
    return std::make_shared<const Domain>(std::move(names), std::move(sets));
  }

  /// Alternatives by decreasing expected value.
  Ordering expected_value_order() const {
    std::vector<Alt> r(lotteries_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<Alt>(i);
    std::sort(r.begin(), r.end(),
              [&](Alt a, Alt b) { return lotteries_[a].expected_value() > lotteries_[b].expected_value(); });
    return Ordering(std::move(r));
  }

 private:
  std::vector<Lottery> lotteries_;
};

struct SimilarityAgent {
  Rational epsilon;
  Rational delta;

  SimilarityAgent(Rational eps, Rational del) : epsilon(std::move(eps)), delta(std::move(del)) {
    if (epsilon <= 0 || delta <= 0) throw PreconditionError("similarity thresholds must be positive");
    if (delta < epsilon) throw PreconditionError("similarity agent needs delta >= epsilon");
  }

  /// The lottery chosen from {a, b}.
  std::size_t choose(const LotteryGrid& grid, std::size_t a, std::size_t b) const {
    const auto& la = grid.lotteries()[a];
    const auto& lb = grid.lotteries()[b];
    const Rational dm = abs(la.prize - lb.prize);
    const Rational dp = abs(la.probability - lb.probability);
    if (dm < epsilon && dp > delta) return la.probability > lb.probability ? a : b;
    if (dp < epsilon && dm > delta) return la.prize > lb.prize ? a : b;
    return la.expected_value() > lb.expected_value() ? a : b;
  }
};

struct GeneratedModel {
  ChoiceModel model;
  PrimitiveOrderings orderings;
};

/// One binary choice function per agent; the primitive order ranks by expected value.
inline GeneratedModel gen_similarity(const LotteryGrid& grid, const std::vector<SimilarityAgent>& agents) {
  if (agents.empty()) throw PreconditionError("gen_similarity needs at least one agent");
  const auto domain = grid.domain();
  std::vector<ChoiceFunction> fs;
  for (const auto& agent : agents) {
    std::vector<Alt> picks;
    for (SetMask s : domain->sets()) {
      const auto ms = members(s);
      picks.push_back(static_cast<Alt>(agent.choose(grid, ms[0], ms[1])));
    }
    fs.emplace_back(domain, std::move(picks));
  }
  return {ChoiceModel(domain, std::move(fs)), PrimitiveOrderings::from_global(domain, grid.expected_value_order())};
}

/// Per agent: the common-preference best alternative among those at least as
/// good as the agent's threshold x_S under >_S.
inline ChoiceModel gen_satisficing(const DomainPtr& domain, const PrimitiveOrderings& ord, const Ordering& common,
                                   const std::vector<std::vector<Alt>>& thresholds) {
  require_same_domain(domain, ord.domain());
  if (thresholds.empty()) throw PreconditionError("gen_satisficing needs at least one agent");
  if (common.size() != domain->size()) throw DomainMismatch("common preference size differs from domain");
  std::vector<ChoiceFunction> fs;
  for (const auto& t : thresholds) {
    if (t.size() != domain->num_sets()) throw DomainMismatch("thresholds must cover every choice set");
    std::vector<Alt> picks;
    for (std::size_t i = 0; i < domain->num_sets(); ++i) {
      if (t[i] >= domain->size() || !contains(domain->set(i), t[i])) {
        throw PreconditionError("threshold outside " + domain->set_to_string(domain->set(i)));
      }
      for (Alt x : common.ranking()) {
        if (contains(domain->set(i), x) && (x == t[i] || ord.better(i, x, t[i]))) {
          picks.push_back(x);
          break;
        }
      }
    }
    fs.emplace_back(domain, std::move(picks));
  }
  return ChoiceModel(domain, std::move(fs));
}

/// Every function whose pick at each S is the maximum of some listed preference.
inline ChoiceModel gen_krs(const DomainPtr& domain, const std::vector<Ordering>& prefs,
                           const EnumerationBudget& budget = {}) {
  if (prefs.empty()) throw PreconditionError("gen_krs needs at least one preference");
  std::vector<std::vector<Alt>> options(domain->num_sets());
  std::size_t total = 1;
  for (std::size_t i = 0; i < domain->num_sets(); ++i) {
    std::set<Alt> maxima;
    for (const auto& p : prefs) {
      if (p.size() != domain->size()) throw DomainMismatch("preference size differs from domain");
      maxima.insert(restrict_ordering(p, domain->set(i)).front());
    }
    options[i].assign(maxima.begin(), maxima.end());
    if (total > budget.max_functions / options[i].size()) throw GuardExceeded("KRS model exceeds the budget");
    total *= options[i].size();
  }
  std::vector<ChoiceFunction> out;
  std::vector<std::size_t> digit(options.size(), 0);
  std::vector<Alt> picks(options.size());
  while (true) {
    for (std::size_t i = 0; i < options.size(); ++i) picks[i] = options[i][digit[i]];
    out.emplace_back(domain, picks);
    std::size_t i = options.size();
    while (i > 0) {
      --i;
      if (++digit[i] < options[i].size()) break;
      digit[i] = 0;
      if (i == 0) return ChoiceModel(domain, std::move(out));
    }
  }
}

/// `size` distinct uniformly drawn functions, reproducible per seed.
inline ChoiceModel gen_random_model(std::uint64_t seed, const DomainPtr& domain, std::size_t size) {
  if (size == 0) throw PreconditionError("a choice model must be nonempty");
  const std::size_t total = count_choice_functions(*domain);
  if (size > total) throw PreconditionError("requested more functions than the domain has");
  std::mt19937_64 rng(seed);
  std::vector<ChoiceFunction> out;
  if (total <= 4096 && 2 * size > total) {
    auto all = all_choice_functions(domain).functions();
    for (std::size_t k = 0; k < size; ++k) {
      std::swap(all[k], all[k + detail::draw(rng, all.size() - k)]);
      out.push_back(all[k]);
    }
    return ChoiceModel(domain, std::move(out));
  }
  std::unordered_set<ChoiceFunction, ChoiceFunctionHash> seen;
  std::vector<std::vector<Alt>> options;
  for (SetMask s : domain->sets()) options.push_back(members(s));
  while (out.size() < size) {
    std::vector<Alt> picks;
    picks.reserve(options.size());
    for (const auto& o : options) picks.push_back(o[detail::draw(rng, o.size())]);
    ChoiceFunction c(domain, std::move(picks));
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  return ChoiceModel(domain, std::move(out));
}

}  // namespace progressive
