#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "progressive/core.hpp"
#include "progressive/model.hpp"

namespace progressive {

/// Caps on brute-force enumeration and exact solver size.
struct EnumerationBudget {
  std::size_t max_functions = 1'000'000;
  std::size_t max_variables = 10'000;
};

/// Number of choice functions on the domain, saturating at SIZE_MAX.
inline std::size_t count_choice_functions(const Domain& domain) {
  std::size_t total = 1;
  for (SetMask s : domain.sets()) {
    const std::size_t k = cardinality(s);
    if (total > SIZE_MAX / k) return SIZE_MAX;
    total *= k;
  }
  return total;
}

/// Cartesian product of per-set picks, in lexicographic pick order.
inline ChoiceModel all_choice_functions(const DomainPtr& domain, const EnumerationBudget& budget = {}) {
  const std::size_t total = count_choice_functions(*domain);
  if (total > budget.max_functions) {
    throw GuardExceeded("domain has more choice functions than the enumeration budget");
  }
  std::vector<std::vector<Alt>> options;
  options.reserve(domain->num_sets());
  for (SetMask s : domain->sets()) options.push_back(members(s));

  std::vector<ChoiceFunction> out;
  out.reserve(total);
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

/// All n! strict orders on n alternatives, lexicographic in their rankings.
inline std::vector<Ordering> all_orderings(std::size_t n) {
  if (n > 8) throw GuardExceeded("all_orderings is limited to n <= 8");
  std::vector<Alt> r(n);
  std::iota(r.begin(), r.end(), Alt{0});
  std::vector<Ordering> out;
  do {
    out.emplace_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

}  // namespace progressive
