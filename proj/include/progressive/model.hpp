#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "progressive/core.hpp"

namespace progressive {

/// A nonempty set of choice functions over one shared domain, kept sorted.
class ChoiceModel {
 public:
  using const_iterator = std::vector<ChoiceFunction>::const_iterator;

  ChoiceModel(DomainPtr domain, std::vector<ChoiceFunction> functions)
      : domain_(std::move(domain)), functions_(std::move(functions)) {
    if (functions_.empty()) throw PreconditionError("a choice model must be nonempty");
    for (const auto& c : functions_) require_same_domain(domain_, c.domain());
    std::sort(functions_.begin(), functions_.end());
    functions_.erase(std::unique(functions_.begin(), functions_.end()), functions_.end());
  }

  explicit ChoiceModel(std::vector<ChoiceFunction> functions)
      : ChoiceModel(functions.empty() ? DomainPtr{} : functions.front().domain(), std::move(functions)) {}

  /// Model from compact strings, e.g. {"aaab", "abab"}.
  static ChoiceModel from_strings(const DomainPtr& domain, const std::vector<std::string>& strings) {
    std::vector<ChoiceFunction> fs;
    fs.reserve(strings.size());
    for (const auto& s : strings) fs.push_back(ChoiceFunction::from_string(domain, s));
    return ChoiceModel(domain, std::move(fs));
  }

  const DomainPtr& domain() const { return domain_; }
  std::size_t size() const { return functions_.size(); }
  const std::vector<ChoiceFunction>& functions() const { return functions_; }
  const ChoiceFunction& operator[](std::size_t i) const { return functions_[i]; }
  const_iterator begin() const { return functions_.begin(); }
  const_iterator end() const { return functions_.end(); }

  bool contains(const ChoiceFunction& c) const {
    return same_domain(domain_, c.domain()) && std::binary_search(functions_.begin(), functions_.end(), c);
  }

  bool is_subset_of(const ChoiceModel& other) const {
    return std::all_of(functions_.begin(), functions_.end(), [&](const auto& c) { return other.contains(c); });
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(functions_.size());
    for (const auto& c : functions_) out.push_back(c.to_string());
    return out;
  }

  friend bool operator==(const ChoiceModel& a, const ChoiceModel& b) {
    return same_domain(a.domain_, b.domain_) && a.functions_ == b.functions_;
  }

 private:
  DomainPtr domain_;
  std::vector<ChoiceFunction> functions_;
};

}  // namespace progressive
