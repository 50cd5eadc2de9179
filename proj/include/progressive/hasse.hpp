#pragma once

// Covering relation of the comparison order on a model, and DOT export.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "progressive/core.hpp"
#include "progressive/model.hpp"

namespace progressive {

/// Index pairs (upper, lower) in model order: upper |> lower with nothing in between.
inline std::vector<std::pair<std::size_t, std::size_t>> covering_pairs(const ChoiceModel& model,
                                                                       const PrimitiveOrderings& ord) {
  require_same_domain(model.domain(), ord.domain());
  const std::size_t m = model.size();
  std::vector<std::vector<bool>> above(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j) above[i][j] = compare(model[i], model[j], ord) == Comparison::Dominates;
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!above[i][j]) continue;
      bool covers = true;
      for (std::size_t k = 0; k < m && covers; ++k) {
        if (above[i][k] && above[k][j]) covers = false;
      }
      if (covers) edges.emplace_back(i, j);
    }
  }
  return edges;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

/// Nodes in model order, edges from dominating to dominated.
inline void write_dot(const ChoiceModel& model, const PrimitiveOrderings& ord, std::ostream& out) {
  out << "digraph hasse {\n";
  out << "  rankdir=TB;\n";
  for (std::size_t i = 0; i < model.size(); ++i) {
    out << "  n" << i << " [label=" << detail::dot_quote(model[i].to_string()) << "];\n";
  }
  for (const auto& [hi, lo] : covering_pairs(model, ord)) out << "  n" << hi << " -> n" << lo << ";\n";
  out << "}\n";
}

}  // namespace progressive
