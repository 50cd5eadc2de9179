#pragma once

// JSON schemas for domains, orderings, models, RCFs, representations and
// betweenness relations.
//
// Sets are written as symbol lists in member order; rationals as "p/q".

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "progressive/core.hpp"
#include "progressive/identify.hpp"
#include "progressive/model.hpp"
#include "progressive/random.hpp"
#include "progressive/rational.hpp"

namespace progressive::io {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

namespace detail {

inline const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

inline const Json& array_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return v;
}

inline std::string symbol(const Json& v) {
  if (!v.is_string()) throw ParseError("alternative symbols must be strings");
  return v.get<std::string>();
}

inline std::vector<std::string> symbols(const Json& arr) {
  if (!arr.is_array()) throw ParseError("expected an array of symbols");
  std::vector<std::string> out;
  for (const auto& v : arr) out.push_back(symbol(v));
  return out;
}

inline Alt alternative(const Domain& d, const std::string& s) {
  auto x = d.alternative(s);
  if (!x) throw ParseError("unknown alternative '" + s + "'");
  return *x;
}

inline SetMask set_mask(const Domain& d, const Json& arr) {
  SetMask mask = 0;
  for (const auto& s : symbols(arr)) {
    const Alt x = alternative(d, s);
    if (contains(mask, x)) throw ParseError("repeated symbol '" + s + "' in a set");
    mask |= singleton(x);
  }
  return mask;
}

inline std::size_t set_index(const Domain& d, const Json& arr) {
  const SetMask s = set_mask(d, arr);
  auto i = d.index_of(s);
  if (!i) throw ParseError("set " + d.set_to_string(s) + " is not in the domain");
  return *i;
}

inline Json set_json(const Domain& d, SetMask s) {
  Json arr = Json::array();
  for (Alt x : members(s)) arr.push_back(d.name(x));
  return arr;
}

inline Rational rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw ParseError("rationals must be written as \"p/q\" strings or integers");
}

// Domain spanned by the sets listed under `entries[*].set`; symbols sorted.
inline DomainPtr infer_domain(const std::vector<const Json*>& set_arrays) {
  std::set<std::string> names;
  std::vector<std::vector<std::string>> sets;
  for (const Json* arr : set_arrays) {
    auto syms = symbols(*arr);
    names.insert(syms.begin(), syms.end());
    sets.push_back(std::move(syms));
  }
  if (names.empty()) throw ParseError("cannot infer a domain from empty input");
  std::vector<std::string> alts(names.begin(), names.end());
  std::map<std::string, Alt> index;
  for (std::size_t i = 0; i < alts.size(); ++i) index[alts[i]] = static_cast<Alt>(i);
  std::set<SetMask> masks;
  for (const auto& syms : sets) {
    SetMask m = 0;
    for (const auto& s : syms) {
      if (contains(m, index[s])) throw ParseError("repeated symbol '" + s + "' in a set");
      m |= singleton(index[s]);
    }
    masks.insert(m);
  }
  return std::make_shared<const Domain>(std::move(alts), std::vector<SetMask>(masks.begin(), masks.end()));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Domain

/// {"alternatives": [...], "sets": [[...], ...]}; missing "sets" means the full domain.
inline DomainPtr parse_domain(const Json& j) {
  auto names = detail::symbols(detail::field(j, "alternatives"));
  if (!j.contains("sets")) return Domain::full(std::move(names));
  const Json& sets = detail::array_field(j, "sets");
  std::map<std::string, Alt> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], static_cast<Alt>(i));
  std::vector<SetMask> masks;
  for (const auto& s : sets) {
    SetMask m = 0;
    for (const auto& sym : detail::symbols(s)) {
      auto it = index.find(sym);
      if (it == index.end()) throw ParseError("unknown alternative '" + sym + "'");
      if (contains(m, it->second)) throw ParseError("repeated symbol '" + sym + "' in a set");
      m |= singleton(it->second);
    }
    masks.push_back(m);
  }
  return std::make_shared<const Domain>(std::move(names), std::move(masks));
}

inline Json to_json(const Domain& d) {
  Json j;
  j["alternatives"] = d.names();
  Json sets = Json::array();
  for (SetMask s : d.sets()) sets.push_back(detail::set_json(d, s));
  j["sets"] = std::move(sets);
  return j;
}

// ---------------------------------------------------------------------------
// Orderings

/// "a>b>c".
inline Ordering parse_ordering_string(const Domain& d, const std::string& text) {
  std::vector<Alt> ranking;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find('>', start);
    ranking.push_back(detail::alternative(d, text.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (ranking.size() != d.size()) throw ParseError("ordering '" + text + "' does not rank every alternative");
  try {
    return Ordering(std::move(ranking));
  } catch (const PreconditionError&) {
    throw ParseError("ordering '" + text + "' repeats an alternative");
  }
}

inline Ordering parse_global(const Domain& d, const Json& arr) {
  std::vector<Alt> ranking;
  for (const auto& s : detail::symbols(arr)) ranking.push_back(detail::alternative(d, s));
  if (ranking.size() != d.size()) throw ParseError("global ordering must rank every alternative exactly once");
  try {
    return Ordering(std::move(ranking));
  } catch (const PreconditionError&) {
    throw ParseError("global ordering repeats an alternative");
  }
}

/// {"global": [best, ..., worst]} or {"per_set": [{"set": [...], "rank": [...]}, ...]}.
inline PrimitiveOrderings parse_orderings(const Json& j, const DomainPtr& domain) {
  if (j.contains("global")) return PrimitiveOrderings::from_global(domain, parse_global(*domain, j["global"]));
  const Json& entries = detail::array_field(j, "per_set");
  std::vector<std::vector<Alt>> per_set(domain->num_sets());
  std::vector<bool> seen(domain->num_sets(), false);
  for (const auto& e : entries) {
    const std::size_t i = detail::set_index(*domain, detail::field(e, "set"));
    if (seen[i]) throw ParseError("set listed twice in per_set orderings");
    seen[i] = true;
    for (const auto& s : detail::symbols(detail::field(e, "rank"))) per_set[i].push_back(detail::alternative(*domain, s));
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ParseError("per_set orderings must cover every choice set");
  }
  try {
    return PrimitiveOrderings(domain, std::move(per_set));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

inline Json to_json(const PrimitiveOrderings& ord) {
  const Domain& d = *ord.domain();
  Json j;
  if (ord.global()) {
    Json arr = Json::array();
    for (Alt x : ord.global()->ranking()) arr.push_back(d.name(x));
    j["global"] = std::move(arr);
    return j;
  }
  Json entries = Json::array();
  for (std::size_t i = 0; i < d.num_sets(); ++i) {
    Json rank = Json::array();
    for (Alt x : ord.ranking(i)) rank.push_back(d.name(x));
    Json e;
    e["set"] = detail::set_json(d, d.set(i));
    e["rank"] = std::move(rank);
    entries.push_back(std::move(e));
  }
  j["per_set"] = std::move(entries);
  return j;
}

// ---------------------------------------------------------------------------
// Models

/// Domain given explicitly under "domain", or inferred from the picks' sets.
inline DomainPtr model_domain(const Json& j) {
  if (j.contains("domain")) return parse_domain(j["domain"]);
  const Json& fs = detail::array_field(j, "functions");
  std::vector<const Json*> arrays;
  for (const auto& f : fs) {
    if (!f.contains("picks")) throw ParseError("a model without \"domain\" must list picks");
    for (const auto& p : detail::array_field(f, "picks")) arrays.push_back(&detail::field(p, "set"));
  }
  return detail::infer_domain(arrays);
}

inline ChoiceFunction parse_function(const Json& f, const DomainPtr& domain) {
  std::optional<ChoiceFunction> from_string;
  if (f.contains("string")) {
    if (!f["string"].is_string()) throw ParseError("\"string\" must be a string");
    from_string = ChoiceFunction::from_string(domain, f["string"].get<std::string>());
  }
  if (!f.contains("picks")) {
    if (!from_string) throw ParseError("a function needs \"picks\" or \"string\"");
    return *from_string;
  }
  std::vector<Alt> picks(domain->num_sets());
  std::vector<bool> seen(domain->num_sets(), false);
  for (const auto& p : detail::array_field(f, "picks")) {
    const std::size_t i = detail::set_index(*domain, detail::field(p, "set"));
    if (seen[i]) throw ParseError("set picked twice in one function");
    seen[i] = true;
    picks[i] = detail::alternative(*domain, detail::symbol(detail::field(p, "x")));
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ParseError("a function must pick on every choice set");
  }
  try {
    ChoiceFunction c(domain, std::move(picks));
    if (from_string && !(*from_string == c)) throw ParseError("\"string\" disagrees with \"picks\"");
    return c;
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

inline ChoiceModel parse_model(const Json& j, const DomainPtr& domain) {
  std::vector<ChoiceFunction> fs;
  for (const auto& f : detail::array_field(j, "functions")) fs.push_back(parse_function(f, domain));
  if (fs.empty()) throw ParseError("a model must list at least one function");
  return ChoiceModel(domain, std::move(fs));
}

inline ChoiceModel parse_model(const Json& j) { return parse_model(j, model_domain(j)); }

inline Json to_json(const ChoiceFunction& c) {
  const Domain& d = *c.domain();
  Json picks = Json::array();
  for (std::size_t i = 0; i < d.num_sets(); ++i) {
    Json p;
    p["set"] = detail::set_json(d, d.set(i));
    p["x"] = d.name(c[i]);
    picks.push_back(std::move(p));
  }
  Json f;
  f["picks"] = std::move(picks);
  if (d.has_char_symbols()) f["string"] = c.to_string();
  return f;
}

inline Json to_json(const ChoiceModel& model) {
  Json j;
  j["domain"] = to_json(*model.domain());
  Json fs = Json::array();
  for (const auto& c : model) fs.push_back(to_json(c));
  j["functions"] = std::move(fs);
  return j;
}

// ---------------------------------------------------------------------------
// Random choice functions

/// {"domain"?: ..., "probs": [{"set": [...], "x": "a", "p": "2/3"}, ...]}; absent entries are 0.
inline RandomChoiceFunction parse_rcf(const Json& j, DomainPtr domain = nullptr) {
  const Json& entries = detail::array_field(j, "probs");
  if (!domain) {
    if (j.contains("domain")) {
      domain = parse_domain(j["domain"]);
    } else {
      std::vector<const Json*> arrays;
      for (const auto& e : entries) arrays.push_back(&detail::field(e, "set"));
      domain = detail::infer_domain(arrays);
    }
  }
  std::vector<std::vector<Rational>> probs(domain->num_sets(), std::vector<Rational>(domain->size(), Rational(0)));
  std::set<std::pair<std::size_t, Alt>> seen;
  for (const auto& e : entries) {
    const std::size_t i = detail::set_index(*domain, detail::field(e, "set"));
    const Alt x = detail::alternative(*domain, detail::symbol(detail::field(e, "x")));
    if (!seen.emplace(i, x).second) throw ParseError("probability listed twice for one (set, alternative)");
    probs[i][x] = detail::rational(detail::field(e, "p"));
  }
  return RandomChoiceFunction(domain, std::move(probs));
}

inline Json to_json(const RandomChoiceFunction& rho) {
  const Domain& d = *rho.domain();
  Json j;
  j["domain"] = to_json(d);
  Json entries = Json::array();
  for (std::size_t i = 0; i < d.num_sets(); ++i) {
    for (Alt x : members(d.set(i))) {
      if (rho.prob(i, x) == 0) continue;
      Json e;
      e["set"] = detail::set_json(d, d.set(i));
      e["x"] = d.name(x);
      e["p"] = format_rational(rho.prob(i, x));
      entries.push_back(std::move(e));
    }
  }
  j["probs"] = std::move(entries);
  return j;
}

// ---------------------------------------------------------------------------
// Representations and betweenness

/// [{"w": "2/3", "c": "aaab"}, ...].
inline Json to_json(const ProgressiveRepresentation& rep) {
  Json arr = Json::array();
  for (const auto& comp : rep) {
    Json e;
    e["w"] = format_rational(comp.weight);
    e["c"] = comp.function.to_string();
    arr.push_back(std::move(e));
  }
  return arr;
}

inline ProgressiveRepresentation parse_representation(const Json& arr, const DomainPtr& domain) {
  if (!arr.is_array()) throw ParseError("a representation must be an array");
  ProgressiveRepresentation rep;
  for (const auto& e : arr) {
    const Json& c = detail::field(e, "c");
    if (!c.is_string()) throw ParseError("\"c\" must be a function string");
    rep.push_back({detail::rational(detail::field(e, "w")), ChoiceFunction::from_string(domain, c.get<std::string>())});
  }
  return rep;
}

/// [{"middle": "b", "outer": ["a", "c"]}, ...].
inline Json to_json(const BetweennessRelation& rel, const Domain& d) {
  Json arr = Json::array();
  for (const auto& t : rel.triples()) {
    Json e;
    e["middle"] = d.name(t.middle);
    e["outer"] = Json::array({d.name(t.lo), d.name(t.hi)});
    arr.push_back(std::move(e));
  }
  return arr;
}

inline BetweennessRelation parse_betweenness(const Json& arr, const Domain& d) {
  if (!arr.is_array()) throw ParseError("a betweenness relation must be an array");
  BetweennessRelation rel(d.size());
  for (const auto& e : arr) {
    const auto outer = detail::symbols(detail::field(e, "outer"));
    if (outer.size() != 2) throw ParseError("\"outer\" must hold two symbols");
    const Alt y = detail::alternative(d, detail::symbol(detail::field(e, "middle")));
    const Alt x = detail::alternative(d, outer[0]);
    const Alt z = detail::alternative(d, outer[1]);
    try {
      rel.insert(y, x, z);
    } catch (const PreconditionError& err) {
      throw ParseError(err.what());
    }
  }
  return rel;
}

inline Json to_json(const AxiomReport& r, const Domain& d) {
  auto names = [&](const auto& arr) {
    Json out = Json::array();
    for (Alt x : arr) out.push_back(d.name(x));
    return out;
  };
  Json j;
  j["B1"] = r.b1;
  j["sB1"] = r.sb1;
  j["B2"] = r.b2;
  j["B3"] = r.b3;
  if (r.b1_triple) j["B1_counterexample"] = names(*r.b1_triple);
  if (r.sb1_triple) j["sB1_counterexample"] = names(*r.sb1_triple);
  if (r.b2_quad) j["B2_counterexample"] = names(*r.b2_quad);
  if (r.b3_quad) j["B3_counterexample"] = names(*r.b3_quad);
  return j;
}

}  // namespace progressive::io
