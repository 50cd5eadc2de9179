#pragma once

// The acceptance criteria as runnable checks, shared by the acceptance test
// binary and the `selfcheck` command.

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "progressive/commands.hpp"
#include "progressive/core.hpp"
#include "progressive/enumerate.hpp"
#include "progressive/generators.hpp"
#include "progressive/identify.hpp"
#include "progressive/io.hpp"
#include "progressive/models.hpp"
#include "progressive/oracle.hpp"
#include "progressive/polytope.hpp"
#include "progressive/random.hpp"

namespace progressive::acceptance {

struct Result {
  int id;
  std::string title;
  bool pass;
  std::string detail;
};

namespace detail {

using progressive::detail::draw;

inline DomainPtr abc() { return Domain::full(3); }

inline RandomChoiceFunction random_rcf(std::mt19937_64& rng, const DomainPtr& domain) {
  std::vector<std::vector<Rational>> probs(domain->num_sets(), std::vector<Rational>(domain->size(), Rational(0)));
  for (std::size_t i = 0; i < domain->num_sets(); ++i) {
    const auto ms = members(domain->set(i));
    std::vector<std::uint64_t> raw(ms.size());
    std::uint64_t total = 0;
    while (total == 0) {
      for (auto& r : raw) {
        r = draw(rng, 6);
        total += r;
      }
    }
    for (std::size_t k = 0; k < ms.size(); ++k) {
      probs[i][ms[k]] = Rational(static_cast<long long>(raw[k]), static_cast<long long>(total));
    }
  }
  return RandomChoiceFunction(domain, std::move(probs));
}

inline RandomChoiceFunction random_mixture(std::mt19937_64& rng, const ChoiceModel& pool, std::size_t max_parts) {
  const std::size_t k = 1 + draw(rng, max_parts);
  std::vector<std::uint64_t> raw(k);
  std::uint64_t total = 0;
  for (auto& r : raw) {
    r = 1 + draw(rng, 12);
    total += r;
  }
  WeightedFunctions dist;
  for (std::size_t t = 0; t < k; ++t) {
    dist.emplace_back(pool[draw(rng, pool.size())],
                      Rational(static_cast<long long>(raw[t]), static_cast<long long>(total)));
  }
  return compose(dist);
}

inline PrimitiveOrderings random_per_set(std::mt19937_64& rng, const DomainPtr& domain) {
  std::vector<std::vector<Alt>> per_set;
  for (SetMask s : domain->sets()) {
    auto ms = members(s);
    for (std::size_t k = ms.size(); k > 1; --k) std::swap(ms[k - 1], ms[draw(rng, k)]);
    per_set.push_back(std::move(ms));
  }
  return PrimitiveOrderings(domain, std::move(per_set));
}

inline BetweennessRelation random_relation(std::mt19937_64& rng, std::size_t n, std::uint64_t absent_weight) {
  BetweennessRelation rel(n);
  for (Alt a = 0; a < n; ++a) {
    for (Alt b = a + 1; b < n; ++b) {
      for (Alt c = b + 1; c < n; ++c) {
        const auto r = draw(rng, absent_weight + 3);
        if (r == absent_weight) rel.insert(a, b, c);
        if (r == absent_weight + 1) rel.insert(b, a, c);
        if (r == absent_weight + 2) rel.insert(c, a, b);
      }
    }
  }
  return rel;
}

inline bool every_quadruple_local(const BetweennessRelation& rel) {
  const auto n = static_cast<Alt>(rel.universe_size());
  for (Alt a = 0; a < n; ++a) {
    for (Alt b = a + 1; b < n; ++b) {
      for (Alt c = b + 1; c < n; ++c) {
        for (Alt d = c + 1; d < n; ++d) {
          if (!local_ordering(rel, {a, b, c, d})) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace detail

inline Result criterion1() {
  const auto d = detail::abc();
  const auto g = PrimitiveOrderings::from_global(d, Ordering::identity(3));
  auto f = [&](const char* s) { return ChoiceFunction::from_string(d, s); };
  const Rational third(1, 3);
  const auto rho = compose(WeightedFunctions{{f("aaab"), third}, {f("abab"), third}, {f("aaac"), third}});
  // Target probabilities, sets in canonical order abc, ab, ac, bc.
  const std::vector<std::vector<Rational>> table = {
      {Rational(1), Rational(0), Rational(0)},
      {Rational(2, 3), Rational(1, 3), Rational(0)},
      {Rational(1), Rational(0), Rational(0)},
      {Rational(0), Rational(2, 3), Rational(1, 3)},
  };
  const bool table_ok = rho.table() == table;
  const auto rep = decompose_progressive(RandomChoiceFunction(d, table), g);
  const ProgressiveRepresentation expected{{Rational(2, 3), f("aaab")}, {Rational(1, 3), f("abac")}};
  const bool rep_ok = rep == expected;
  std::string detail = "decomposition " + io::to_json(rep).dump() + (table_ok ? ", table matches" : ", table differs");
  return {1, "worked RCF decomposes exactly", table_ok && rep_ok, detail};
}

inline Result criterion2() {
  const auto d = detail::abc();
  const auto all = all_choice_functions(d);
  const auto theta = theta_model(d, Ordering::identity(3));
  const auto expected = ChoiceModel::from_strings(d, {"aaab", "baab", "aaac", "bacb", "baac", "bbab", "bbcb", "bacc",
                                                      "bbac", "cacc", "bbcc", "cbcc"});
  const bool ok = all.size() == 24 && theta == expected;
  return {2, "full and theta model sizes", ok,
          std::to_string(all.size()) + " functions, theta model of size " + std::to_string(theta.size())};
}

inline Result criterion3() {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  for (std::size_t n : {3, 4}) {
    const auto d = Domain::full(n);
    const auto rational = enumerate_rational(d);
    for (const auto& o : all_orderings(n)) {
      const auto closure = lattice_closure(rational, PrimitiveOrderings::from_global(d, o));
      if (!(theta_model(d, o) == closure)) ++mismatches;
      ++checked;
    }
  }
  return {3, "theta model equals lattice closure of rational choice", mismatches == 0,
          std::to_string(checked) + " orders, " + std::to_string(mismatches) + " mismatches"};
}

inline Result criterion4() {
  const auto d = detail::abc();
  const auto g = PrimitiveOrderings::from_global(d, Ordering::identity(3));
  const auto all = all_choice_functions(d);
  std::size_t models = 0;
  std::size_t disagreements = 0;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!pick.empty()) {
      std::vector<ChoiceFunction> fs;
      for (std::size_t k : pick) fs.push_back(all[k]);
      const ChoiceModel mu(d, std::move(fs));
      ++models;
      if (is_lattice(mu, g).is_lattice != naive_self_progressive(mu, g, 8, models)) ++disagreements;
    }
    if (pick.size() == 4) return;
    for (std::size_t k = start; k < all.size(); ++k) {
      pick.push_back(k);
      rec(k + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return {4, "self-progressive iff lattice on small models", disagreements == 0 && models == 12950,
          std::to_string(models) + " models, " + std::to_string(disagreements) + " disagreements"};
}

inline Result criterion5() {
  const auto d = detail::abc();
  const Ordering order = Ordering::identity(3);
  const auto theta = theta_model(d, order);
  const auto all = all_choice_functions(d);
  std::size_t cases = 0;
  std::size_t disagreements = 0;
  std::size_t inside = 0;
  std::size_t bad_components = 0;
  std::string first_disagreement;
  auto check = [&](const RandomChoiceFunction& rho) {
    const bool axioms = satisfies_rtheta(rho, order).ok;
    const bool member = in_delta(rho, theta).member;
    ++cases;
    if (member) ++inside;
    if (axioms != member) {
      ++disagreements;
      if (first_disagreement.empty()) {
        first_disagreement = io::to_json(decompose_progressive(rho, PrimitiveOrderings::from_global(d, order))).dump();
      }
    }
    if (axioms) {
      try {
        decompose_theta(rho, order);
      } catch (const InternalError&) {
        ++bad_components;
      }
    }
  };
  for (const auto& c : all) check(RandomChoiceFunction::deterministic(c));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 600; ++k) check(detail::random_mixture(rng, theta, 4));
  for (int k = 0; k < 600; ++k) check(detail::random_mixture(rng, all, 4));
  const bool ok = disagreements == 0 && bad_components == 0 && inside > 0 && inside < cases;
  std::string detail = std::to_string(cases) + " RCFs (" + std::to_string(inside) + " in Delta), " +
                       std::to_string(disagreements) + " disagreements, " + std::to_string(bad_components) +
                       " decompositions with a non-theta component";
  if (!first_disagreement.empty()) detail += "; first disagreement " + first_disagreement;
  return {5, "rtheta iff mixture of theta functions", ok, detail};
}

inline Result criterion6() {
  std::size_t systems = 0;
  std::size_t heller_failures = 0;
  for (std::size_t n : {3, 4}) {
    const auto d = Domain::full(n);
    for (const auto& o : all_orderings(n)) {
      ++systems;
      if (!heller_check(build_constraints(d, o))) ++heller_failures;
    }
  }
  const auto d = detail::abc();
  std::size_t vertices = 0;
  std::size_t functions = 0;
  std::size_t truncated = 0;
  std::size_t bad = 0;
  std::set<std::string> unexplained;
  for (const auto& o : all_orderings(3)) {
    const auto sys = build_constraints(d, o);
    const auto theta = theta_model(d, o);
    const auto pts = enumerate_vertices(sys);
    std::set<Point> seen(pts.begin(), pts.end());
    for (const auto& q : pts) {
      ++vertices;
      const auto cls = classify_vertex(sys, q);
      if (cls.kind == VertexKind::Function && theta.contains(*cls.function)) {
        ++functions;
      } else if (cls.kind == VertexKind::Truncated) {
        ++truncated;
      } else {
        ++bad;
        unexplained.insert(o.to_string(*d) + ":" + (cls.function ? cls.function->to_string() : "fractional"));
      }
    }
    for (const auto& c : theta) {
      if (!seen.count(crcf_point(sys, c))) {
        ++bad;
        unexplained.insert(o.to_string(*d) + ":missing " + c.to_string());
      }
    }
  }
  const bool ok = heller_failures == 0 && bad == 0;
  std::string detail = std::to_string(systems) + " systems TU-certified (" + std::to_string(heller_failures) +
                       " failures); " + std::to_string(vertices) + " vertices over 6 orders: " +
                       std::to_string(functions) + " theta CRCFs, " + std::to_string(truncated) + " truncations, " +
                       std::to_string(bad) + " unexplained";
  if (!unexplained.empty()) {
    detail += " [";
    for (const auto& u : unexplained) detail += (detail.back() == '[' ? "" : " ") + u;
    detail += "]";
  }
  return {6, "theta vertices of the constraint polytope", ok, detail};
}

inline Result criterion7() {
  std::size_t checked = 0;
  std::size_t wrong = 0;
  auto run = [&](const DomainPtr& d, const Ordering& o) {
    ++checked;
    const auto id = identify_primitive(theta_model(d, o));
    std::vector<Ordering> expected{o, o.inverse()};
    std::sort(expected.begin(), expected.end());
    if (id.orderings != expected) ++wrong;
  };
  const auto d3 = Domain::full(3);
  for (const auto& o : all_orderings(3)) run(d3, o);
  const auto d4 = Domain::full(4);
  const auto orders4 = all_orderings(4);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 6; ++k) run(d4, orders4[progressive::detail::draw(rng, orders4.size())]);
  return {7, "primitive orderings identified up to reversal", wrong == 0,
          std::to_string(checked) + " theta models identified, " + std::to_string(wrong) + " wrong"};
}

inline Result criterion8() {
  std::size_t passing = 0;
  std::size_t failures = 0;
  auto consider = [&](const BetweennessRelation& rel) {
    if (!check_axioms(rel).b1_to_b3()) return;
    ++passing;
    if (!detail::every_quadruple_local(rel)) ++failures;
  };
  // Every relation on four alternatives: each triple absent or with one of three middles.
  for (int code = 0; code < 256; ++code) {
    BetweennessRelation rel(4);
    int c = code;
    int t = 0;
    for (Alt a = 0; a < 4; ++a) {
      for (Alt b = a + 1; b < 4; ++b) {
        for (Alt e = b + 1; e < 4; ++e, ++t) {
          const int m = c % 4;
          c /= 4;
          if (m == 1) rel.insert(a, b, e);
          if (m == 2) rel.insert(b, a, e);
          if (m == 3) rel.insert(e, a, b);
        }
      }
    }
    consider(rel);
  }
  std::mt19937_64 rng(8);
  std::size_t attempts = 0;
  while (passing < 10000 && attempts < 5'000'000) {
    ++attempts;
    const std::size_t n = 5 + attempts % 2;
    consider(detail::random_relation(rng, n, 2 + attempts % 7));
  }
  return {8, "betweenness axioms admit a local ordering", passing >= 10000 && failures == 0,
          std::to_string(passing) + " relations passing B1-B3, " + std::to_string(failures) +
              " without a local ordering"};
}

inline Result criterion9() {
  const auto d = detail::abc();
  std::size_t families = 0;
  std::size_t wrong = 0;
  const auto orders = all_orderings(3);
  for (const auto& p : orders) {
    for (const auto& q : orders) {
      ++families;
      const auto mu = gen_krs(d, {p, q});
      const auto rep = set_contingent_representation(mu);
      if (!is_mixture_closed(mu).closed || !rep.represents || !(rep.utility.argmax() == mu)) ++wrong;
    }
  }
  const auto example = ChoiceModel::from_strings(d, {"aaab", "abab", "aaac", "abac"});
  const bool example_ok = is_mixture_closed(example).closed && set_contingent_representation(example).represents;
  return {9, "mixture-closed iff set-contingent utility", wrong == 0 && example_ok,
          std::to_string(families) + " preference pairs, " + std::to_string(wrong) + " failures; four-function model " +
              (example_ok ? "universally self-progressive" : "not mixture-closed")};
}

namespace detail {

// Runs every command twice on the same fixtures and compares outputs.
inline std::size_t cli_unstable_outputs(const std::filesystem::path& dir, std::size_t& runs) {
  const auto d = abc();
  auto write = [&](const std::string& name, const io::Json& j) {
    std::ofstream(dir / name) << j.dump() << '\n';
    return (dir / name).string();
  };
  const auto rcf = write("rcf.json", io::to_json(RandomChoiceFunction(
                                         d, {{Rational(1), Rational(0), Rational(0)},
                                             {Rational(2, 3), Rational(1, 3), Rational(0)},
                                             {Rational(1), Rational(0), Rational(0)},
                                             {Rational(0), Rational(2, 3), Rational(1, 3)}})));
  const auto ord = write("orderings.json", io::to_json(PrimitiveOrderings::from_global(d, Ordering::identity(3))));
  const auto example = write("example.json", io::to_json(ChoiceModel::from_strings(d, {"aaab", "abab", "aaac", "abac"})));
  const auto rational = write("rational.json", io::to_json(enumerate_rational(d)));
  const auto theta = write("theta.json", io::to_json(theta_model(d, Ordering::identity(3))));
  const auto all = write("all.json", io::to_json(all_choice_functions(d)));

  std::vector<std::function<int(std::ostream&)>> commands = {
      [&](std::ostream& o) { return cli::run_decompose(rcf, ord, o); },
      [&](std::ostream& o) { return cli::run_check(example, ord, cli::CheckKind::Lattice, o); },
      [&](std::ostream& o) { return cli::run_check(rational, ord, cli::CheckKind::Lattice, o); },
      [&](std::ostream& o) { return cli::run_check(rational, ord, cli::CheckKind::Theta, o); },
      [&](std::ostream& o) { return cli::run_check(rcf, ord, cli::CheckKind::RTheta, o); },
      [&](std::ostream& o) { return cli::run_check(example, ord, cli::CheckKind::Mixture, o); },
      [&](std::ostream& o) { return cli::run_check(theta, ord, cli::CheckKind::Chain, o); },
      [&](std::ostream& o) { return cli::run_closure(rational, ord, true, o); },
      [&](std::ostream& o) { return cli::run_identify(theta, o); },
      [&](std::ostream& o) { return cli::run_hasse(all, ord, o); },
      [&](std::ostream& o) { return cli::run_generate({"random", 3, std::nullopt, {}, 5, 11}, o); },
      [&](std::ostream& o) { return cli::run_generate({"krs", 3, std::nullopt, {"a>b>c", "c>b>a"}, 4, 1}, o); },
      [&](std::ostream& o) { return cli::run_polytope(3, std::string("b>a>c"), std::nullopt, o); },
  };
  std::size_t unstable = 0;
  for (const auto& cmd : commands) {
    std::ostringstream first;
    std::ostringstream second;
    std::ostringstream err;
    const int c1 = cli::guarded([&] { return cmd(first); }, err);
    const int c2 = cli::guarded([&] { return cmd(second); }, err);
    ++runs;
    if (c1 != c2 || first.str() != second.str() || first.str().empty() || c1 >= cli::kInputError) ++unstable;
  }
  return unstable;
}

}  // namespace detail

inline Result criterion10() {
  std::mt19937_64 rng(10);
  std::size_t trips = 0;
  std::size_t broken = 0;
  for (std::size_t n : {3, 4}) {
    const auto d = Domain::full(n);
    const auto orders = all_orderings(n);
    for (int k = 0; k < 600; ++k) {
      const auto rho = detail::random_rcf(rng, d);
      const auto ord = k % 2 == 0 ? PrimitiveOrderings::from_global(d, orders[progressive::detail::draw(rng, orders.size())])
                                  : detail::random_per_set(rng, d);
      const auto rep = decompose_progressive(rho, ord);
      ++trips;
      if (!(compose(rep) == rho) || !is_progressive_chain(rep, ord)) ++broken;
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / ("progressive-acceptance-" + std::to_string(rng()));
  std::filesystem::create_directories(dir);
  std::size_t runs = 0;
  const std::size_t unstable = detail::cli_unstable_outputs(dir, runs);
  std::filesystem::remove_all(dir);
  return {10, "Round trip and determinism", broken == 0 && unstable == 0,
          std::to_string(trips) + " round trips (" + std::to_string(broken) + " broken), " + std::to_string(runs) +
              " commands run twice (" + std::to_string(unstable) + " unstable)"};
}

/// Runs every criterion; an exception counts as a failure of that criterion.
inline std::vector<Result> run_all() {
  const std::vector<std::pair<int, std::function<Result()>>> all = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
  };
  std::vector<Result> out;
  for (const auto& [id, fn] : all) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

inline void print(const Result& r, std::ostream& out) {
  out << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " (" << r.detail << ")\n";
}

}  // namespace progressive::acceptance
