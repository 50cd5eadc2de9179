#pragma once

// Command implementations behind the command-line tool. Each command reads
// its inputs from files, writes its result to `out`, and returns an exit code:
// 0 pass, 1 semantic fail, 2 parse/schema/usage error, 3 invariant violation
// in the input data, 4 internal error.

#include <functional>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "progressive/core.hpp"
#include "progressive/enumerate.hpp"
#include "progressive/generators.hpp"
#include "progressive/hasse.hpp"
#include "progressive/identify.hpp"
#include "progressive/io.hpp"
#include "progressive/models.hpp"
#include "progressive/oracle.hpp"
#include "progressive/polytope.hpp"
#include "progressive/random.hpp"

namespace progressive::cli {

using io::Json;

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kInvalidData = 3, kInternalError = 4 };

/// Runs a command, turning library errors into exit codes and a message on `err`.
inline int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InvariantViolation& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidData;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

namespace detail {

inline void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

inline Json set_json(const Domain& d, std::size_t set_index) { return io::detail::set_json(d, d.set(set_index)); }

inline const char* theta_name(ThetaAxiom a, bool random) {
  if (random) return a == ThetaAxiom::First ? "rtheta1" : "rtheta2";
  return a == ThetaAxiom::First ? "theta1" : "theta2";
}

}  // namespace detail

/// Progressive representation of an RCF under the given orderings.
inline int run_decompose(const std::string& rcf_path, const std::string& orderings_path, std::ostream& out) {
  const auto rho = io::parse_rcf(io::read_json_file(rcf_path));
  const auto ord = io::parse_orderings(io::read_json_file(orderings_path), rho.domain());
  detail::emit(out, io::to_json(decompose_progressive(rho, ord)));
  return kPass;
}

enum class CheckKind { Lattice, Theta, RTheta, Mixture, Chain };

inline const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Lattice: return "lattice";
    case CheckKind::Theta: return "theta";
    case CheckKind::RTheta: return "rtheta";
    case CheckKind::Mixture: return "mixture";
    case CheckKind::Chain: return "chain";
  }
  return "?";
}

/// The input is an RCF for --rtheta and a model otherwise.
inline int run_check(const std::string& input_path, const std::optional<std::string>& orderings_path, CheckKind kind,
                     std::ostream& out) {
  const Json input = io::read_json_file(input_path);
  Json report;
  report["check"] = to_string(kind);
  auto load_orderings = [&](const DomainPtr& domain) {
    if (!orderings_path) throw PreconditionError(std::string("--") + to_string(kind) + " needs an orderings file");
    return io::parse_orderings(io::read_json_file(*orderings_path), domain);
  };

  bool pass = true;
  Json witness;
  if (kind == CheckKind::RTheta) {
    const auto rho = io::parse_rcf(input);
    const Domain& d = *rho.domain();
    const auto ord = load_orderings(rho.domain());
    const auto r = satisfies_rtheta(rho, ord.require_global());
    pass = r.ok;
    if (r.witness) {
      witness["set"] = detail::set_json(d, r.witness->set_index);
      witness["removed"] = d.name(r.witness->removed);
      witness["fixed"] = d.name(r.witness->fixed);
      witness["axiom"] = detail::theta_name(r.witness->axiom, true);
    }
  } else {
    const auto model = io::parse_model(input);
    const Domain& d = *model.domain();
    switch (kind) {
      case CheckKind::Lattice: {
        const auto r = is_lattice(model, load_orderings(model.domain()));
        pass = r.is_lattice;
        if (r.witness) {
          witness["first"] = r.witness->first.to_string();
          witness["second"] = r.witness->second.to_string();
          witness["operation"] = r.witness->join_escaped ? "join" : "meet";
          witness["escaped"] = r.witness->escaped.to_string();
        }
        break;
      }
      case CheckKind::Theta: {
        const auto ord = load_orderings(model.domain());
        for (const auto& c : model) {
          const auto r = satisfies_theta(c, ord.require_global());
          if (r.ok) continue;
          pass = false;
          witness["function"] = c.to_string();
          witness["set"] = detail::set_json(d, r.violation->set_index);
          witness["removed"] = d.name(r.violation->removed);
          witness["chosen"] = d.name(r.violation->chosen);
          witness["chosen_after"] = d.name(r.violation->chosen_after);
          witness["axiom"] = detail::theta_name(r.violation->axiom, false);
          break;
        }
        break;
      }
      case CheckKind::Mixture: {
        const auto r = is_mixture_closed(model);
        pass = r.closed;
        if (r.witness) {
          witness["first"] = r.witness->first.to_string();
          witness["second"] = r.witness->second.to_string();
          witness["mixture"] = r.witness->mixture.to_string();
        }
        break;
      }
      case CheckKind::Chain: {
        const auto ord = load_orderings(model.domain());
        for (std::size_t i = 0; i < model.size() && pass; ++i) {
          for (std::size_t j = i + 1; j < model.size() && pass; ++j) {
            if (compare(model[i], model[j], ord) != Comparison::Incomparable) continue;
            pass = false;
            witness["first"] = model[i].to_string();
            witness["second"] = model[j].to_string();
          }
        }
        break;
      }
      case CheckKind::RTheta: break;
    }
  }
  report["pass"] = pass;
  if (!pass) report["witness"] = std::move(witness);
  detail::emit(out, report);
  return pass ? kPass : kFail;
}

/// Lattice closure. With `oracle`, a rational input on the full domain is
/// cross-checked against the theta model, and any result against the
/// sampling check of self-progressiveness.
inline int run_closure(const std::string& model_path, const std::string& orderings_path, bool oracle,
                       std::ostream& out) {
  const auto model = io::parse_model(io::read_json_file(model_path));
  const auto ord = io::parse_orderings(io::read_json_file(orderings_path), model.domain());
  const auto closed = lattice_closure(model, ord);
  if (oracle) {
    const Domain& d = *model.domain();
    if (d.is_full() && d.size() <= 4 && ord.global() && model == enumerate_rational(model.domain())) {
      if (!(closed == theta_model(model.domain(), *ord.global()))) {
        throw InternalError("closure of rational choice differs from the theta model");
      }
    }
    if (!naive_self_progressive(closed, ord, 200)) throw InternalError("closure failed the sampling check");
  }
  detail::emit(out, io::to_json(closed));
  return kPass;
}

/// Orderings the model is consistent with, plus its betweenness and axiom report.
inline int run_identify(const std::string& model_path, std::ostream& out) {
  const auto model = io::parse_model(io::read_json_file(model_path));
  const Domain& d = *model.domain();
  const auto id = identify_primitive(model);
  Json j;
  Json orders = Json::array();
  for (const auto& o : id.orderings) orders.push_back(o.to_string(d));
  j["orderings"] = std::move(orders);
  j["axioms"] = io::to_json(id.axioms, d);
  j["betweenness"] = io::to_json(id.relation, d);
  detail::emit(out, j);
  return kPass;
}

inline int run_hasse(const std::string& model_path, const std::string& orderings_path, std::ostream& out) {
  const auto model = io::parse_model(io::read_json_file(model_path));
  const auto ord = io::parse_orderings(io::read_json_file(orderings_path), model.domain());
  write_dot(model, ord, out);
  return kPass;
}

struct GenerateOptions {
  std::string kind;  // all, rational, theta, random, krs
  std::size_t n = 3;
  std::optional<std::string> order;
  std::vector<std::string> prefs;
  std::size_t size = 4;
  std::uint64_t seed = 1;
};

inline int run_generate(const GenerateOptions& opt, std::ostream& out) {
  const auto domain = Domain::full(opt.n);
  auto order = [&]() { return opt.order ? io::parse_ordering_string(*domain, *opt.order) : Ordering::identity(opt.n); };
  std::optional<ChoiceModel> model;
  if (opt.kind == "all") {
    model = all_choice_functions(domain);
  } else if (opt.kind == "rational") {
    model = enumerate_rational(domain);
  } else if (opt.kind == "theta") {
    model = theta_model(domain, order());
  } else if (opt.kind == "random") {
    model = gen_random_model(opt.seed, domain, opt.size);
  } else if (opt.kind == "krs") {
    std::vector<Ordering> prefs;
    for (const auto& p : opt.prefs) prefs.push_back(io::parse_ordering_string(*domain, p));
    model = gen_krs(domain, prefs);
  } else {
    throw ParseError("unknown generator '" + opt.kind + "'");
  }
  detail::emit(out, io::to_json(*model));
  return kPass;
}

/// Constraint matrix as CSV on `out`; row tags to `tags_path` when given.
inline int run_polytope(std::size_t n, const std::optional<std::string>& order_text,
                        const std::optional<std::string>& tags_path, std::ostream& out) {
  const auto domain = Domain::full(n);
  const Ordering order = order_text ? io::parse_ordering_string(*domain, *order_text) : Ordering::identity(n);
  const auto sys = build_constraints(domain, order);
  write_matrix_csv(sys, out);
  if (tags_path) {
    std::ofstream tags(*tags_path);
    if (!tags) throw ParseError("cannot write '" + *tags_path + "'");
    write_row_tags_csv(sys, tags);
  }
  return heller_check(sys) ? kPass : kFail;
}

}  // namespace progressive::cli
