#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "progressive/acceptance.hpp"
#include "progressive/commands.hpp"

namespace cli = progressive::cli;

int main(int argc, char** argv) {
  CLI::App app{"Progressive random choice: decomposition, model checks and identification"};
  app.require_subcommand(1);

  std::string rcf_path, orderings_path, model_path, input_path;
  std::optional<std::string> maybe_orderings;

  auto* decompose = app.add_subcommand("decompose", "Progressive representation of an RCF");
  decompose->add_option("rcf", rcf_path, "RCF file")->required();
  decompose->add_option("orderings", orderings_path, "Orderings file")->required();

  auto* check = app.add_subcommand("check", "Check a model (or an RCF for --rtheta)");
  check->add_option("input", input_path, "Model file, or RCF file for --rtheta")->required();
  check->add_option("orderings", maybe_orderings, "Orderings file");
  bool lattice = false, theta = false, rtheta = false, mixture = false, chain = false;
  auto* group = check->add_option_group("property");
  group->add_flag("--lattice", lattice, "Closed under join and meet");
  group->add_flag("--theta", theta, "Every function satisfies theta1 and theta2");
  group->add_flag("--rtheta", rtheta, "The RCF satisfies the random theta axioms");
  group->add_flag("--mixture", mixture, "Closed under pointwise mixtures");
  group->add_flag("--chain", chain, "Totally ordered by comparison");
  group->require_option(1);

  bool oracle = false;
  auto* closure = app.add_subcommand("closure", "Smallest lattice containing the model");
  closure->add_option("model", model_path, "Model file")->required();
  closure->add_option("orderings", orderings_path, "Orderings file")->required();
  closure->add_flag("--oracle", oracle, "Cross-check against brute-force references");

  auto* identify = app.add_subcommand("identify", "Primitive orderings consistent with a model");
  identify->add_option("model", model_path, "Model file")->required();

  auto* hasse = app.add_subcommand("hasse", "Covering diagram of a model as DOT");
  hasse->add_option("model", model_path, "Model file")->required();
  hasse->add_option("orderings", orderings_path, "Orderings file")->required();

  cli::GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a model on the full domain");
  generate->add_option("kind", gen.kind, "all, rational, theta, random or krs")
      ->required()
      ->check(CLI::IsMember({"all", "rational", "theta", "random", "krs"}));
  generate->add_option("--n", gen.n, "Number of alternatives")->check(CLI::Range(2, 6));
  generate->add_option("--order", gen.order, "Primitive ordering, e.g. a>b>c");
  generate->add_option("--pref", gen.prefs, "Rationale for krs (repeatable)");
  generate->add_option("--size", gen.size, "Model size for random");
  generate->add_option("--seed", gen.seed, "Seed for random");

  std::size_t poly_n = 3;
  std::optional<std::string> poly_order, tags_path;
  auto* polytope = app.add_subcommand("polytope", "Constraint matrix as CSV; exit 0 iff the TU check passes");
  polytope->add_option("--n", poly_n, "Number of alternatives")->check(CLI::Range(2, 6));
  polytope->add_option("--order", poly_order, "Primitive ordering, e.g. a>b>c");
  polytope->add_option("--tags", tags_path, "Write the row-tag sidecar CSV here");

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInputError;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*decompose) return cli::guarded([&] { return cli::run_decompose(rcf_path, orderings_path, out); }, err);
  if (*check) {
    const auto kind = lattice  ? cli::CheckKind::Lattice
                      : theta  ? cli::CheckKind::Theta
                      : rtheta ? cli::CheckKind::RTheta
                      : mixture ? cli::CheckKind::Mixture
                                : cli::CheckKind::Chain;
    return cli::guarded([&] { return cli::run_check(input_path, maybe_orderings, kind, out); }, err);
  }
  if (*closure) return cli::guarded([&] { return cli::run_closure(model_path, orderings_path, oracle, out); }, err);
  if (*identify) return cli::guarded([&] { return cli::run_identify(model_path, out); }, err);
  if (*hasse) return cli::guarded([&] { return cli::run_hasse(model_path, orderings_path, out); }, err);
  if (*generate) return cli::guarded([&] { return cli::run_generate(gen, out); }, err);
  if (*polytope) return cli::guarded([&] { return cli::run_polytope(poly_n, poly_order, tags_path, out); }, err);
  if (*selfcheck) {
    bool all_pass = true;
    for (const auto& r : progressive::acceptance::run_all()) {
      progressive::acceptance::print(r, out);
      all_pass = all_pass && r.pass;
    }
    return all_pass ? cli::kPass : cli::kFail;
  }
  return cli::kInputError;
}
