#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pscub/cli.hpp"

using namespace pscub;

int main(int argc, char** argv) {
  CLI::App app{"pscub: polymer cluster expansion SCUB toolkit"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output for table1");

  auto* table1 = app.add_subcommand("table1", "optimal fugacities on the hexagonal lattice and its line graph");
  table1->add_flag("--json", as_json, "JSON lines instead of a table");

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "randomised partition scheme sweep");
  verify->add_option("--scheme", vopt.scheme, "pen|greedy|ret|syn")
      ->check(CLI::IsMember({"pen", "greedy", "ret", "syn"}));
  verify->add_option("--trials", vopt.trials)->check(CLI::NonNegativeNumber);
  verify->add_option("--max-len", vopt.max_len)->check(CLI::PositiveNumber);
  verify->add_option("--max-polymers", vopt.max_polymers)->check(CLI::PositiveNumber);
  verify->add_option("--seed", vopt.seed);

  std::string graph, xi_csv, rho_file;
  auto* ursell = app.add_subcommand("ursell", "Ursell function and singleton tree counts");
  ursell->add_option("--graph", graph)->required();
  ursell->add_option("--xi", xi_csv, "comma separated polymer names")->required();

  ScubOptions sopt;
  double hom = 0.0;
  auto* scub = app.add_subcommand("scub", "check a SCUB on a polymer system");
  scub->add_option("--graph", graph)->required();
  scub->add_option("--kind", sopt.kind)->check(CLI::IsMember({"kp", "dob", "fp", "red", "ret", "mix"}));
  auto* hom_opt = scub->add_option("--homogeneous", hom, "same rho on every polymer");
  auto* rho_opt = scub->add_option("--rho", rho_file, "JSON object polymer -> rho");
  hom_opt->excludes(rho_opt);
  scub->add_flag("--optimal", sopt.optimal, "largest homogeneous rho");
  scub->add_flag("--certify", sopt.certify, "sweep all volumes for positivity at -rho");

  int degree = 3;
  double tree_rho = 0.0;
  auto* tree = app.add_subcommand("tree", "homogeneous D-regular tree");
  tree->add_option("--degree", degree)->required();
  auto* trho = tree->add_option("--rho", tree_rho);
  auto* star = tree->add_flag("--star", "evaluate at the threshold");
  trho->excludes(star);

  std::string lkind;
  std::vector<int> lparams;
  auto* lattice = app.add_subcommand("lattice", "emit a lattice patch as graph JSON");
  lattice->add_option("--kind", lkind)
      ->required()
      ->check(CLI::IsMember({"hexagonal", "hex_line_graph", "cycle", "regular_tree_truncation"}));
  lattice->add_option("--params", lparams, "e.g. 6,6 or 10")->required()->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table1) return cmd_table1(std::cout, as_json);
    if (*verify) return cmd_verify(vopt, std::cout);
    if (*ursell) return cmd_ursell(load_system(graph), split_names(xi_csv), std::cout);
    if (*scub) {
      PolymerSystem sys = load_system(graph);
      if (*hom_opt) sopt.homogeneous = hom;
      if (*rho_opt) sopt.rho = load_rho(sys, rho_file);
      if (!sopt.homogeneous && !sopt.rho && !sopt.optimal) {
        std::cerr << "scub: give --homogeneous, --rho or --optimal\n";
        return 2;
      }
      return cmd_scub(sys, sopt, std::cout);
    }
    if (*tree) return cmd_tree(degree, *trho ? std::optional<double>(tree_rho) : std::nullopt, std::cout);
    if (*lattice) {
      std::cout << system_to_json(make_patch(lkind, lparams).system).dump() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", errc_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return 2;
}
