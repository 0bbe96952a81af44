#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pscub/oracle.hpp"
#include "pscub/polymer.hpp"
#include "pscub/scub.hpp"

namespace pscub {

using json = nlohmann::json;

// Brick-wall honeycomb on a w×h grid: horizontal edges, vertical edges where
// x+y is even. Interior vertices have degree 3.
PolymerSystem hexagonal_patch(int w, int h);
// Line graph of hexagonal_patch(w, h).
PolymerSystem hex_line_graph_patch(int w, int h);
PolymerSystem cycle_patch(int n);
// Root of degree D, inner vertices with D-1 children, leaves at `depth`.
PolymerSystem regular_tree_patch(int D, int depth);

struct LatticePatch {
  std::string kind;  // hexagonal | hex_line_graph | cycle | regular_tree_truncation
  std::vector<int> params;
  PolymerSystem system;
};

LatticePatch make_patch(const std::string& kind, const std::vector<int>& params);

json system_to_json(const PolymerSystem& sys);
PolymerSystem system_from_json(const json& j);
PolymerSystem load_system(const std::string& path);
// Map polymer name → value; missing polymers default to 0.
FugacityVector rho_from_json(const PolymerSystem& sys, const json& j);
FugacityVector load_rho(const PolymerSystem& sys, const std::string& path);
std::vector<std::string> split_names(const std::string& csv);

struct Table1Row {
  std::string lattice;
  std::string scub;
  std::string shape;
  double reference = 0.0;
  double computed = 0.0;
};

std::vector<Table1Row> table1_rows();

// Commands write to `out` and return the process exit code (0 iff all checks pass).
// Reports are JSON lines; only table1 has a text form.
int cmd_table1(std::ostream& out, bool as_json);

struct VerifyOptions {
  std::string scheme = "greedy";  // pen | greedy | ret | syn
  int trials = 100;
  int max_len = 5;
  int max_polymers = 6;
  std::uint64_t seed = 1;
};

json run_verify(const VerifyOptions& opt);
int cmd_verify(const VerifyOptions& opt, std::ostream& out);

json run_ursell(const PolymerSystem& sys, const std::vector<std::string>& xi);
int cmd_ursell(const PolymerSystem& sys, const std::vector<std::string>& xi, std::ostream& out);

struct ScubOptions {
  std::string kind = "dob";
  std::optional<double> homogeneous;
  std::optional<FugacityVector> rho;
  bool optimal = false;
  bool certify = false;
};

json run_scub(const PolymerSystem& sys, const ScubOptions& opt);
int cmd_scub(const PolymerSystem& sys, const ScubOptions& opt, std::ostream& out);

json run_tree(int degree, std::optional<double> rho);
int cmd_tree(int degree, std::optional<double> rho, std::ostream& out);

}  // namespace pscub
