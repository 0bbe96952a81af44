#include "pscub/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "pscub/random.hpp"
#include "pscub/schemes.hpp"

namespace pscub {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::PreconditionViolated, what);
}

int node_id(int x, int y, int w) { return y * w + x; }

std::vector<std::pair<int, int>> honeycomb_edges(int w, int h) {
  std::vector<std::pair<int, int>> edges;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) edges.emplace_back(node_id(x, y, w), node_id(x + 1, y, w));
      if (y + 1 < h && (x + y) % 2 == 0) edges.emplace_back(node_id(x, y, w), node_id(x, y + 1, w));
    }
  return edges;
}

}  // namespace

PolymerSystem hexagonal_patch(int w, int h) {
  require(w >= 2 && h >= 1, "hexagonal patch needs w >= 2, h >= 1");
  std::vector<std::string> names;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) names.push_back("h" + std::to_string(x) + "_" + std::to_string(y));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto [a, b] : honeycomb_edges(w, h)) pairs.emplace_back(names[a], names[b]);
  return PolymerSystem::build(names, pairs, true);
}

PolymerSystem hex_line_graph_patch(int w, int h) {
  require(w >= 2 && h >= 1, "line graph patch needs w >= 2, h >= 1");
  const auto edges = honeycomb_edges(w, h);
  std::vector<std::vector<int>> at(w * h);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    at[a].push_back(static_cast<int>(i));
    at[b].push_back(static_cast<int>(i));
    names.push_back("e" + std::to_string(a) + "_" + std::to_string(b));
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& inc : at)
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) pairs.emplace_back(names[inc[i]], names[inc[j]]);
  return PolymerSystem::build(names, pairs, true);
}

PolymerSystem cycle_patch(int n) {
  require(n >= 3, "cycle needs at least 3 polymers");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return PolymerSystem::from_edges(n, edges, true);
}

PolymerSystem regular_tree_patch(int D, int depth) {
  require(D >= 2 && depth >= 0, "tree patch needs D >= 2, depth >= 0");
  std::vector<std::pair<int, int>> edges;
  std::vector<int> frontier{0};
  int n = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<int> next;
    for (int v : frontier) {
      const int kids = v == 0 ? D : D - 1;
      for (int k = 0; k < kids; ++k) {
        edges.emplace_back(v, n);
        next.push_back(n++);
      }
    }
    frontier = std::move(next);
  }
  return PolymerSystem::from_edges(n, edges, true);
}

LatticePatch make_patch(const std::string& kind, const std::vector<int>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw Error(Errc::ParseError, kind + " takes " + std::to_string(k) + " parameters");
  };
  LatticePatch p{kind, params, {}};
  if (kind == "hexagonal") {
    need(2);
    p.system = hexagonal_patch(params[0], params[1]);
  } else if (kind == "hex_line_graph") {
    need(2);
    p.system = hex_line_graph_patch(params[0], params[1]);
  } else if (kind == "cycle") {
    need(1);
    p.system = cycle_patch(params[0]);
  } else if (kind == "regular_tree_truncation") {
    need(2);
    p.system = regular_tree_patch(params[0], params[1]);
  } else {
    throw Error(Errc::ParseError, "unknown lattice '" + kind + "'");
  }
  return p;
}

json system_to_json(const PolymerSystem& sys) {
  json pairs = json::array();
  for (auto [a, b] : sys.edges()) pairs.push_back({sys.name(a), sys.name(b)});
  return {{"polymers", sys.names()}, {"incompatible", pairs}};
}

PolymerSystem system_from_json(const json& j) {
  try {
    auto names = j.at("polymers").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : j.at("incompatible")) {
      if (!p.is_array() || p.size() != 2) throw Error(Errc::ParseError, "pair must have 2 names");
      pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    return PolymerSystem::build(std::move(names), pairs);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

}  // namespace

PolymerSystem load_system(const std::string& path) { return system_from_json(read_json(path)); }

FugacityVector rho_from_json(const PolymerSystem& sys, const json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "rho must be an object of name: value");
  FugacityVector rho(sys.size(), 0.0);
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw Error(Errc::ParseError, "rho value for " + k + " is not a number");
    rho[sys.index(k)] = v.get<double>();
  }
  return rho;
}

FugacityVector load_rho(const PolymerSystem& sys, const std::string& path) {
  return rho_from_json(sys, read_json(path));
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  if (out.empty()) throw Error(Errc::EmptyVector, "empty polymer list");
  return out;
}

std::vector<Table1Row> table1_rows() {
  const HomogeneousShape hex = hex_shape(), line = hex_line_shape();
  struct Row {
    const HomogeneousShape* shape;
    LeopKind kind;
    const char* scub;
    const char* form;
    double reference;
  };
  const Row table[] = {
      {&hex, LeopKind::dobrushin(), "Dob", "(1+mu)^4", 0.1055},
      {&hex, LeopKind::fp(), "FP", "mu + (1+mu)^3", 0.1290},
      {&hex, LeopKind::reduced(), "reduced", "(1+mu)(1+mu)^2", 0.1481},
      {&hex, LeopKind::returning(), "returning", "(1+mu)(1+mu)^2", 0.1481},
      {&line, LeopKind::dobrushin(), "Dob", "(1+mu)^5", 0.0819},
      {&line, LeopKind::fp(), "FP", "mu + (1+2mu)^2", 0.1111},
      {&line, LeopKind::reduced(), "reduced", "(1+mu)(1+mu)^3", 0.1055},
      {&line, LeopKind::returning(), "returning", "(1+mu)(1+mu)(1+2mu)", 0.1134},
  };
  std::vector<Table1Row> rows;
  for (const auto& s : table)
    rows.push_back({s.shape->name, s.scub, s.form, s.reference, optimal_rho(s.kind, *s.shape).rho});
  return rows;
}

int cmd_table1(std::ostream& out, bool as_json) {
  const auto rows = table1_rows();
  bool ok = true;
  if (!as_json) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8s %-10s %-22s %10s %9s\n", "lattice", "SCUB", "shape",
                  "optimal", "reference");
    out << buf;
  }
  for (const auto& r : rows) {
    const bool match = std::abs(r.computed - r.reference) <= 5e-4;
    ok = ok && match;
    if (as_json) {
      out << json{{"lattice", r.lattice}, {"scub", r.scub},     {"shape", r.shape},
                  {"optimal_rho", r.computed}, {"reference", r.reference}, {"match", match}}
                 .dump()
          << "\n";
    } else {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-8s %-10s %-22s %10.6f %9.4f\n", r.lattice.c_str(),
                    r.scub.c_str(), r.shape.c_str(), r.computed, r.reference);
      out << buf;
    }
  }
  return ok ? 0 : 1;
}

namespace {

SchemeKind scheme_from_name(const std::string& s) {
  if (s == "pen") return SchemeKind::penrose();
  if (s == "greedy") return SchemeKind::greedy();
  if (s == "ret") return SchemeKind::returning();
  if (s == "syn") return SchemeKind::synthetic({});
  throw Error(Errc::ParseError, "unknown scheme '" + s + "'");
}

}  // namespace

json run_verify(const VerifyOptions& opt) {
  SchemeKind kind = scheme_from_name(opt.scheme);
  require(opt.trials >= 0 && opt.max_len >= 1 && opt.max_polymers >= 1, "bad verify options");
  // separate stream for behaviours so every scheme sees the same clusters
  Rng rng(opt.seed), brng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> size(1, opt.max_polymers);
  std::int64_t passed = 0, subgraphs = 0, trees = 0, singletons = 0;
  json failures = json::array();
  for (int t = 0; t < opt.trials; ++t) {
    PolymerSystem sys = random_connected_system(rng, size(rng));
    Cluster c = random_cluster(rng, sys, opt.max_len);
    if (kind.tag == SchemeKind::Tag::Synthetic) kind.g = random_pair_behaviour(brng, sys);
    const SchemeReport rep = verify_partition_scheme(kind, c);
    const std::int64_t residual = penrose_identity_check(kind, c);
    const auto single = static_cast<std::int64_t>(singleton_trees(kind, c).size());
    const std::int64_t u = ursell_count(c);
    bool props = true;
    if (kind.tag != SchemeKind::Tag::Synthetic) props = singleton_properties_check(kind, c).ok;
    const bool ok = rep.ok() && residual == 0 && single == std::abs(u) && props;
    subgraphs += rep.subgraphs;
    trees += rep.trees;
    singletons += single;
    if (ok) {
      ++passed;
    } else if (failures.size() < 10) {
      failures.push_back({{"trial", t},
                          {"scheme_axiom", rep.ok()},
                          {"penrose_residual", residual},
                          {"properties", props},
                          {"detail", rep.failure}});
    }
  }
  return {{"command", "verify"},     {"scheme", opt.scheme},
          {"seed", opt.seed},        {"trials", opt.trials},
          {"max_len", opt.max_len},  {"passed", passed},
          {"failed", opt.trials - passed}, {"subgraphs", subgraphs},
          {"trees", trees},          {"singletons", singletons},
          {"failures", failures}};
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  json r = run_verify(opt);
  out << r.dump() << "\n";
  return r["failed"].get<int>() == 0 ? 0 : 1;
}

json run_ursell(const PolymerSystem& sys, const std::vector<std::string>& xi) {
  Cluster c = induce_cluster(sys, xi);
  json singles = json::object();
  for (const char* s : {"pen", "greedy", "ret"})
    singles[s] = c.connected ? singleton_trees(scheme_from_name(s), c).size() : 0;
  return {{"command", "ursell"},
          {"xi", xi},
          {"connected", c.connected},
          {"ursell", ursell_count(c)},
          {"singletons", singles}};
}

int cmd_ursell(const PolymerSystem& sys, const std::vector<std::string>& xi, std::ostream& out) {
  out << run_ursell(sys, xi).dump() << "\n";
  return 0;
}

namespace {

json named(const PolymerSystem& sys, const FugacityVector& v) {
  json j = json::object();
  for (int i = 0; i < sys.size(); ++i) j[sys.name(i)] = v[i];
  return j;
}

}  // namespace

json run_scub(const PolymerSystem& sys, const ScubOptions& opt) {
  const LeopKind kind = parse_leop_kind(opt.kind);
  json r = {{"command", "scub"}, {"kind", kind.name()}, {"polymers", sys.size()}};
  bool ok = true;
  if (opt.optimal) {
    OptimalRho o = optimal_rho(kind, sys, true);
    r["optimal_rho"] = o.rho;
    r["optimal_mu"] = std::isfinite(o.mu) ? json(o.mu) : json(nullptr);
    r["grid_fallback"] = o.grid_fallback;
  }
  std::optional<FugacityVector> rho = opt.rho;
  if (opt.homogeneous) rho = FugacityVector(sys.size(), *opt.homogeneous);
  if (rho) {
    FixpointReport rep = scub_holds(kind, sys, *rho);
    r["holds"] = rep.holds();
    r["converged"] = rep.converged;
    r["nonstrict"] = rep.nonstrict;
    r["strict"] = rep.strict;
    r["strict_required"] = rep.strict_required;
    r["iterations"] = rep.iterations;
    r["witness_mu"] = rep.witness_mu ? named(sys, *rep.witness_mu) : json(nullptr);
    ok = rep.holds();
    if (opt.certify) {
      if (sys.size() <= 24) {
        const bool cert = admissible(sys, scaled(*rho, 1.0 - 1e-6));
        r["certified"] = cert;
        ok = ok && cert;
      } else {
        r["certified"] = nullptr;
        r["certify_skipped"] = "more than 24 polymers";
      }
    }
  }
  r["ok"] = ok;
  return r;
}

int cmd_scub(const PolymerSystem& sys, const ScubOptions& opt, std::ostream& out) {
  json r = run_scub(sys, opt);
  out << r.dump() << "\n";
  return r["ok"].get<bool>() ? 0 : 1;
}

json run_tree(int degree, std::optional<double> rho) {
  const double rs = homogeneous_tree_rho_star(degree);
  const double r = rho.value_or(rs);
  const TreeSolution sol = homogeneous_tree(degree, r);
  json fd = json::array();
  double worst = 0.0;
  for (double h : {1e-6, 1e-7, 1e-8, 1e-9, 1e-10}) {
    const double s = h / 10.0, at = rs - h;
    const double d = (homogeneous_tree(degree, at + s).alpha - homogeneous_tree(degree, at - s).alpha) /
                     (2.0 * s);
    worst = std::max(worst, std::abs(d));
    fd.push_back({{"rho", at}, {"derivative", d}});
  }
  return {{"command", "tree"},
          {"degree", degree},
          {"rho", r},
          {"alpha", sol.alpha},
          {"rho_star", sol.rho_star},
          {"residual", sol.alpha - (1.0 - r / std::pow(sol.alpha, degree - 1))},
          {"derivative_near_rho_star", fd},
          {"derivative_diverges", worst > 1e3}};
}

int cmd_tree(int degree, std::optional<double> rho, std::ostream& out) {
  out << run_tree(degree, rho).dump() << "\n";
  return 0;
}

}  // namespace pscub
