#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pscub/polymer.hpp"

namespace pscub {

enum class Behaviour : std::uint8_t { G, R };

// Behaviour per escape pair (γ,ε), γ ≈ ε, γ ≠ ε. Dense n×n storage; entries
// off the escape pairs are never read.
class PairBehaviour {
 public:
  PairBehaviour() = default;
  PairBehaviour(int n, Behaviour fill) : n_(n), b_(static_cast<std::size_t>(n) * n, fill) {}
  int size() const { return n_; }
  Behaviour at(int g, int e) const { return b_[g * n_ + e]; }
  void set(int g, int e, Behaviour v) { b_[g * n_ + e] = v; }
  bool operator==(const PairBehaviour& o) const = default;

 private:
  int n_ = 0;
  std::vector<Behaviour> b_;
};

struct SchemeKind {
  enum class Tag { PenroseStatic, Greedy, Returning, Synthetic };
  Tag tag = Tag::Greedy;
  PairBehaviour g;  // Synthetic only

  static SchemeKind penrose() { return {Tag::PenroseStatic, {}}; }
  static SchemeKind greedy() { return {Tag::Greedy, {}}; }
  static SchemeKind returning() { return {Tag::Returning, {}}; }
  static SchemeKind synthetic(PairBehaviour g) { return {Tag::Synthetic, std::move(g)}; }
  bool needs_labels() const { return tag == Tag::Returning || tag == Tag::Synthetic; }
  std::string name() const;
};

struct TraceStep {
  VertexMask T = 0, U = 0, P = 0, B = 0, S = 0, I = 0;
  EdgeMask H_before = 0, H_after = 0, removed = 0;
  std::vector<std::pair<int, int>> parent_edges;  // (child, parent)
};

struct ExplorationTrace {
  std::vector<TraceStep> steps;
};

struct Exploration {
  RootedTree tree;
  ExplorationTrace trace;
};

Exploration explore(const SchemeKind& kind, const Cluster& g, EdgeMask h);
RootedTree explore_tree(const SchemeKind& kind, const Cluster& g, EdgeMask h);

// Checks the exploration invariants on a trace; `why` receives the first failure.
bool check_trace_invariants(const Cluster& g, EdgeMask h, const Exploration& ex,
                            std::string* why = nullptr);

struct EdgePartition {
  EdgeMask admissible = 0;
  EdgeMask conflicting = 0;
  std::vector<std::pair<int, std::string>> cases;  // (edge index, case name)
};

EdgePartition edge_partition(const SchemeKind& kind, const Cluster& g, const RootedTree& t);
EdgeMask scheme_map(const SchemeKind& kind, const Cluster& g, const RootedTree& t);

struct SchemeReport {
  bool disjoint = true;
  bool covers = true;
  bool explore_matches = true;
  bool compatibility = true;
  bool invariants = true;
  std::int64_t subgraphs = 0;
  std::int64_t trees = 0;
  std::int64_t singletons = 0;
  std::int64_t interval_total = 0;
  std::string failure;
  bool ok() const { return disjoint && covers && explore_matches && compatibility && invariants; }
};

SchemeReport verify_partition_scheme(const SchemeKind& kind, const Cluster& g,
                                     bool check_invariants = false);
std::vector<RootedTree> singleton_trees(const SchemeKind& kind, const Cluster& g);
std::int64_t penrose_identity_check(const SchemeKind& kind, const Cluster& g);

struct PropertyReport {
  bool ok = true;
  int trees_checked = 0;
  std::vector<std::string> failures;
};

PropertyReport singleton_properties_check(const SchemeKind& kind, const Cluster& g);

}  // namespace pscub
