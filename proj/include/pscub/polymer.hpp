#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pscub/errors.hpp"

namespace pscub {

// Polymer system: named polymers with a symmetric, reflexive incompatibility
// relation. Loops are implicit; neighbours() excludes the polymer itself.
class PolymerSystem {
 public:
  PolymerSystem() = default;

  static PolymerSystem build(std::vector<std::string> polymers,
                             const std::vector<std::pair<std::string, std::string>>& pairs,
                             bool require_connected = false);
  // Index-based construction, names default to "p<i>".
  static PolymerSystem from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                  bool require_connected = false);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  int index(std::string_view name) const;

  bool incompatible(int a, int b) const { return a == b || adj_[a * size() + b] != 0; }
  // Γ*≠(γ), ascending.
  const std::vector<int>& neighbours(int g) const { return nbrs_.at(g); }
  // Γ*(γ), ascending, includes γ.
  std::vector<int> incompatible_set(int g) const;
  std::vector<std::pair<int, int>> edges() const;
  bool connected() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> nbrs_;
};

// Finite volume Λ: ascending polymer indices.
using Volume = std::vector<int>;

Volume full_volume(const PolymerSystem& sys);
Volume volume_minus(const Volume& a, const Volume& b);
Volume volume_without(const Volume& a, int g);
Volume volume_intersect(const Volume& a, const Volume& b);
Volume volume_union(const Volume& a, const Volume& b);
bool volume_contains(const Volume& a, int g);
bool volume_is_compatible(const PolymerSystem& sys, const Volume& a);

using VertexMask = std::uint64_t;
using EdgeMask = std::uint64_t;

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }
inline int lowest(std::uint64_t x) { return __builtin_ctzll(x); }
inline VertexMask bit(int i) { return VertexMask{1} << i; }

// Graph on vertices 0..n-1, optionally labelled by polymers (a cluster).
struct Cluster {
  int n = 0;
  std::vector<int> labels;                  // empty for a label-free graph
  std::vector<std::pair<int, int>> edges;   // i<j, lexicographic
  std::vector<VertexMask> adj;              // adjacency bitmasks
  std::vector<int> edge_id;                 // n*n table, -1 if absent
  bool connected = false;

  bool has_labels() const { return !labels.empty(); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int edge_index(int i, int j) const { return edge_id[i * n + j]; }
  EdgeMask all_edges() const;
};

Cluster induce_cluster(const PolymerSystem& sys, const std::vector<int>& xi);
Cluster induce_cluster(const PolymerSystem& sys, const std::vector<std::string>& xi);
Cluster make_graph(int n, const std::vector<std::pair<int, int>>& edges);

// Adjacency bitmasks of the spanning subgraph with the given edge mask.
std::vector<VertexMask> subgraph_adjacency(const Cluster& g, EdgeMask mask);
bool mask_connected(const Cluster& g, EdgeMask mask);
// BFS distances from vertex 0 within the subgraph; -1 if unreachable.
std::vector<int> root_distances(const Cluster& g, EdgeMask mask);

struct SpanningSubgraph {
  const Cluster* base = nullptr;
  EdgeMask edge_mask = 0;
};

struct RootedTree {
  std::vector<int> parent;  // parent[0] == -1, root is 0
  EdgeMask edge_mask = 0;

  int size() const { return static_cast<int>(parent.size()); }
  bool operator==(const RootedTree& o) const { return parent == o.parent; }
};

// Builds the rooted view of a spanning-tree edge mask; throws NotSpanningTree.
RootedTree tree_from_mask(const Cluster& g, EdgeMask mask);
std::vector<int> tree_depths(const RootedTree& t);
std::vector<std::vector<int>> tree_children(const RootedTree& t);

void for_each_connected_spanning_subgraph(const Cluster& g,
                                          const std::function<void(EdgeMask)>& fn,
                                          int cap = -1);
std::vector<SpanningSubgraph> enumerate_connected_spanning_subgraphs(const Cluster& g,
                                                                     int cap = -1);
std::vector<RootedTree> enumerate_spanning_trees(const Cluster& g);

}  // namespace pscub
