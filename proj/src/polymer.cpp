#include "pscub/polymer.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace pscub {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::DuplicatePolymer: return "DuplicatePolymer";
    case Errc::UnknownPolymerInPair: return "UnknownPolymerInPair";
    case Errc::DisconnectedSystem: return "DisconnectedSystem";
    case Errc::UnknownPolymer: return "UnknownPolymer";
    case Errc::EmptyVector: return "EmptyVector";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Disconnected: return "Disconnected";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NonPositivePartitionFunction: return "NonPositivePartitionFunction";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::MissingLabels: return "MissingLabels";
    case Errc::NotSpanningTree: return "NotSpanningTree";
    case Errc::UnclassifiedEdge: return "UnclassifiedEdge";
    case Errc::WrongKind: return "WrongKind";
    case Errc::NoIncompatibleNeighbour: return "NoIncompatibleNeighbour";
    case Errc::NonUnimodal: return "NonUnimodal";
    case Errc::TruncationExceeded: return "TruncationExceeded";
    case Errc::UnknownPair: return "UnknownPair";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

int enum_cap() {
  if (const char* env = std::getenv("PSCUB_ENUM_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0 && v <= 62) return static_cast<int>(v);
  }
  return 24;
}

PolymerSystem PolymerSystem::build(std::vector<std::string> polymers,
                                   const std::vector<std::pair<std::string, std::string>>& pairs,
                                   bool require_connected) {
  PolymerSystem s;
  s.names_ = std::move(polymers);
  for (int i = 0; i < s.size(); ++i) {
    if (!s.index_.emplace(s.names_[i], i).second)
      throw Error(Errc::DuplicatePolymer, s.names_[i]);
  }
  const int n = s.size();
  s.adj_.assign(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [a, b] : pairs) {
    auto ia = s.index_.find(a), ib = s.index_.find(b);
    if (ia == s.index_.end()) throw Error(Errc::UnknownPolymerInPair, a);
    if (ib == s.index_.end()) throw Error(Errc::UnknownPolymerInPair, b);
    if (ia->second == ib->second) continue;
    s.adj_[ia->second * n + ib->second] = 1;
    s.adj_[ib->second * n + ia->second] = 1;
  }
  s.nbrs_.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.adj_[i * n + j]) s.nbrs_[i].push_back(j);
  if (require_connected && !s.connected())
    throw Error(Errc::DisconnectedSystem, "incompatibility graph is not connected");
  return s;
}

PolymerSystem PolymerSystem::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                        bool require_connected) {
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "p" + std::to_string(i);
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Error(Errc::UnknownPolymerInPair, std::to_string(a) + "," + std::to_string(b));
    pairs.emplace_back(names[a], names[b]);
  }
  return build(std::move(names), pairs, require_connected);
}

int PolymerSystem::index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw Error(Errc::UnknownPolymer, std::string(name));
  return it->second;
}

std::vector<int> PolymerSystem::incompatible_set(int g) const {
  if (g < 0 || g >= size()) throw Error(Errc::UnknownPolymer, std::to_string(g));
  std::vector<int> out = nbrs_[g];
  out.insert(std::lower_bound(out.begin(), out.end(), g), g);
  return out;
}

std::vector<std::pair<int, int>> PolymerSystem::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j : nbrs_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

bool PolymerSystem::connected() const {
  const int n = size();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : nbrs_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

Volume full_volume(const PolymerSystem& sys) {
  Volume v(sys.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

Volume volume_minus(const Volume& a, const Volume& b) {
  Volume out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Volume volume_without(const Volume& a, int g) {
  Volume out;
  out.reserve(a.size());
  for (int x : a)
    if (x != g) out.push_back(x);
  return out;
}

Volume volume_intersect(const Volume& a, const Volume& b) {
  Volume out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Volume volume_union(const Volume& a, const Volume& b) {
  Volume out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool volume_contains(const Volume& a, int g) { return std::binary_search(a.begin(), a.end(), g); }

bool volume_is_compatible(const PolymerSystem& sys, const Volume& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (sys.incompatible(a[i], a[j])) return false;
  return true;
}

EdgeMask Cluster::all_edges() const {
  return num_edges() == 64 ? ~EdgeMask{0} : (EdgeMask{1} << num_edges()) - 1;
}

namespace {

Cluster finish_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n > 64) throw Error(Errc::TooLarge, "clusters are limited to 64 vertices");
  Cluster g;
  g.n = n;
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.adj.assign(n, 0);
  g.edge_id.assign(static_cast<std::size_t>(n) * n, -1);
  for (int k = 0; k < g.num_edges(); ++k) {
    auto [i, j] = g.edges[k];
    g.adj[i] |= bit(j);
    g.adj[j] |= bit(i);
    g.edge_id[i * n + j] = k;
    g.edge_id[j * n + i] = k;
  }
  g.connected = n > 0 && (g.num_edges() > 64 || mask_connected(g, g.all_edges()));
  return g;
}

}  // namespace

Cluster induce_cluster(const PolymerSystem& sys, const std::vector<int>& xi) {
  if (xi.empty()) throw Error(Errc::EmptyVector, "cluster needs at least one label");
  const int n = static_cast<int>(xi.size());
  for (int l : xi)
    if (l < 0 || l >= sys.size()) throw Error(Errc::UnknownPolymer, std::to_string(l));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sys.incompatible(xi[i], xi[j])) edges.emplace_back(i, j);
  if (edges.size() > 64) throw Error(Errc::TooLarge, "cluster has more than 64 edges");
  Cluster g = finish_graph(n, std::move(edges));
  g.labels = xi;
  return g;
}

Cluster induce_cluster(const PolymerSystem& sys, const std::vector<std::string>& xi) {
  std::vector<int> idx;
  idx.reserve(xi.size());
  for (const auto& s : xi) idx.push_back(sys.index(s));
  return induce_cluster(sys, idx);
}

Cluster make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  if (edges.size() > 64) throw Error(Errc::TooLarge, "graph has more than 64 edges");
  return finish_graph(n, edges);
}

std::vector<VertexMask> subgraph_adjacency(const Cluster& g, EdgeMask mask) {
  std::vector<VertexMask> adj(g.n, 0);
  for (EdgeMask m = mask; m; m &= m - 1) {
    auto [i, j] = g.edges[lowest(m)];
    adj[i] |= bit(j);
    adj[j] |= bit(i);
  }
  return adj;
}

bool mask_connected(const Cluster& g, EdgeMask mask) {
  if (g.n <= 1) return true;
  auto adj = subgraph_adjacency(g, mask);
  VertexMask seen = 1, frontier = 1;
  while (frontier) {
    VertexMask next = 0;
    for (VertexMask f = frontier; f; f &= f - 1) next |= adj[lowest(f)];
    frontier = next & ~seen;
    seen |= next;
  }
  const VertexMask all = g.n == 64 ? ~VertexMask{0} : bit(g.n) - 1;
  return seen == all;
}

std::vector<int> root_distances(const Cluster& g, EdgeMask mask) {
  auto adj = subgraph_adjacency(g, mask);
  std::vector<int> d(g.n, -1);
  d[0] = 0;
  VertexMask seen = 1, frontier = 1;
  for (int level = 1; frontier; ++level) {
    VertexMask next = 0;
    for (VertexMask f = frontier; f; f &= f - 1) next |= adj[lowest(f)];
    frontier = next & ~seen;
    seen |= frontier;
    for (VertexMask f = frontier; f; f &= f - 1) d[lowest(f)] = level;
  }
  return d;
}

RootedTree tree_from_mask(const Cluster& g, EdgeMask mask) {
  if (popcount(mask) != g.n - 1 || !mask_connected(g, mask))
    throw Error(Errc::NotSpanningTree, "edge mask is not a spanning tree");
  auto adj = subgraph_adjacency(g, mask);
  RootedTree t;
  t.parent.assign(g.n, -1);
  t.edge_mask = mask;
  VertexMask seen = 1;
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int v = queue[q];
    for (VertexMask nb = adj[v] & ~seen; nb; nb &= nb - 1) {
      int w = lowest(nb);
      t.parent[w] = v;
      seen |= bit(w);
      queue.push_back(w);
    }
  }
  return t;
}

std::vector<int> tree_depths(const RootedTree& t) {
  const int n = t.size();
  std::vector<int> d(n, -1);
  d[0] = 0;
  for (int i = 0; i < n; ++i) {
    // walk up until a known depth, then fill back down
    std::vector<int> path;
    int v = i;
    while (d[v] < 0) {
      path.push_back(v);
      v = t.parent[v];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) d[*it] = d[t.parent[*it]] + 1;
  }
  return d;
}

std::vector<std::vector<int>> tree_children(const RootedTree& t) {
  std::vector<std::vector<int>> ch(t.size());
  for (int v = 1; v < t.size(); ++v) ch[t.parent[v]].push_back(v);
  return ch;
}

void for_each_connected_spanning_subgraph(const Cluster& g,
                                          const std::function<void(EdgeMask)>& fn, int cap) {
  if (cap < 0) cap = enum_cap();
  if (g.num_edges() > cap)
    throw Error(Errc::TooLarge, std::to_string(g.num_edges()) + " edges exceed cap " +
                                    std::to_string(cap));
  if (!g.connected) return;
  const EdgeMask end = EdgeMask{1} << g.num_edges();
  for (EdgeMask m = 0; m < end; ++m)
    if (popcount(m) >= g.n - 1 && mask_connected(g, m)) fn(m);
}

std::vector<SpanningSubgraph> enumerate_connected_spanning_subgraphs(const Cluster& g, int cap) {
  std::vector<SpanningSubgraph> out;
  for_each_connected_spanning_subgraph(g, [&](EdgeMask m) { out.push_back({&g, m}); }, cap);
  return out;
}

namespace {

int uf_find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x];
  return x;
}

void spanning_rec(const Cluster& g, int k, int chosen, EdgeMask mask, std::vector<int> uf,
                  std::vector<RootedTree>& out) {
  if (chosen == g.n - 1) {
    out.push_back(tree_from_mask(g, mask));
    return;
  }
  if (g.num_edges() - k < g.n - 1 - chosen) return;
  auto [i, j] = g.edges[k];
  int ri = uf_find(uf, i), rj = uf_find(uf, j);
  if (ri != rj) {
    auto uf2 = uf;
    uf2[ri] = rj;
    spanning_rec(g, k + 1, chosen + 1, mask | (EdgeMask{1} << k), std::move(uf2), out);
  }
  spanning_rec(g, k + 1, chosen, mask, std::move(uf), out);
}

}  // namespace

std::vector<RootedTree> enumerate_spanning_trees(const Cluster& g) {
  if (!g.connected) throw Error(Errc::Disconnected, "spanning trees need a connected graph");
  std::vector<RootedTree> out;
  std::vector<int> uf(g.n);
  std::iota(uf.begin(), uf.end(), 0);
  spanning_rec(g, 0, 0, 0, std::move(uf), out);
  std::sort(out.begin(), out.end(),
            [](const RootedTree& a, const RootedTree& b) { return a.edge_mask < b.edge_mask; });
  return out;
}

}  // namespace pscub
