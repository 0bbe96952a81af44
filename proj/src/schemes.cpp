#include "pscub/schemes.hpp"

#include <map>
#include <unordered_map>

#include "pscub/oracle.hpp"

namespace pscub {

std::string SchemeKind::name() const {
  switch (tag) {
    case Tag::PenroseStatic: return "pen";
    case Tag::Greedy: return "greedy";
    case Tag::Returning: return "ret";
    case Tag::Synthetic: return "syn";
  }
  return "?";
}

namespace {

VertexMask all_vertices(int n) { return n == 64 ? ~VertexMask{0} : bit(n) - 1; }

EdgeMask edge_bit(const Cluster& g, int i, int j) { return EdgeMask{1} << g.edge_index(i, j); }

// Type of the edge from the deeper vertex i towards the boundary vertex j.
Behaviour edge_type(const SchemeKind& kind, const Cluster& g, int i, int j) {
  switch (kind.tag) {
    case SchemeKind::Tag::PenroseStatic:
    case SchemeKind::Tag::Greedy: return Behaviour::G;
    case SchemeKind::Tag::Returning:
      return g.labels[i] == g.labels[j] ? Behaviour::G : Behaviour::R;
    case SchemeKind::Tag::Synthetic:
      if (g.labels[i] == g.labels[j]) return Behaviour::G;
      return kind.g.at(g.labels[i], g.labels[j]);
  }
  return Behaviour::G;
}

VertexMask component_of(const std::vector<VertexMask>& adj, VertexMask within, int seed) {
  VertexMask comp = bit(seed), frontier = bit(seed);
  while (frontier) {
    VertexMask next = 0;
    for (VertexMask f = frontier; f; f &= f - 1) next |= adj[lowest(f)];
    frontier = next & within & ~comp;
    comp |= frontier;
  }
  return comp;
}

void validate_input(const SchemeKind& kind, const Cluster& g, EdgeMask h) {
  if (kind.needs_labels() && !g.has_labels())
    throw Error(Errc::MissingLabels, kind.name() + " needs a labelled cluster");
  if (kind.tag == SchemeKind::Tag::Synthetic && g.has_labels()) {
    for (int l : g.labels)
      if (l >= kind.g.size())
        throw Error(Errc::PreconditionViolated, "behaviour vector does not cover the labels");
  }
  if (h & ~g.all_edges()) throw Error(Errc::PreconditionViolated, "subgraph uses foreign edges");
  if (!mask_connected(g, h)) throw Error(Errc::Disconnected, "subgraph is not connected");
}

Exploration explore_static(const Cluster& g, EdgeMask h) {
  const std::vector<int> d = root_distances(g, h);
  const auto adj = subgraph_adjacency(g, h);
  Exploration ex;
  ex.tree.parent.assign(g.n, -1);
  int max_d = 0;
  for (int v = 0; v < g.n; ++v) max_d = std::max(max_d, d[v]);
  std::vector<VertexMask> level(max_d + 1, 0);
  for (int v = 0; v < g.n; ++v) level[d[v]] |= bit(v);

  EdgeMask hk = h;
  VertexMask t = 1;
  for (int k = 0; k < max_d; ++k) {
    TraceStep st;
    st.T = t;
    st.U = all_vertices(g.n) & ~t;
    st.H_before = hk;
    const auto adjk = subgraph_adjacency(g, hk);
    for (VertexMask r = t; r; r &= r - 1) {
      int v = lowest(r);
      st.P |= adjk[v] & st.U;
      if (adjk[v] & st.U) st.B |= bit(v);
    }
    st.S = level[k + 1];
    for (VertexMask r = st.S; r; r &= r - 1) {
      int i = lowest(r);
      VertexMask up = adj[i] & level[k];
      int p = lowest(up);
      ex.tree.parent[i] = p;
      st.parent_edges.emplace_back(i, p);
      for (VertexMask u = up & ~bit(p); u; u &= u - 1) st.removed |= edge_bit(g, i, lowest(u));
      for (VertexMask c = adj[i] & st.S; c; c &= c - 1)
        st.removed |= edge_bit(g, i, lowest(c));
    }
    hk &= ~st.removed;
    st.H_after = hk;
    t |= st.S;
    ex.trace.steps.push_back(std::move(st));
  }
  ex.tree.edge_mask = hk;
  return ex;
}

}  // namespace

Exploration explore(const SchemeKind& kind, const Cluster& g, EdgeMask h) {
  validate_input(kind, g, h);
  if (kind.tag == SchemeKind::Tag::PenroseStatic) return explore_static(g, h);

  Exploration ex;
  ex.tree.parent.assign(g.n, -1);
  const VertexMask all = all_vertices(g.n);
  EdgeMask hk = h;
  VertexMask t = 1;
  while (t != all) {
    TraceStep st;
    st.T = t;
    st.U = all & ~t;
    st.H_before = hk;
    const auto adj = subgraph_adjacency(g, hk);
    for (VertexMask r = t; r; r &= r - 1) {
      int v = lowest(r);
      st.P |= adj[v] & st.U;
      if (adj[v] & st.U) st.B |= bit(v);
    }
    for (VertexMask rest = st.U; rest;) {
      const VertexMask comp = component_of(adj, st.U, lowest(rest));
      rest &= ~comp;
      const VertexMask pc = st.P & comp;
      VertexMask r_vertices = 0;
      for (VertexMask r = pc; r; r &= r - 1) {
        int i = lowest(r);
        for (VertexMask b = adj[i] & st.B; b; b &= b - 1)
          if (edge_type(kind, g, i, lowest(b)) == Behaviour::R) r_vertices |= bit(i);
      }
      const bool r_comp = r_vertices != 0;
      const VertexMask sc = r_comp ? r_vertices : pc;
      // ignored vertices lose all their edges to the boundary
      for (VertexMask r = pc & ~sc; r; r &= r - 1) {
        int i = lowest(r);
        for (VertexMask b = adj[i] & st.B; b; b &= b - 1) st.removed |= edge_bit(g, i, lowest(b));
      }
      for (VertexMask r = sc; r; r &= r - 1) {
        int i = lowest(r);
        VertexMask cand = adj[i] & st.B;
        if (r_comp) {
          VertexMask r_cand = 0;
          for (VertexMask b = cand; b; b &= b - 1)
            if (edge_type(kind, g, i, lowest(b)) == Behaviour::R) r_cand |= bit(lowest(b));
          cand = r_cand;
        }
        const int p = lowest(cand);
        ex.tree.parent[i] = p;
        st.parent_edges.emplace_back(i, p);
        for (VertexMask b = (adj[i] & st.B) & ~bit(p); b; b &= b - 1)
          st.removed |= edge_bit(g, i, lowest(b));
        for (VertexMask c = adj[i] & sc; c; c &= c - 1) st.removed |= edge_bit(g, i, lowest(c));
      }
      st.S |= sc;
      st.I |= pc & ~sc;
    }
    hk &= ~st.removed;
    st.H_after = hk;
    t |= st.S;
    ex.trace.steps.push_back(std::move(st));
  }
  ex.tree.edge_mask = hk;
  return ex;
}

RootedTree explore_tree(const SchemeKind& kind, const Cluster& g, EdgeMask h) {
  return explore(kind, g, h).tree;
}

bool check_trace_invariants(const Cluster& g, EdgeMask h, const Exploration& ex,
                            std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto restrict_to = [&](EdgeMask m, VertexMask vs) {
    EdgeMask out = 0;
    for (EdgeMask r = m; r; r &= r - 1) {
      auto [i, j] = g.edges[lowest(r)];
      if ((vs >> i & 1) && (vs >> j & 1)) out |= EdgeMask{1} << lowest(r);
    }
    return out;
  };
  const auto& steps = ex.trace.steps;
  std::vector<EdgeMask> hs;  // H_0 .. H_final
  for (const auto& st : steps) hs.push_back(st.H_before);
  hs.push_back(ex.tree.edge_mask);
  if (!steps.empty() && steps.front().H_before != h) return fail("H_0 differs from input");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& st = steps[k];
    if (st.H_after & ~st.H_before) return fail("H_{k+1} not below H_k");
    if (hs[k + 1] != st.H_after) return fail("trace not chained");
    if (!mask_connected(g, st.H_before)) return fail("H_k not spanning-connected");
    const EdgeMask in_t = restrict_to(st.H_before, st.T);
    if (popcount(in_t) != popcount(st.T) - 1) return fail("H_k on T_k is not a tree");
    if (restrict_to(st.H_after, st.T) != in_t) return fail("H_{k+1} changed inside T_k");
    if (restrict_to(st.H_before, st.U) != restrict_to(h, st.U))
      return fail("H_k differs from H on U_k");
    if (k + 1 < steps.size() && (steps[k + 1].B & ~st.S)) return fail("B_{k+1} not in S_k");
    if (!st.S) return fail("empty selection");
    for (std::size_t l = k + 1; l < hs.size(); ++l) {
      const auto d = root_distances(g, hs[l]);
      for (VertexMask r = st.S; r; r &= r - 1)
        if (d[lowest(r)] != static_cast<int>(k) + 1) return fail("root distance of S_k moved");
    }
  }
  if (!mask_connected(g, ex.tree.edge_mask) || popcount(ex.tree.edge_mask) != g.n - 1)
    return fail("final subgraph is not a spanning tree");
  return true;
}

EdgePartition edge_partition(const SchemeKind& kind, const Cluster& g, const RootedTree& t) {
  if (t.size() != g.n || t.parent[0] != -1) throw Error(Errc::NotSpanningTree, "size mismatch");
  EdgeMask tm = 0;
  for (int v = 1; v < g.n; ++v) {
    if (t.parent[v] < 0 || g.edge_index(v, t.parent[v]) < 0)
      throw Error(Errc::NotSpanningTree, "parent edge missing from the cluster");
    tm |= edge_bit(g, v, t.parent[v]);
  }
  if (popcount(tm) != g.n - 1 || !mask_connected(g, tm))
    throw Error(Errc::NotSpanningTree, "parent map is not a spanning tree");
  if (kind.needs_labels() && !g.has_labels())
    throw Error(Errc::MissingLabels, kind.name() + " needs a labelled cluster");

  const std::vector<int> depth = tree_depths(t);
  const bool pen =
      kind.tag == SchemeKind::Tag::PenroseStatic || kind.tag == SchemeKind::Tag::Greedy;

  // classes: keyed by the G/R string of the root path
  std::vector<int> cls(g.n, 0);
  std::vector<Behaviour> cls_s{Behaviour::G};
  std::vector<Behaviour> s(g.n, Behaviour::G);
  std::vector<std::vector<int>> anc;  // anc[v][k] = ancestor of v at depth k
  if (!pen) {
    std::map<std::pair<int, Behaviour>, int> ids;
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return depth[a] < depth[b]; });
    anc.assign(g.n, {});
    anc[0] = {0};
    for (int v : order) {
      if (v == 0) continue;
      const int p = t.parent[v];
      s[v] = edge_type(kind, g, v, p);
      auto [it, fresh] = ids.emplace(std::make_pair(cls[p], s[v]), static_cast<int>(cls_s.size()));
      if (fresh) cls_s.push_back(s[v]);
      cls[v] = it->second;
      anc[v] = anc[p];
      anc[v].push_back(v);
    }
  }

  EdgePartition out;
  for (int e = 0; e < g.num_edges(); ++e) {
    const EdgeMask eb = EdgeMask{1} << e;
    if (tm & eb) continue;
    auto [a, b] = g.edges[e];
    const int j = depth[a] <= depth[b] ? a : b;
    const int i = j == a ? b : a;
    const int k = depth[j], l = depth[i];
    bool adm = false;
    const char* name = nullptr;
    if (pen) {
      if (l == k) adm = true, name = "sameLevel";
      else if (l == k + 1 && j > t.parent[i]) adm = true, name = "largerUncle";
      else if (l == k + 1 && j < t.parent[i]) name = "smallerUncle";
      else if (l >= k + 2) name = "skipsLevel";
    } else if (cls[j] == cls[i]) {
      adm = true, name = "equalClass";
    } else if (cls[anc[i][k]] != cls[j]) {
      name = "notClassPath";
    } else {
      const Behaviour te = edge_type(kind, g, i, j);
      if (k <= l - 2) {
        const Behaviour sc = cls_s[cls[anc[i][k + 1]]];
        if (te == Behaviour::R) name = "classAncestorDifferent";
        else if (sc == Behaviour::R) adm = true, name = "classAncestor";
        else name = "classAncestorSame";
      } else if (k == l - 1) {
        const int p = t.parent[i];
        if (s[i] == Behaviour::R) {
          if (te == Behaviour::G) adm = true, name = "sameUncleDifferent";
          else if (j > p) adm = true, name = "differentUncleDifferent";
          else if (j < p) name = "smallUncleDifferent";
        } else {
          if (te == Behaviour::R) name = "differentUncleSame";
          else if (j > p) adm = true, name = "uncleSame";
          else if (j < p) name = "smallUncleSame";
        }
      }
    }
    if (!name)
      throw Error(Errc::UnclassifiedEdge,
                  "edge (" + std::to_string(a) + "," + std::to_string(b) + ") matched no case");
    (adm ? out.admissible : out.conflicting) |= eb;
    out.cases.emplace_back(e, name);
  }
  return out;
}

EdgeMask scheme_map(const SchemeKind& kind, const Cluster& g, const RootedTree& t) {
  return t.edge_mask | edge_partition(kind, g, t).admissible;
}

SchemeReport verify_partition_scheme(const SchemeKind& kind, const Cluster& g,
                                     bool check_invariants) {
  SchemeReport rep;
  auto note = [&](bool& flag, const std::string& msg) {
    if (flag && rep.failure.empty()) rep.failure = msg;
    flag = false;
  };
  std::vector<EdgeMask> subs;
  for_each_connected_spanning_subgraph(g, [&](EdgeMask m) { subs.push_back(m); });
  rep.subgraphs = static_cast<std::int64_t>(subs.size());
  const auto trees = enumerate_spanning_trees(g);
  rep.trees = static_cast<std::int64_t>(trees.size());

  std::unordered_map<EdgeMask, int> owner;
  owner.reserve(subs.size() * 2);
  for (int ti = 0; ti < static_cast<int>(trees.size()); ++ti) {
    const RootedTree& t = trees[ti];
    const EdgePartition part = edge_partition(kind, g, t);
    if (part.admissible == 0) ++rep.singletons;
    for (EdgeMask a = part.admissible;; a = (a - 1) & part.admissible) {
      const EdgeMask h = t.edge_mask | a;
      ++rep.interval_total;
      if (!owner.emplace(h, ti).second) note(rep.disjoint, "intervals overlap");
      if (a == 0) break;
    }
    for (EdgeMask r = part.admissible | part.conflicting; r; r &= r - 1) {
      const EdgeMask e = EdgeMask{1} << lowest(r);
      const bool same = explore_tree(kind, g, t.edge_mask | e) == t;
      if (same != static_cast<bool>(part.admissible & e))
        note(rep.compatibility, "single-edge addition disagrees with the edge partition");
    }
  }
  if (owner.size() != subs.size()) note(rep.covers, "intervals do not cover exactly");
  for (EdgeMask h : subs) {
    auto it = owner.find(h);
    if (it == owner.end()) {
      note(rep.covers, "connected subgraph outside every interval");
      continue;
    }
    const Exploration ex = explore(kind, g, h);
    if (!(ex.tree == trees[it->second])) note(rep.explore_matches, "explore disagrees with interval");
    if (check_invariants) {
      std::string why;
      if (!check_trace_invariants(g, h, ex, &why)) note(rep.invariants, "trace: " + why);
    }
  }
  return rep;
}

std::vector<RootedTree> singleton_trees(const SchemeKind& kind, const Cluster& g) {
  std::vector<RootedTree> out;
  for (auto& t : enumerate_spanning_trees(g))
    if (edge_partition(kind, g, t).admissible == 0) out.push_back(std::move(t));
  return out;
}

std::int64_t penrose_identity_check(const SchemeKind& kind, const Cluster& g) {
  const std::int64_t sign = (g.n - 1) % 2 == 0 ? 1 : -1;
  const std::int64_t count = static_cast<std::int64_t>(singleton_trees(kind, g).size());
  return ursell_count(g) - sign * count;
}

PropertyReport singleton_properties_check(const SchemeKind& kind, const Cluster& g) {
  const bool greedy =
      kind.tag == SchemeKind::Tag::Greedy || kind.tag == SchemeKind::Tag::PenroseStatic;
  if (!greedy && kind.tag != SchemeKind::Tag::Returning)
    throw Error(Errc::WrongKind, "properties are stated for greedy and returning only");
  if (!g.has_labels()) throw Error(Errc::MissingLabels, "properties need labels");

  PropertyReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.failures.push_back(msg);
  };
  // labels are compatible iff the vertices are not adjacent in the cluster
  auto pairwise_compatible = [&](const std::vector<int>& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (g.adj[vs[a]] & bit(vs[b])) return false;
    return true;
  };
  auto distinct_labels = [&](const std::vector<int>& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (g.labels[vs[a]] == g.labels[vs[b]]) return false;
    return true;
  };

  for (const RootedTree& t : singleton_trees(kind, g)) {
    ++rep.trees_checked;
    const auto depth = tree_depths(t);
    const auto children = tree_children(t);
    if (greedy) {
      int max_d = 0;
      for (int d : depth) max_d = std::max(max_d, d);
      for (int k = 0; k <= max_d; ++k) {
        std::vector<int> lvl;
        for (int v = 0; v < g.n; ++v)
          if (depth[v] == k) lvl.push_back(v);
        if (!pairwise_compatible(lvl)) fail("level support not compatible");
      }
      for (int v = 0; v < g.n; ++v) {
        if (!pairwise_compatible(children[v])) fail("children support not compatible");
        if (!distinct_labels(children[v])) fail("children count exceeds support size");
      }
      continue;
    }
    // returning: classes from the S/D string of root paths
    std::vector<std::string> path(g.n);
    for (int v = 0; v < g.n; ++v) {
      std::string sd;
      for (int w = v; w != 0; w = t.parent[w])
        sd.push_back(g.labels[w] == g.labels[t.parent[w]] ? 'S' : 'D');
      path[v] = std::string(sd.rbegin(), sd.rend());
    }
    std::map<std::string, std::vector<int>> classes;
    for (int v = 0; v < g.n; ++v) classes[path[v]].push_back(v);
    for (const auto& [key, members] : classes)
      if (!pairwise_compatible(members)) fail("class support not compatible: " + key);
    for (int v = 0; v < g.n; ++v) {
      if (!distinct_labels(children[v])) fail("children count exceeds support size");
      std::vector<int> other;
      for (int c : children[v])
        if (g.labels[c] != g.labels[v]) other.push_back(c);
      if (!pairwise_compatible(other)) fail("children minus own label not compatible");
    }
    for (int v = 1; v < g.n; ++v) {
      const bool d_vertex = g.labels[v] != g.labels[t.parent[v]];
      std::vector<int> walk;
      for (int w = v; w >= 0; w = t.parent[w]) walk.push_back(g.labels[w]);
      if (d_vertex)
        for (std::size_t a = 1; a < walk.size(); ++a)
          if (walk[a] == g.labels[v]) fail("D vertex label returns on its root path");
      std::vector<int> lazy;
      for (int l : walk)
        if (lazy.empty() || lazy.back() != l) lazy.push_back(l);
      for (std::size_t a = 0; a < lazy.size(); ++a)
        for (std::size_t b = a + 1; b < lazy.size(); ++b)
          if (lazy[a] == lazy[b]) fail("root path is not a lazy self-avoiding walk");
    }
  }
  return rep;
}

}  // namespace pscub
