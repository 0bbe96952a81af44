#include "pscub/random.hpp"

#include <algorithm>

namespace pscub {

PolymerSystem random_connected_system(Rng& rng, int n, double p) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.emplace_back(pick(rng), v);
  }
  std::bernoulli_distribution extra(p);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (extra(rng)) edges.emplace_back(a, b);
  // shuffle the names so that index order is not the tree order
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& [a, b] : edges) a = perm[a], b = perm[b];
  return PolymerSystem::from_edges(n, edges, true);
}

Cluster random_cluster(Rng& rng, const PolymerSystem& sys, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> label(0, sys.size() - 1);
  for (;;) {
    std::vector<int> xi(len(rng));
    for (int& x : xi) x = label(rng);
    Cluster c = induce_cluster(sys, xi);
    if (c.connected) return c;
  }
}

PairBehaviour random_pair_behaviour(Rng& rng, const PolymerSystem& sys) {
  PairBehaviour g(sys.size(), Behaviour::G);
  std::bernoulli_distribution coin(0.5);
  for (int a = 0; a < sys.size(); ++a)
    for (int b : sys.neighbours(a)) g.set(a, b, coin(rng) ? Behaviour::R : Behaviour::G);
  return g;
}

FugacityVector random_vector(Rng& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  FugacityVector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace pscub
