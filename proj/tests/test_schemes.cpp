#include "doctest.h"
#include "pscub/oracle.hpp"
#include "pscub/random.hpp"
#include "pscub/schemes.hpp"

using namespace pscub;

namespace {

Cluster complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, e);
}

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

}  // namespace

TEST_CASE("greedy explores breadth first") {
  Cluster k3 = complete_graph(3);
  RootedTree t = explore_tree(SchemeKind::greedy(), k3, k3.all_edges());
  CHECK(t.parent == std::vector<int>{-1, 0, 0});
  Exploration ex = explore(SchemeKind::greedy(), k3, k3.all_edges());
  REQUIRE(ex.trace.steps.size() == 1);
  CHECK(ex.trace.steps[0].S == 0b110);
  CHECK(check_trace_invariants(k3, k3.all_edges(), ex));
}

TEST_CASE("returning prefers a change of label") {
  // labels a,b,a on a triangle: vertex 2 shares the root label and is ignored at first
  auto sys = PolymerSystem::build({"a", "b"}, {{"a", "b"}});
  Cluster c = induce_cluster(sys, std::vector<std::string>{"a", "b", "a"});
  REQUIRE(c.num_edges() == 3);
  Exploration ex = explore(SchemeKind::returning(), c, c.all_edges());
  CHECK(ex.tree.parent == std::vector<int>{-1, 0, 1});
  CHECK(ex.trace.steps[0].I == 0b100);
  CHECK(explore_tree(SchemeKind::greedy(), c, c.all_edges()).parent == std::vector<int>{-1, 0, 0});
  std::string why;
  CHECK_MESSAGE(check_trace_invariants(c, c.all_edges(), ex, &why), why);
}

TEST_CASE("input validation") {
  Cluster k3 = complete_graph(3);
  try {
    explore(SchemeKind::returning(), k3, k3.all_edges());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingLabels);
  }
  try {
    explore(SchemeKind::greedy(), k3, 0b001);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Disconnected);
  }
  auto sys = PolymerSystem::build({"a", "b"}, {{"a", "b"}});
  Cluster c = induce_cluster(sys, std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(explore(SchemeKind::synthetic(PairBehaviour(1, Behaviour::G)), c, c.all_edges()),
                  Error);
}

TEST_CASE("penrose singleton counts on small graphs") {
  CHECK(singleton_trees(SchemeKind::penrose(), complete_graph(3)).size() == 2);
  CHECK(singleton_trees(SchemeKind::penrose(), complete_graph(4)).size() == 6);
  Cluster c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(singleton_trees(SchemeKind::penrose(), c4).size() == 3);
  CHECK(singleton_trees(SchemeKind::greedy(), c4).size() == 3);
}

TEST_CASE("schemes are partition schemes on random clusters") {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    PolymerSystem sys = random_connected_system(rng, 5);
    Cluster c = random_cluster(rng, sys, 5);
    const std::int64_t u = abs64(ursell_count(c));
    std::vector<SchemeKind> kinds{SchemeKind::greedy(), SchemeKind::returning(),
                                  SchemeKind::synthetic(random_pair_behaviour(rng, sys))};
    for (const auto& k : kinds) {
      SchemeReport rep = verify_partition_scheme(k, c, true);
      CHECK_MESSAGE(rep.ok(), k.name() << ": " << rep.failure);
      CHECK(rep.interval_total == rep.subgraphs);
      CHECK(rep.singletons == u);
      CHECK(penrose_identity_check(k, c) == 0);
    }
    CHECK(static_cast<std::int64_t>(singleton_trees(SchemeKind::penrose(), c).size()) == u);
  }
}

TEST_CASE("synthetic with constant behaviour reduces to greedy or returning") {
  Rng rng(22);
  for (int t = 0; t < 60; ++t) {
    PolymerSystem sys = random_connected_system(rng, 5);
    Cluster c = random_cluster(rng, sys, 5);
    auto all_g = SchemeKind::synthetic(PairBehaviour(sys.size(), Behaviour::G));
    auto all_r = SchemeKind::synthetic(PairBehaviour(sys.size(), Behaviour::R));
    for_each_connected_spanning_subgraph(c, [&](EdgeMask h) {
      CHECK(explore_tree(all_g, c, h) == explore_tree(SchemeKind::greedy(), c, h));
      CHECK(explore_tree(all_r, c, h) == explore_tree(SchemeKind::returning(), c, h));
    });
  }
}

TEST_CASE("scheme map is the top of each interval") {
  Rng rng(23);
  PolymerSystem sys = random_connected_system(rng, 4);
  Cluster c = random_cluster(rng, sys, 5);
  for (const auto& t : enumerate_spanning_trees(c)) {
    EdgePartition part = edge_partition(SchemeKind::returning(), c, t);
    CHECK((part.admissible & part.conflicting) == 0);
    CHECK((part.admissible & t.edge_mask) == 0);
    CHECK((part.admissible | part.conflicting | t.edge_mask) == c.all_edges());
    EdgeMask top = scheme_map(SchemeKind::returning(), c, t);
    CHECK(explore_tree(SchemeKind::returning(), c, top) == t);
  }
}

TEST_CASE("singleton tree properties") {
  Rng rng(24);
  for (int t = 0; t < 40; ++t) {
    PolymerSystem sys = random_connected_system(rng, 5);
    Cluster c = random_cluster(rng, sys, 6);
    PropertyReport g = singleton_properties_check(SchemeKind::greedy(), c);
    PropertyReport r = singleton_properties_check(SchemeKind::returning(), c);
    CHECK(g.ok);
    CHECK(r.ok);
    CHECK(g.trees_checked == r.trees_checked);
  }
}
