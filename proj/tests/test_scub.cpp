#include <cmath>

#include "doctest.h"
#include "pscub/random.hpp"
#include "pscub/scub.hpp"
#include "pscub/tree_operator.hpp"

using namespace pscub;

namespace {

PolymerSystem triangle() { return PolymerSystem::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }

bool leq(const FugacityVector& a, const FugacityVector& b, double tol = 1e-12) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i] * (1 + tol) + tol) return false;
  return true;
}

bool triangle_free(const PolymerSystem& sys) {
  for (int a = 0; a < sys.size(); ++a)
    for (int b : sys.neighbours(a))
      for (int c : sys.neighbours(b))
        if (c != a && sys.incompatible(a, c)) return false;
  return true;
}

}  // namespace

TEST_CASE("closed forms on the lattice neighbourhoods") {
  const auto hex = hex_shape(), line = hex_line_shape();
  for (double mu : {0.0, 0.3, 1.0, 2.5}) {
    const double p = 1 + mu;
    CHECK(homogeneous_leop(LeopKind::dobrushin(), hex, mu) == doctest::Approx(std::pow(p, 4)));
    CHECK(homogeneous_leop(LeopKind::fp(), hex, mu) == doctest::Approx(mu + p * p * p));
    CHECK(homogeneous_leop(LeopKind::reduced(), hex, mu) == doctest::Approx(p * p * p));
    CHECK(homogeneous_leop(LeopKind::returning(), hex, mu) == doctest::Approx(p * p * p));
    CHECK(homogeneous_leop(LeopKind::kp(), hex, mu) == doctest::Approx(std::exp(4 * mu)));
    CHECK(homogeneous_leop(LeopKind::dobrushin(), line, mu) == doctest::Approx(std::pow(p, 5)));
    CHECK(homogeneous_leop(LeopKind::fp(), line, mu) ==
          doctest::Approx(mu + (1 + 2 * mu) * (1 + 2 * mu)));
    CHECK(homogeneous_leop(LeopKind::reduced(), line, mu) == doctest::Approx(std::pow(p, 4)));
    CHECK(homogeneous_leop(LeopKind::returning(), line, mu) ==
          doctest::Approx(p * p * (1 + 2 * mu)));
  }
}

TEST_CASE("optimal fugacities") {
  const auto hex = hex_shape(), line = hex_line_shape();
  CHECK(optimal_rho(LeopKind::dobrushin(), hex).rho == doctest::Approx(27.0 / 256).epsilon(1e-9));
  CHECK(optimal_rho(LeopKind::fp(), hex).rho == doctest::Approx(4.0 / 31).epsilon(1e-9));
  CHECK(optimal_rho(LeopKind::reduced(), hex).rho == doctest::Approx(4.0 / 27).epsilon(1e-9));
  CHECK(optimal_rho(LeopKind::dobrushin(), line).rho == doctest::Approx(0.08192).epsilon(1e-9));
  CHECK(optimal_rho(LeopKind::fp(), line).rho == doctest::Approx(1.0 / 9).epsilon(1e-9));
  OptimalRho ret = optimal_rho(LeopKind::returning(), line);
  CHECK(ret.rho == doctest::Approx(0.1134).epsilon(1e-3));
  CHECK(ret.rho == doctest::Approx(ret.mu / homogeneous_leop(LeopKind::returning(), line, ret.mu)));
  for (auto k : {LeopKind::dobrushin(), LeopKind::fp(), LeopKind::returning()}) {
    const double r = optimal_rho(k, line).rho;
    CHECK(scub_holds(k, line, r * 0.999).holds());
    CHECK_FALSE(scub_holds(k, line, r * 1.001).holds());
  }
}

TEST_CASE("optimal rho on a finite system") {
  auto sys = PolymerSystem::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  for (auto k : {LeopKind::dobrushin(), LeopKind::fp(), LeopKind::returning()}) {
    OptimalRho h = optimal_rho(k, sys, true);
    OptimalRho b = optimal_rho(k, sys, false);
    // endpoints may carry a smaller μ, so a uniform witness is only a lower bound
    // the bisection cannot resolve a tangent optimum beyond the iteration cap
    CHECK(b.rho >= h.rho * (1 - 1e-5));
    CHECK(scub_holds(k, sys, FugacityVector(4, h.rho * 0.999)).holds());
    CHECK(scub_holds(k, sys, FugacityVector(4, b.rho * 0.999)).holds());
    CHECK_FALSE(scub_holds(k, sys, FugacityVector(4, b.rho * 1.001)).holds());
  }
}

TEST_CASE("dominance chain on random systems") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    PolymerSystem sys = random_connected_system(rng, 6, 0.45);
    FugacityVector mu = random_vector(rng, 6, 0.0, 2.0);
    auto kp = leop_all(LeopKind::kp(), sys, mu), dob = leop_all(LeopKind::dobrushin(), sys, mu);
    auto fp = leop_all(LeopKind::fp(), sys, mu), red = leop_all(LeopKind::reduced(), sys, mu);
    auto ret = leop_all(LeopKind::returning(), sys, mu);
    auto mix = leop_all(LeopKind::mixing_best(), sys, mu);
    CHECK(leq(fp, dob));
    CHECK(leq(dob, kp));
    CHECK(leq(ret, red));
    CHECK(leq(red, dob));
    CHECK(leq(mix, fp));
    CHECK(leq(mix, ret));
    if (triangle_free(sys)) CHECK(leq(red, ret));
    std::vector<Behaviour> all_g(6, Behaviour::G), all_r(6, Behaviour::R);
    CHECK(leop_all(LeopKind::mixing(all_g), sys, mu) == fp);
    CHECK(leop_all(LeopKind::mixing(all_r), sys, mu) == ret);
  }
}

TEST_CASE("reduced and returning differ on a triangle") {
  FugacityVector mu(3, 1.0);
  CHECK(leop(LeopKind::reduced(), triangle(), 0, mu) == doctest::Approx(4.0));
  CHECK(leop(LeopKind::returning(), triangle(), 0, mu) == doctest::Approx(4.0));
  auto k4 = PolymerSystem::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  FugacityVector m4(4, 1.0);
  CHECK(leop(LeopKind::reduced(), k4, 0, m4) == doctest::Approx(8.0));
  CHECK(leop(LeopKind::returning(), k4, 0, m4) == doctest::Approx(6.0));
}

TEST_CASE("multiplexed operator reduces to the vector operator") {
  Rng rng(32);
  for (int t = 0; t < 50; ++t) {
    PolymerSystem sys = random_connected_system(rng, 5, 0.5);
    FugacityVector mu = random_vector(rng, 5, 0.0, 1.5);
    FugacityVector rho = random_vector(rng, 5, 0.0, 0.3);
    std::vector<LeopKind> kinds{LeopKind::reduced(), LeopKind::returning(),
                                LeopKind::synthetic(random_pair_behaviour(rng, sys))};
    for (const auto& k : kinds) {
      FugacityVector sup =
          multiplexed_operator(k, sys, rho, PairVector::multiplex(sys, mu)).sup_over_escapes();
      for (int g = 0; g < 5; ++g) {
        if (sys.neighbours(g).empty()) continue;
        CHECK(sup[g] == doctest::Approx(rho[g] * leop(k, sys, g, mu)).epsilon(1e-12));
      }
      // u = 0 gives ρ times the empty-neighbourhood value
      PairVector zero(sys);
      auto z = multiplexed_operator(k, sys, rho, zero);
      for (auto [g, e] : z.pairs()) CHECK(z.at(g, e) == doctest::Approx(rho[g]));
    }
  }
  CHECK_THROWS_AS(multiplexed_operator(LeopKind::fp(), triangle(), FugacityVector(3, 0.1),
                                       PairVector(triangle())),
                  Error);
}

TEST_CASE("pair vectors") {
  auto sys = triangle();
  PairVector u = PairVector::from_map(sys, {{{0, 1}, 0.5}, {{0, 2}, 0.25}});
  CHECK(u.at(0, 1) == 0.5);
  CHECK(u.at(1, 0) == 0.0);
  CHECK(u.sup_over_escapes()[0] == 0.5);
  CHECK(u.pairs().size() == 6);
  CHECK_FALSE(u.valid(0, 0));
  try {
    PairVector::from_map(PolymerSystem::from_edges(3, {{0, 1}}), {{{0, 2}, 1.0}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownPair);
  }
}

TEST_CASE("synthetic sup must range over every escape") {
  // a -> b returning, b -> a greedy. Restricting the sup to incoming pairs
  // leaves a empty and certifies ρ_a > 1, where already Ξ_{a}(-ρ) < 0.
  auto sys = PolymerSystem::from_edges(2, {{0, 1}});
  PairBehaviour g(2, Behaviour::G);
  g.set(0, 1, Behaviour::R);
  LeopKind sound = LeopKind::synthetic(g);
  LeopKind bad = sound;
  bad.incoming_sup = true;
  FugacityVector mu{0.3, 0.3};
  CHECK(leop(bad, sys, 0, mu) == 0.0);
  CHECK(leop(sound, sys, 0, mu) == doctest::Approx(1.3));
  FugacityVector rho{1.5, 0.1};
  CHECK(scub_holds(bad, sys, rho).holds());
  CHECK(partition_function(sys, {0}, negated(rho)) < 0.0);
  CHECK_FALSE(scub_holds(sound, sys, rho).holds());
}

TEST_CASE("fixpoint iteration") {
  auto sys = triangle();
  FugacityVector rho(3, 0.1);
  FixpointReport r = scub_holds(LeopKind::fp(), sys, rho);
  REQUIRE(r.holds());
  CHECK(r.monotone);
  CHECK_FALSE(r.strict_required);
  // from a larger witness the iteration decreases to the same point
  FugacityVector smaller(3, 0.08);
  FixpointReport down = scub_iterate_from(LeopKind::fp(), sys, smaller, r.limit);
  CHECK(down.converged);
  CHECK(down.monotone);
  FixpointReport up = scub_holds(LeopKind::fp(), sys, smaller);
  for (int i = 0; i < 3; ++i) CHECK(down.limit[i] == doctest::Approx(up.limit[i]).epsilon(1e-9));
  FixpointReport blow = scub_holds(LeopKind::dobrushin(), sys, FugacityVector(3, 0.5));
  CHECK_FALSE(blow.converged);
  CHECK_FALSE(blow.holds());
  CHECK(scub_holds(LeopKind::returning(), sys, rho).strict_required);
  CHECK_THROWS_AS(scub_holds(LeopKind::fp(), sys, FugacityVector(2, 0.1)), Error);
  CHECK_THROWS_AS(scub_holds(LeopKind::fp(), sys, FugacityVector{0.1, -0.1, 0.1}), Error);
}

TEST_CASE("converged fixpoints give positive partition functions for the classical kinds") {
  Rng rng(33);
  for (int t = 0; t < 40; ++t) {
    PolymerSystem sys = random_connected_system(rng, 6);
    FugacityVector rho = random_vector(rng, 6, 0.0, 0.3);
    for (auto k : {LeopKind::kp(), LeopKind::dobrushin(), LeopKind::fp()}) {
      if (!scub_holds(k, sys, rho).holds()) continue;
      CHECK(admissible(sys, rho));
    }
  }
}

TEST_CASE("generic bound") {
  auto sys = PolymerSystem::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  FugacityVector nu(4, 0.2), rho(4, 0.1);
  REQUIRE(admissible(sys, nu));
  FugacityVector b = generic_scub_bound(sys, rho, nu);
  for (int g = 0; g < 4; ++g) {
    CHECK(b[g] == doctest::Approx(0.5));
    CHECK(one_polymer_ratio(sys, full_volume(sys), g, negated(rho)) >= b[g]);
  }
  CHECK(generic_scub_bound(sys, FugacityVector(4, 0.0), FugacityVector(4, 0.0))[0] == 1.0);
  CHECK_THROWS_AS(generic_scub_bound(sys, nu, rho), Error);
  CHECK_THROWS_AS(generic_scub_bound(sys, rho, FugacityVector(4, 0.9)), Error);
}

TEST_CASE("escaping series is bounded by the witness") {
  Rng rng(34);
  for (int t = 0; t < 10; ++t) {
    PolymerSystem sys = random_connected_system(rng, 4, 0.5);
    FugacityVector rho = random_vector(rng, 4, 0.0, 0.1);
    FixpointReport r = scub_holds(LeopKind::returning(), sys, rho);
    if (!r.holds()) continue;
    EscapingSeriesReport e = escaping_series_bound_check(sys, rho, r.limit, 4);
    CHECK(e.ok);
    CHECK(e.max_ratio <= 1 + 1e-9);
    CHECK_THROWS_AS(escaping_series_bound_check(sys, rho, FugacityVector(4, 0.0), 4), Error);
  }
}

TEST_CASE("submultiplicativity") {
  auto sys = PolymerSystem::from_edges(3, {{0, 1}, {1, 2}});
  FugacityVector mu{0.5, 0.5, 0.5};
  CHECK(submultiplicativity_gap(sys, {0}, {1, 2}, mu) == doctest::Approx(1.5 * 2.0 - 2.75));
  CHECK(submultiplicativity_strict(sys, {0}, {1, 2}, mu));
  CHECK(submultiplicativity_gap(sys, {0}, {2}, mu) == doctest::Approx(0.0));
  CHECK_FALSE(submultiplicativity_strict(sys, {0}, {2}, mu));
  CHECK_FALSE(submultiplicativity_strict(sys, {0}, {1, 2}, FugacityVector{0.5, 0.0, 0.5}));
  CHECK_THROWS_AS(submultiplicativity_gap(sys, {0, 1}, {1}, mu), Error);
}

TEST_CASE("mixing and synthetic algebra") {
  Rng rng(35);
  for (int t = 0; t < 20; ++t) {
    PolymerSystem sys = random_connected_system(rng, 4, 0.5);
    FugacityVector mu = random_vector(rng, 4, 0.05, 1.5);
    MixingReport rep = mixing_reduction_check(sys, mu, 16, 7);
    CHECK_MESSAGE(rep.ok(), (rep.failures.empty() ? "" : rep.failures.front()));
    FugacityVector s = synthetic_min_leop(sys, mu), m = mixing_min_leop(sys, mu);
    for (int g = 0; g < 4; ++g) CHECK(s[g] == doctest::Approx(m[g]).epsilon(1e-12));
    CHECK(leq(m, leop_all(LeopKind::mixing_best(), sys, mu)));
    CHECK(leq(leop_all(LeopKind::mixing_best(), sys, mu), m));
  }
}

TEST_CASE("homogeneous tree") {
  CHECK(homogeneous_tree_rho_star(2) == doctest::Approx(0.25));
  CHECK(homogeneous_tree_rho_star(3) == doctest::Approx(4.0 / 27));
  for (int D = 2; D <= 6; ++D) {
    const double rs = homogeneous_tree_rho_star(D);
    CHECK(homogeneous_tree(D, 0.0).alpha == 1.0);
    CHECK(homogeneous_tree(D, rs).alpha == doctest::Approx(double(D - 1) / D).epsilon(1e-6));
    const double r = rs / 2;
    const double a = homogeneous_tree(D, r).alpha;
    CHECK(a == doctest::Approx(1 - r / std::pow(a, D - 1)).epsilon(1e-13));
    const double h = 1e-6;
    const double fd = (homogeneous_tree(D, r + h).alpha - homogeneous_tree(D, r - h).alpha) / (2 * h);
    CHECK(homogeneous_tree_derivative(D, r) == doctest::Approx(fd).epsilon(1e-6));
    // the stable branch agrees with the SCUB fixpoint on the tree neighbourhood
    CHECK(optimal_rho(LeopKind::returning(), tree_shape(D)).rho == doctest::Approx(rs).epsilon(1e-9));
  }
  for (auto [D, rho] : std::vector<std::pair<int, double>>{{1, 0.1}, {3, -0.1}, {3, 0.2}}) {
    try {
      homogeneous_tree(D, rho);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OutOfRange);
    }
  }
}

TEST_CASE("depth one tree operator") {
  auto sys = PolymerSystem::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
  FugacityVector rho{0.1, 0.05, 0.2, 0.1}, mu{0.3, 0.7, 0.2, 0.4};
  FugacityVector dob = depth_one_tree_operator(dobrushin_star_weight(sys), rho, mu, 4);
  FugacityVector fp = depth_one_tree_operator(fp_star_weight(sys), rho, mu, 4);
  for (int g = 0; g < 4; ++g) {
    CHECK(dob[g] == doctest::Approx(rho[g] * leop(LeopKind::dobrushin(), sys, g, mu)));
    CHECK(fp[g] == doctest::Approx(rho[g] * leop(LeopKind::fp(), sys, g, mu)));
  }
  try {
    depth_one_tree_operator(dobrushin_star_weight(sys), rho, mu, 2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TruncationExceeded);
  }
  // k = 1 trees are stars
  auto star = dobrushin_star_weight(sys);
  TreeWeight tw = [&](const std::vector<int>& parent, const std::vector<int>& labels) {
    for (std::size_t v = 1; v < parent.size(); ++v)
      if (parent[v] != 0) return 0.0;
    std::vector<int> leaves(labels.begin() + 1, labels.end());
    std::sort(leaves.begin(), leaves.end());
    return star(labels[0], leaves);
  };
  FugacityVector k1 = depth_k_tree_operator(1, tw, rho, mu, 4);
  for (int g = 0; g < 4; ++g) CHECK(k1[g] == doctest::Approx(dob[g]));
}

TEST_CASE("refined series bound") {
  auto sys = PolymerSystem::from_edges(3, {{0, 1}, {1, 2}});
  FugacityVector rho{0.1, 0.08, 0.12};
  VectorOperator T = [&](const FugacityVector& m) {
    FugacityVector out = leop_all(LeopKind::dobrushin(), sys, m);
    for (int i = 0; i < 3; ++i) out[i] *= rho[i];
    return out;
  };
  FixpointReport w = scub_holds(LeopKind::dobrushin(), sys, rho);
  REQUIRE(w.holds());
  RefinedBoundReport rep = refined_series_bound_check(T, rho, *w.witness_mu);
  CHECK(rep.converged);
  CHECK(rep.ok);
  for (int i = 0; i < 3; ++i) CHECK(rep.Q[i] <= rep.bound[i] * (1 + 1e-9));
}

TEST_CASE("kind parsing") {
  CHECK(parse_leop_kind("mix").tag == LeopKind::Tag::MixingBest);
  CHECK(parse_leop_kind("dob").name() == "dob");
  CHECK(parse_leop_kind("ret").new_shape());
  CHECK_FALSE(parse_leop_kind("fp").new_shape());
  try {
    parse_leop_kind("syn");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
}
