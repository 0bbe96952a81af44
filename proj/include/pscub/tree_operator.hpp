#pragma once

#include <functional>
#include <vector>

#include "pscub/oracle.hpp"
#include "pscub/polymer.hpp"
#include "pscub/scub.hpp"

namespace pscub {

// Weight c_s of the star with root label `root` and leaf labels `leaves`
// (ascending multiset). Must be nonnegative.
using StarWeight = std::function<double(int root, const std::vector<int>& leaves)>;

// [T(μ)]_l = ρ_l Σ_s c_s(l; leaves)/Π mult! · Π μ_leaf over leaf multisets of
// size ≤ max_leaves over labels 0..|ρ|-1. Throws TruncationExceeded if some
// star of size max_leaves+1 has positive weight.
FugacityVector depth_one_tree_operator(const StarWeight& c, const FugacityVector& rho,
                                       const FugacityVector& mu, int max_leaves);

// Leaves pairwise distinct and in Γ*(root).
StarWeight dobrushin_star_weight(const PolymerSystem& sys);
// Leaves pairwise distinct, compatible and in Γ*(root).
StarWeight fp_star_weight(const PolymerSystem& sys);

// Weight of a rooted labelled tree: parent[0] == -1, labels[v] for every vertex.
using TreeWeight =
    std::function<double(const std::vector<int>& parent, const std::vector<int>& labels)>;

// Sum over labelled rooted trees of depth ≤ k with at most max_vertices
// non-root vertices, each shape weighted 1/m!. The root and levels below k
// carry ρ, level k carries μ.
FugacityVector depth_k_tree_operator(int k, const TreeWeight& c, const FugacityVector& rho,
                                     const FugacityVector& mu, int max_vertices);

struct RefinedBoundReport {
  bool converged = false;
  bool ok = false;
  FugacityVector Q;      // R(ρ)/ρ
  FugacityVector bound;  // S(μ)/(1−ρ) with S(μ) = T(μ)/ρ − μ
};

// T must satisfy T ≥ ρ(1+μ); μ must satisfy T(μ) ≤ μ.
RefinedBoundReport refined_series_bound_check(const VectorOperator& T, const FugacityVector& rho,
                                              const FugacityVector& mu);

}  // namespace pscub
