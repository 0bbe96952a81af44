#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pscub/oracle.hpp"
#include "pscub/polymer.hpp"
#include "pscub/schemes.hpp"

namespace pscub {

struct LeopKind {
  enum class Tag { KP, Dobrushin, FP, Reduced, Returning, Mixing, MixingBest, Synthetic };
  Tag tag = Tag::FP;
  std::vector<Behaviour> mix;  // Mixing: one behaviour per polymer
  PairBehaviour syn;           // Synthetic: one behaviour per escape pair
  // Synthetic only: restrict the second branch's sup to incoming R pairs.
  // Kept to reproduce the unsound variant in tests; never the default.
  bool incoming_sup = false;

  static LeopKind kp() { return {Tag::KP, {}, {}, false}; }
  static LeopKind dobrushin() { return {Tag::Dobrushin, {}, {}, false}; }
  static LeopKind fp() { return {Tag::FP, {}, {}, false}; }
  static LeopKind reduced() { return {Tag::Reduced, {}, {}, false}; }
  static LeopKind returning() { return {Tag::Returning, {}, {}, false}; }
  static LeopKind mixing(std::vector<Behaviour> g) { return {Tag::Mixing, std::move(g), {}, false}; }
  // Pointwise min(FP, Returning): the optimal mixing, since each coordinate
  // only depends on its own behaviour.
  static LeopKind mixing_best() { return {Tag::MixingBest, {}, {}, false}; }
  static LeopKind synthetic(PairBehaviour g) { return {Tag::Synthetic, {}, std::move(g), false}; }

  std::string name() const;
  // Reduced, Returning, Mixing and Synthetic need the strict inequality.
  bool new_shape() const;
};

// Parses kp|dob|fp|red|ret|mix.
LeopKind parse_leop_kind(const std::string& s);

double leop(const LeopKind& kind, const PolymerSystem& sys, int g, const FugacityVector& mu);
FugacityVector leop_all(const LeopKind& kind, const PolymerSystem& sys, const FugacityVector& mu);

struct FixpointOptions {
  double divergence = 1e9;
  int max_iter = 10000;
  double rel_tol = 1e-12;
  double delta = 1e-7;
};

struct FixpointReport {
  bool converged = false;
  int iterations = 0;
  FugacityVector limit;  // R(ρ), or the last iterate when diverged
  std::optional<FugacityVector> witness_mu;
  bool monotone = true;          // iterates ordered as expected
  bool nonstrict = false;        // ρ·φ(μ*) ≤ μ*
  bool strict = false;           // ρ·φ(μ*(1+δ)+δ) < μ*(1+δ)+δ
  bool strict_required = false;  // new-shape kinds
  bool holds() const { return converged && nonstrict && (!strict_required || strict); }
};

using VectorOperator = std::function<FugacityVector(const FugacityVector&)>;

// μ ← T(μ) from `start`. Tracks whether the iterates are nondecreasing
// (`increasing`) or nonincreasing.
FixpointReport iterate_fixpoint(const VectorOperator& T, const FugacityVector& start,
                                bool increasing, const FixpointOptions& opt = {});

FixpointReport scub_holds(const LeopKind& kind, const PolymerSystem& sys, const FugacityVector& rho,
                          const FixpointOptions& opt = {});
// Iteration started at a witness; nonincreasing when ρφ(μ) ≤ μ.
FixpointReport scub_iterate_from(const LeopKind& kind, const PolymerSystem& sys,
                                 const FugacityVector& rho, const FugacityVector& start,
                                 const FixpointOptions& opt = {});

// Neighbourhood of an interior vertex of a vertex-transitive lattice.
struct HomogeneousShape {
  std::string name;
  PolymerSystem local;
  int center = 0;
};

HomogeneousShape hex_shape();        // star K_{1,3}
HomogeneousShape hex_line_shape();   // two triangles glued at the centre
HomogeneousShape tree_shape(int D);  // star K_{1,D}

// φ(μ·1) at the centre.
double homogeneous_leop(const LeopKind& kind, const HomogeneousShape& shape, double mu);
// Scalar iteration μ ← ρφ(μ) at the centre.
FixpointReport scub_holds(const LeopKind& kind, const HomogeneousShape& shape, double rho,
                          const FixpointOptions& opt = {});

struct OptimalRho {
  double rho = 0.0;
  double mu = 0.0;  // maximiser; +inf if the sup is only approached
  bool grid_fallback = false;
};

OptimalRho optimal_rho(const LeopKind& kind, const HomogeneousShape& shape);
// homogeneous: max_μ min_γ μ/φ_γ(μ·1). Otherwise the largest t with
// scub_holds(t·1) by bisection.
OptimalRho optimal_rho(const LeopKind& kind, const PolymerSystem& sys, bool homogeneous);

// Values on escape pairs (γ,ε), γ ≈ ε, γ ≠ ε. Dense n×n with a validity mask.
class PairVector {
 public:
  PairVector() = default;
  explicit PairVector(const PolymerSystem& sys, double fill = 0.0);
  static PairVector from_map(const PolymerSystem& sys,
                             const std::map<std::pair<int, int>, double>& values);
  // u(γ,ε) = μ_γ.
  static PairVector multiplex(const PolymerSystem& sys, const FugacityVector& mu);

  int size() const { return n_; }
  bool valid(int g, int e) const { return g >= 0 && e >= 0 && g < n_ && e < n_ && ok_[g * n_ + e]; }
  double at(int g, int e) const;
  void set(int g, int e, double v);
  std::vector<std::pair<int, int>> pairs() const;
  // sup over ε of u(γ,ε); 0 for polymers without escape pairs.
  FugacityVector sup_over_escapes() const;

 private:
  int n_ = 0;
  std::vector<double> v_;
  std::vector<char> ok_;
};

// Reduced, Returning or Synthetic; other kinds throw WrongKind.
PairVector multiplexed_operator(const LeopKind& kind, const PolymerSystem& sys,
                                const FugacityVector& rho, const PairVector& u);

struct EscapingSeriesReport {
  bool ok = true;
  int checks = 0;
  int violations = 0;
  double max_ratio = 0.0;  // max ρ_γ·series / μ_γ
};

// Checks ρ_γ·(partial sums of the pinned series with ε excluded) ≤ μ_γ for all
// escape pairs and orders ≤ n_max. The witness must satisfy ρ·Leop(μ) ≤ μ.
EscapingSeriesReport escaping_series_bound_check(const PolymerSystem& sys,
                                                 const FugacityVector& rho,
                                                 const FugacityVector& mu, int n_max,
                                                 const LeopKind& kind = LeopKind::returning());

// (ν_γ−ρ_γ)/ν_γ, or 1 when ν_γ = 0. ν must be admissible.
FugacityVector generic_scub_bound(const PolymerSystem& sys, const FugacityVector& rho,
                                  const FugacityVector& nu);

struct MixingReport {
  bool extremes = true;        // Mix(all G) = FP, Mix(all R) = Ret, Syn(i(g)) = Mix(g)
  bool improvement = true;     // turning a coordinate to all G never increases Syn
  bool submultiplicative = true;
  bool equality_condition = true;  // stated condition on neighbourhood splits
  bool reduction = true;       // Syn(g) ≥ Mix(u(g))
  int behaviours = 0;
  int splits = 0;
  std::vector<std::string> failures;
  bool ok() const {
    return extremes && improvement && submultiplicative && equality_condition && reduction;
  }
};

// Behaviours are enumerated exhaustively when the number of escape pairs is at
// most 12, otherwise `samples` random ones are drawn from `seed`.
MixingReport mixing_reduction_check(const PolymerSystem& sys, const FugacityVector& mu,
                                    int samples = 64, unsigned seed = 1, double tol = 1e-10);

// Ξ_{Λ1}Ξ_{Λ2} ≥ Ξ_{Λ1∪Λ2} for disjoint volumes; returns the slack.
double submultiplicativity_gap(const PolymerSystem& sys, const Volume& a, const Volume& b,
                               const FugacityVector& mu);
// Strict inequality holds iff some incompatible cross pair has both weights positive.
bool submultiplicativity_strict(const PolymerSystem& sys, const Volume& a, const Volume& b,
                                const FugacityVector& mu);

// Per-coordinate optimum over behaviours g ∈ {G,R}^{P★} of the synthetic
// SCUB and over g ∈ {G,R}^P of the mixing SCUB, by exhaustive enumeration of
// each polymer's local behaviours.
FugacityVector synthetic_min_leop(const PolymerSystem& sys, const FugacityVector& mu);
FugacityVector mixing_min_leop(const PolymerSystem& sys, const FugacityVector& mu);

struct TreeSolution {
  double alpha = 1.0;
  double rho_star = 0.0;
};

// Stable fixed point of α = 1 − ρ/α^{D−1} and ρ* = (D−1)^{D−1}/D^D.
TreeSolution homogeneous_tree(int D, double rho);
double homogeneous_tree_rho_star(int D);
// dα/dρ on the stable branch.
double homogeneous_tree_derivative(int D, double rho);

}  // namespace pscub
