#include "pscub/oracle.hpp"

#include <cmath>
#include <string>

namespace pscub {

FugacityVector negated(const FugacityVector& v) { return scaled(v, -1.0); }

FugacityVector scaled(const FugacityVector& v, double s) {
  FugacityVector out(v);
  for (double& x : out) x *= s;
  return out;
}

namespace {

// Λ re-indexed 0..m-1 with adjacency bitmasks (loops excluded).
struct LocalGraph {
  int m = 0;
  std::vector<std::uint64_t> nbr;
};

LocalGraph local_graph(const PolymerSystem& sys, const Volume& lambda) {
  LocalGraph lg;
  lg.m = static_cast<int>(lambda.size());
  if (lg.m > kMaxVolume)
    throw Error(Errc::TooLarge, "volume of size " + std::to_string(lg.m) + " exceeds " +
                                    std::to_string(kMaxVolume));
  lg.nbr.assign(lg.m, 0);
  for (int i = 0; i < lg.m; ++i) {
    if (lambda[i] < 0 || lambda[i] >= sys.size())
      throw Error(Errc::UnknownPolymer, std::to_string(lambda[i]));
    for (int j = 0; j < lg.m; ++j)
      if (i != j && sys.incompatible(lambda[i], lambda[j])) lg.nbr[i] |= std::uint64_t{1} << j;
  }
  return lg;
}

template <class T>
void independent_sets(const LocalGraph& lg, const std::vector<T>& w, int start,
                      std::uint64_t blocked, T prod, T& total) {
  total += prod;
  for (int v = start; v < lg.m; ++v) {
    if (blocked >> v & 1) continue;
    independent_sets(lg, w, v + 1, blocked | lg.nbr[v] | (std::uint64_t{1} << v), prod * w[v],
                     total);
  }
}

template <class T>
T partition_function_impl(const PolymerSystem& sys, const Volume& lambda,
                          const std::vector<T>& z) {
  LocalGraph lg = local_graph(sys, lambda);
  std::vector<T> w(lg.m);
  for (int i = 0; i < lg.m; ++i) w[i] = z.at(lambda[i]);
  T total = 0;
  independent_sets(lg, w, 0, 0, T(1), total);
  return total;
}

Volume remove_incompatibles(const PolymerSystem& sys, const Volume& lambda, int g) {
  return volume_minus(lambda, sys.incompatible_set(g));
}

void require_member(const Volume& lambda, int g) {
  if (!volume_contains(lambda, g))
    throw Error(Errc::PreconditionViolated, "polymer " + std::to_string(g) + " not in volume");
}

}  // namespace

double partition_function(const PolymerSystem& sys, const Volume& lambda,
                          const FugacityVector& z) {
  return partition_function_impl(sys, lambda, z);
}

std::complex<double> partition_function(const PolymerSystem& sys, const Volume& lambda,
                                        const ComplexFugacity& z) {
  return partition_function_impl(sys, lambda, z);
}

double one_polymer_ratio(const PolymerSystem& sys, const Volume& lambda, int g,
                         const FugacityVector& z) {
  require_member(lambda, g);
  double den = partition_function(sys, volume_without(lambda, g), z);
  if (den == 0.0) throw Error(Errc::DivisionByZero, "Ξ_{Λ\\γ} vanishes");
  return partition_function(sys, lambda, z) / den;
}

double reduced_correlation(const PolymerSystem& sys, const Volume& lambda,
                           const std::vector<int>& pins, const FugacityVector& z) {
  Volume removed;
  for (std::size_t i = 0; i < pins.size(); ++i) {
    require_member(lambda, pins[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (pins[i] == pins[j]) throw Error(Errc::PreconditionViolated, "pins must be distinct");
    removed = volume_union(removed, sys.incompatible_set(pins[i]));
  }
  double den = partition_function(sys, lambda, z);
  if (den == 0.0) throw Error(Errc::DivisionByZero, "Ξ_Λ vanishes");
  return partition_function(sys, volume_minus(lambda, removed), z) / den;
}

double pinned_connected_function(const PolymerSystem& sys, const Volume& lambda, int g,
                                 const FugacityVector& z) {
  require_member(lambda, g);
  double den = partition_function(sys, lambda, z);
  if (den == 0.0) throw Error(Errc::DivisionByZero, "Ξ_Λ vanishes");
  return partition_function(sys, remove_incompatibles(sys, lambda, g), z) / den;
}

std::complex<double> pinned_connected_function(const PolymerSystem& sys, const Volume& lambda,
                                               int g, const ComplexFugacity& z) {
  require_member(lambda, g);
  auto den = partition_function(sys, lambda, z);
  if (den == std::complex<double>(0.0)) throw Error(Errc::DivisionByZero, "Ξ_Λ vanishes");
  return partition_function(sys, remove_incompatibles(sys, lambda, g), z) / den;
}

double free_energy(const PolymerSystem& sys, const Volume& lambda, const FugacityVector& z) {
  if (lambda.empty()) throw Error(Errc::PreconditionViolated, "empty volume");
  double xi = partition_function(sys, lambda, z);
  if (!(xi > 0.0)) throw Error(Errc::NonPositivePartitionFunction, std::to_string(xi));
  return -std::log(xi) / static_cast<double>(lambda.size());
}

std::int64_t ursell_count(const Cluster& g, int cap) {
  if (g.n == 1) return 1;
  if (!g.connected) return 0;
  std::int64_t sum = 0;
  for_each_connected_spanning_subgraph(
      g, [&](EdgeMask m) { sum += (popcount(m) & 1) ? -1 : 1; }, cap);
  return sum;
}

double ursell(const Cluster& g, int cap) { return static_cast<double>(ursell_count(g, cap)); }

std::int64_t ursell_subset_recursion(const Cluster& g) {
  if (g.n > 20) throw Error(Errc::TooLarge, "subset recursion limited to 20 vertices");
  const std::uint32_t full = (std::uint32_t{1} << g.n) - 1;
  std::vector<std::int64_t> c(full + 1, 0);
  auto edgeless = [&](std::uint32_t s) {
    for (std::uint32_t r = s; r; r &= r - 1)
      if (g.adj[__builtin_ctz(r)] & s) return false;
    return true;
  };
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = s & (~s + 1);
    std::int64_t v = edgeless(s) ? 1 : 0;
    // proper subsets T of s containing the lowest vertex
    const std::uint32_t rest = s ^ low;
    for (std::uint32_t t = (rest - 1) & rest;; t = (t - 1) & rest) {
      std::uint32_t tt = t | low;
      if (tt != s && c[tt] != 0 && edgeless(s ^ tt)) v -= c[tt];
      if (t == 0) break;
    }
    if (rest == 0) v = 1;
    c[s] = v;
  }
  return c[full];
}

double fundamental_identity_residual(const PolymerSystem& sys, const Volume& lambda, int g,
                                     const FugacityVector& z) {
  require_member(lambda, g);
  return partition_function(sys, lambda, z) -
         partition_function(sys, volume_without(lambda, g), z) -
         z.at(g) * partition_function(sys, remove_incompatibles(sys, lambda, g), z);
}

std::vector<double> pinned_series_partial_sums(const PolymerSystem& sys, int g,
                                               const FugacityVector& rho, int n_max,
                                               std::optional<int> exclude) {
  if (n_max < 0) throw Error(Errc::PreconditionViolated, "negative order");
  if (n_max > kMaxSeriesOrder)
    throw Error(Errc::TooLarge, "series order " + std::to_string(n_max) + " exceeds " +
                                    std::to_string(kMaxSeriesOrder));
  std::vector<int> allowed;
  for (int p = 0; p < sys.size(); ++p)
    if (!(exclude && *exclude == p) && rho.at(p) != 0.0) allowed.push_back(p);
  const int a = static_cast<int>(allowed.size());

  std::vector<double> order_sum(n_max + 1, 0.0);
  order_sum[0] = 1.0;
  std::vector<int> xi{g};
  std::vector<int> pick;  // nondecreasing indices into allowed
  // depth-first over multisets; each node is a multiset of size pick.size()
  auto visit = [&](auto&& self, int from) -> void {
    const int m = static_cast<int>(pick.size());
    if (m > 0) {
      Cluster c = induce_cluster(sys, xi);
      if (c.connected) {
        double w = static_cast<double>(std::llabs(ursell_subset_recursion(c)));
        int run = 1;
        for (int i = 0; i < m; ++i) {
          w *= rho[allowed[pick[i]]];
          if (i > 0 && pick[i] == pick[i - 1]) w /= ++run;
          else run = 1;
        }
        order_sum[m] += w;
      }
    }
    if (m == n_max) return;
    for (int k = from; k < a; ++k) {
      pick.push_back(k);
      xi.push_back(allowed[k]);
      self(self, k);
      xi.pop_back();
      pick.pop_back();
    }
  };
  visit(visit, 0);
  for (int m = 1; m <= n_max; ++m) order_sum[m] += order_sum[m - 1];
  return order_sum;
}

double truncated_pinned_series(const PolymerSystem& sys, int g, const FugacityVector& rho,
                               int n_max, std::optional<int> exclude) {
  return pinned_series_partial_sums(sys, g, rho, n_max, exclude).back();
}

bool alternating_sign_check(const Cluster& g) {
  std::int64_t u = ursell_count(g);
  return ((g.n + 1) % 2 == 0 ? u : -u) >= 0;
}

bool monotonicity_check(const PolymerSystem& sys, const Volume& lambda, const Volume& lambda_sub,
                        int g, const FugacityVector& rho, const FugacityVector& nu) {
  if (!volume_contains(lambda_sub, g) || !volume_minus(lambda_sub, lambda).empty())
    throw Error(Errc::PreconditionViolated, "need γ ∈ Λ' ⊆ Λ");
  for (int p : lambda)
    if (nu.at(p) < 0.0 || nu[p] > rho.at(p))
      throw Error(Errc::PreconditionViolated, "need 0 ≤ ν ≤ ρ");
  const FugacityVector zr = negated(rho);
  if (!(partition_function(sys, volume_without(lambda, g), zr) > 0.0))
    throw Error(Errc::PreconditionViolated, "Ξ_{Λ\\γ}(-ρ) must be positive");
  const double tol = 1e-12;
  double r = one_polymer_ratio(sys, lambda, g, zr);
  double r_sub = one_polymer_ratio(sys, lambda_sub, g, zr);
  double r_nu = one_polymer_ratio(sys, lambda, g, negated(nu));
  return r <= r_sub + tol && r <= r_nu + tol;
}

Volume volume_from_mask(std::uint64_t mask) {
  Volume v;
  for (; mask; mask &= mask - 1) v.push_back(lowest(mask));
  return v;
}

std::uint64_t mask_from_volume(const Volume& v) {
  std::uint64_t m = 0;
  for (int x : v) m |= std::uint64_t{1} << x;
  return m;
}

std::vector<double> all_volume_partition_functions(const PolymerSystem& sys,
                                                   const FugacityVector& z) {
  const int n = sys.size();
  if (n > 24) throw Error(Errc::TooLarge, "volume sweep limited to 24 polymers");
  std::vector<std::uint32_t> closed(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : sys.incompatible_set(i)) closed[i] |= std::uint32_t{1} << j;
  std::vector<double> xi(std::size_t{1} << n);
  xi[0] = 1.0;
  for (std::uint32_t s = 1; s < xi.size(); ++s) {
    int v = __builtin_ctz(s);
    xi[s] = xi[s & (s - 1)] + z[v] * xi[s & ~closed[v]];
  }
  return xi;
}

bool admissible(const PolymerSystem& sys, const FugacityVector& rho) {
  for (double x : all_volume_partition_functions(sys, negated(rho)))
    if (!(x > 0.0)) return false;
  return true;
}

}  // namespace pscub
