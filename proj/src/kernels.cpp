// OpenMP versions of the exact enumeration kernels. Each loop is a plain
// reduction over masks, so the serial functions in oracle.cpp stay the reference.
#include <omp.h>

#include <string>

#include "pscub/oracle.hpp"

namespace pscub {

namespace {

void check_cap(const Cluster& g, int cap) {
  if (cap < 0) cap = enum_cap();
  if (g.num_edges() > cap)
    throw Error(Errc::TooLarge, std::to_string(g.num_edges()) + " edges exceed cap " +
                                    std::to_string(cap));
}

std::uint64_t independent_mask_check(const std::vector<std::uint64_t>& nbr, std::uint64_t s) {
  for (std::uint64_t r = s; r; r &= r - 1)
    if (nbr[lowest(r)] & s) return 0;
  return 1;
}

std::vector<std::uint64_t> local_nbr(const PolymerSystem& sys, const Volume& lambda) {
  const int m = static_cast<int>(lambda.size());
  if (m > 30) throw Error(Errc::TooLarge, "subset kernel limited to 30 polymers");
  std::vector<std::uint64_t> nbr(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && sys.incompatible(lambda[i], lambda[j])) nbr[i] |= std::uint64_t{1} << j;
  return nbr;
}

double subset_weight(const Volume& lambda, const FugacityVector& z, std::uint64_t s) {
  double w = 1.0;
  for (std::uint64_t r = s; r; r &= r - 1) w *= z[lambda[lowest(r)]];
  return w;
}

}  // namespace

std::int64_t count_connected_spanning(const Cluster& g, int cap) {
  std::int64_t count = 0;
  for_each_connected_spanning_subgraph(g, [&](EdgeMask) { ++count; }, cap);
  return count;
}

std::int64_t count_connected_spanning_parallel(const Cluster& g, int cap) {
  check_cap(g, cap);
  if (!g.connected) return 0;
  const std::int64_t end = std::int64_t{1} << g.num_edges();
  std::int64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::int64_t m = 0; m < end; ++m)
    if (popcount(static_cast<EdgeMask>(m)) >= g.n - 1 &&
        mask_connected(g, static_cast<EdgeMask>(m)))
      ++count;
  return count;
}

std::int64_t ursell_count_parallel(const Cluster& g, int cap) {
  if (g.n == 1) return 1;
  check_cap(g, cap);
  if (!g.connected) return 0;
  const std::int64_t end = std::int64_t{1} << g.num_edges();
  std::int64_t sum = 0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (std::int64_t m = 0; m < end; ++m) {
    const EdgeMask e = static_cast<EdgeMask>(m);
    if (popcount(e) >= g.n - 1 && mask_connected(g, e)) sum += (popcount(e) & 1) ? -1 : 1;
  }
  return sum;
}

double partition_function_subsets(const PolymerSystem& sys, const Volume& lambda,
                                  const FugacityVector& z) {
  auto nbr = local_nbr(sys, lambda);
  const std::uint64_t end = std::uint64_t{1} << lambda.size();
  double total = 0.0;
  for (std::uint64_t s = 0; s < end; ++s)
    if (independent_mask_check(nbr, s)) total += subset_weight(lambda, z, s);
  return total;
}

double partition_function_subsets_parallel(const PolymerSystem& sys, const Volume& lambda,
                                           const FugacityVector& z) {
  auto nbr = local_nbr(sys, lambda);
  const std::int64_t end = std::int64_t{1} << lambda.size();
  double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t s = 0; s < end; ++s) {
    const auto u = static_cast<std::uint64_t>(s);
    if (independent_mask_check(nbr, u)) total += subset_weight(lambda, z, u);
  }
  return total;
}

}  // namespace pscub
