#include <benchmark/benchmark.h>

#include "pscub/oracle.hpp"
#include "pscub/random.hpp"
#include "pscub/scub.hpp"

using namespace pscub;

namespace {

Cluster complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, e);
}

PolymerSystem dense_system(int n) {
  Rng rng(7);
  return random_connected_system(rng, n, 0.3);
}

}  // namespace

static void BM_ursell_serial(benchmark::State& st) {
  Cluster g = complete_graph(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(ursell_count(g));
}
BENCHMARK(BM_ursell_serial)->Arg(6)->Arg(7);

static void BM_ursell_parallel(benchmark::State& st) {
  Cluster g = complete_graph(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(ursell_count_parallel(g));
}
BENCHMARK(BM_ursell_parallel)->Arg(6)->Arg(7);

static void BM_partition_serial(benchmark::State& st) {
  PolymerSystem sys = dense_system(static_cast<int>(st.range(0)));
  FugacityVector z(sys.size(), -0.05);
  for (auto _ : st) benchmark::DoNotOptimize(partition_function_subsets(sys, full_volume(sys), z));
}
BENCHMARK(BM_partition_serial)->Arg(16)->Arg(20);

static void BM_partition_parallel(benchmark::State& st) {
  PolymerSystem sys = dense_system(static_cast<int>(st.range(0)));
  FugacityVector z(sys.size(), -0.05);
  for (auto _ : st)
    benchmark::DoNotOptimize(partition_function_subsets_parallel(sys, full_volume(sys), z));
}
BENCHMARK(BM_partition_parallel)->Arg(16)->Arg(20);

static void BM_table1(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(optimal_rho(LeopKind::returning(), hex_line_shape()));
}
BENCHMARK(BM_table1);

BENCHMARK_MAIN();
