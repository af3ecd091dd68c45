// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "rainbow/gen.hpp"
#include "rainbow/kernels.hpp"

namespace {

using namespace rainbow;

Collection instance(std::size_t n, std::size_t k, std::size_t m) {
  GenSpec spec;
  spec.n = n;
  spec.k = k;
  spec.m = m;
  spec.delta_fraction = 0.5;
  spec.seed = 42;
  return random_collection(spec);
}

void BM_DegreeTable(benchmark::State& state, bool reference) {
  const auto c = instance(static_cast<std::size_t>(state.range(0)), 3, 1);
  for (auto _ : state) {
    auto t = reference ? kernels::degree_table_reference(c[0], 1) : kernels::degree_table(c[0], 1);
    benchmark::DoNotOptimize(t.data());
  }
}

void BM_Multiplicity(benchmark::State& state, bool reference) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = instance(n, 2, n);
  const auto colours = all_colours(c);
  for (auto _ : state) {
    auto t = reference ? kernels::colour_multiplicity_reference(c.members(), colours)
                       : kernels::colour_multiplicity(c.members(), colours);
    benchmark::DoNotOptimize(t.data());
  }
}

void BM_Audit(benchmark::State& state, bool reference) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = instance(n, 2, n);
  std::vector<std::uint32_t> part_of(n);
  for (std::size_t v = 0; v < n; ++v) part_of[v] = v % 2;
  const std::vector<double> required{0.0, 0.0};
  for (auto _ : state) {
    auto a = reference ? kernels::audit_partition_reference(c.members(), part_of, 2, 1, required)
                       : kernels::audit_partition(c.members(), part_of, 2, 1, required);
    benchmark::DoNotOptimize(a.min_margin);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_DegreeTable, serial, true)->Arg(20)->Arg(40);
BENCHMARK_CAPTURE(BM_DegreeTable, openmp, false)->Arg(20)->Arg(40);
BENCHMARK_CAPTURE(BM_Multiplicity, serial, true)->Arg(40)->Arg(120);
BENCHMARK_CAPTURE(BM_Multiplicity, openmp, false)->Arg(40)->Arg(120);
BENCHMARK_CAPTURE(BM_Audit, serial, true)->Arg(20)->Arg(40);
BENCHMARK_CAPTURE(BM_Audit, openmp, false)->Arg(20)->Arg(40);

BENCHMARK_MAIN();
