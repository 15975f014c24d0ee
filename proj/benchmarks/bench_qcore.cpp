#include <benchmark/benchmark.h>

#include "montyq/qcore.hpp"

namespace {

void BM_BornMatrix(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(montyq::qcore::born_matrix());
}
BENCHMARK(BM_BornMatrix);

void BM_PbrBasis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(montyq::qcore::pbr_basis());
}
BENCHMARK(BM_PbrBasis);

}  // namespace
