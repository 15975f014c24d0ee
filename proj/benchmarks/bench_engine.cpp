// Exact enumeration and Monte Carlo throughput for the catalog games.
#include <benchmark/benchmark.h>

#include "montyq/engine.hpp"
#include "montyq/games.hpp"
#include "montyq/teleport.hpp"

namespace {

using montyq::frac;
namespace engine = montyq::engine;
namespace games = montyq::games;

void BM_EnumerateClassic(benchmark::State& state) {
  const auto spec = games::classic_game();
  for (auto _ : state) benchmark::DoNotOptimize(engine::enumerate_joint(spec));
}
BENCHMARK(BM_EnumerateClassic);

void BM_EnumeratePsiEpistemic(benchmark::State& state) {
  const auto spec = games::psi_epistemic_game({frac(1, 12), frac(1, 12), frac(1, 12)});
  for (auto _ : state) benchmark::DoNotOptimize(engine::enumerate_joint(spec));
}
BENCHMARK(BM_EnumeratePsiEpistemic);

void BM_Validate(benchmark::State& state) {
  const auto spec = games::psi_ontic_game();
  for (auto _ : state) benchmark::DoNotOptimize(engine::validate(spec));
}
BENCHMARK(BM_Validate);

void BM_SimulatePsiOntic(benchmark::State& state) {
  const auto spec = games::psi_ontic_game();
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(engine::simulate(spec, engine::Strategy::switch_door, trials, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatePsiOntic)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_TeleportMonty(benchmark::State& state) {
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        montyq::teleport::simulate_teleport(montyq::teleport::Mode::monty, engine::Strategy::switch_door, trials, 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TeleportMonty)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
