#include <benchmark/benchmark.h>

#include "radoloc/boolean_identity.hpp"
#include "radoloc/copy.hpp"
#include "radoloc/kernels.hpp"
#include "radoloc/labeling.hpp"

namespace {

using namespace radoloc;

// Level 3 of the identity labeling: 2048 cones over an 11-vertex prefix.
struct LevelThree {
  std::vector<Vertex> enumeration;
  VertexSet prefix;
  LevelThree() {
    auto lab = Labeling::build(std::make_shared<WholeGraph>());
    prefix = lab->prefix(3);
    enumeration = WholeGraph().first_members(1u << 13);
  }
};

const LevelThree& level_three() {
  static const LevelThree data;
  return data;
}

void BM_LeastIndexSerial(benchmark::State& state) {
  const auto& d = level_three();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::least_index_level_serial(d.enumeration, d.prefix));
}

void BM_LeastIndexParallel(benchmark::State& state) {
  const auto& d = level_three();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::least_index_level_parallel(d.enumeration, d.prefix));
  state.counters["threads"] = kernels::thread_count();
}

boolean::FuzzConfig fuzz_config() { return {.atoms = 8, .rows = 5, .cols = 5, .cases = 2000, .seed = 1, .trees = 20}; }

void BM_FuzzSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(boolean::fuzz_identity_serial(fuzz_config()));
}

void BM_FuzzParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(boolean::fuzz_identity_parallel(fuzz_config()));
  state.counters["threads"] = kernels::thread_count();
}

}  // namespace

BENCHMARK(BM_LeastIndexSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeastIndexParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FuzzSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FuzzParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
