// Serial reference render against the OpenMP render on the shipped scenes.

#include <benchmark/benchmark.h>

#include <string>

#include "rpsim/scene_io.hpp"
#include "rpsim/tracer.hpp"

namespace {

rpsim::OpticalSystem load_system(const std::string& name, int samples) {
  rpsim::Scene scene = rpsim::load_scene(std::string(RPSIM_SCENE_DIR) + "/" + name);
  scene.projector.samples = samples;
  return rpsim::compile(scene);
}

void BM_RenderSerial(benchmark::State& state) {
  const auto system = load_system("fig5_bench.scene", static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rpsim::render_retina_serial(system, 1).map.values.data());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(system.source.pixel_count()) * state.range(0));
}

void BM_RenderParallel(benchmark::State& state) {
  const auto system = load_system("fig5_bench.scene", static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rpsim::render_retina(system, 1).map.values.data());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(system.source.pixel_count()) * state.range(0));
}

BENCHMARK(BM_RenderSerial)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RenderParallel)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
