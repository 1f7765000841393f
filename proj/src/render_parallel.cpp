#include <algorithm>

#include "render_common.hpp"
#include "trace_kernel.hpp"

namespace rpsim {

namespace {

// Upper bound on partial maps held at once.
constexpr std::size_t kMaxChunks = 64;

}  // namespace

RenderResult render_retina(const OpticalSystem& system, std::uint64_t seed, const RenderOptions& options) {
  detail::require_rays(system);
  RenderResult result = detail::empty_result(system, options);

  const std::size_t blocks = sample_block_count(system.source);
  const std::size_t units = system.source.pixel_count() * blocks;
  const std::size_t chunks = std::min(units, kMaxChunks);

  std::vector<IrradianceMap> partial(chunks, result.map);
  std::vector<detail::Tally> tallies(units);
  std::vector<std::vector<WeightedPoint>> hits(options.collect_hits ? units : 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(chunks); ++k) {
    const std::size_t first = static_cast<std::size_t>(k) * units / chunks;
    const std::size_t last = (static_cast<std::size_t>(k) + 1) * units / chunks;
    detail::Accumulator acc{&system.eye.retina, options.filter, &partial[static_cast<std::size_t>(k)], nullptr,
                            nullptr, options.collect_hits.value_or(RayClass::Image)};
    detail::BranchTracer tracer(system, acc, false);
    std::vector<Ray> rays;
    rays.reserve(kSampleBlock);
    for (std::size_t u = first; u < last; ++u) {
      rays.clear();
      sample_pixel_block(system.source, u / blocks, seed, u % blocks, rays);
      acc.tally = &tallies[u];
      acc.hits = options.collect_hits ? &hits[u] : nullptr;
      for (const Ray& ray : rays) {
        tallies[u].emitted += ray.weight;
        tracer.run(ray);
      }
    }
  }

  for (const IrradianceMap& m : partial) result.map.add(m);
  for (std::size_t u = 0; u < units; ++u) {
    detail::fold(result, u / blocks, tallies[u]);
    if (options.collect_hits) {
      auto& dst = result.hits[u / blocks];
      dst.insert(dst.end(), hits[u].begin(), hits[u].end());
    }
  }
  return result;
}

}  // namespace rpsim
