#include "render_common.hpp"
#include "trace_kernel.hpp"

namespace rpsim {

RenderResult render_retina_serial(const OpticalSystem& system, std::uint64_t seed, const RenderOptions& options) {
  detail::require_rays(system);
  RenderResult result = detail::empty_result(system, options);

  std::vector<detail::Tally> tallies(system.source.pixel_count());
  detail::Accumulator acc{&system.eye.retina, options.filter, &result.map, nullptr, nullptr,
                            options.collect_hits.value_or(RayClass::Image)};
  detail::BranchTracer tracer(system, acc, false);
  for (const SourceSample& s : source_sample_rays(system.source, seed)) {
    acc.tally = &tallies[s.pixel];
    acc.hits = options.collect_hits ? &result.hits[s.pixel] : nullptr;
    tallies[s.pixel].emitted += s.ray.weight;
    tracer.run(s.ray);
  }
  for (std::size_t p = 0; p < tallies.size(); ++p) detail::fold(result, p, tallies[p]);
  return result;
}

}  // namespace rpsim
