#pragma once

#include <vector>

#include "rpsim/errors.hpp"
#include "rpsim/tracer.hpp"

namespace rpsim::detail {

struct Tally {
  double delivered = 0.0;
  double image = 0.0;
  double ghost = 0.0;
  double direct = 0.0;
  double emitted = 0.0;
};

/// Sink that bins retina hits and tallies them by class.
struct Accumulator {
  const Screen* retina = nullptr;
  ClassFilter filter = ClassFilter::All;
  IrradianceMap* map = nullptr;
  Tally* tally = nullptr;
  std::vector<WeightedPoint>* hits = nullptr;
  RayClass hit_class = RayClass::Image;

  void operator()(RayClass cls, double weight, const std::optional<InPlane>& at, const TraceEvent&,
                  const std::vector<TraceEvent>&) {
    if (!at) return;
    switch (cls) {
      case RayClass::Image:
        tally->image += weight;
        break;
      case RayClass::Ghost: tally->ghost += weight; break;
      case RayClass::Direct: tally->direct += weight; break;
    }
    if (hits && cls == hit_class) hits->push_back({*at, weight});
    if (admits(filter, cls)) {
      const auto [row, col] = retina->bin_of(*at);
      map->at(row, col) += weight;
      tally->delivered += weight;
    }
  }
};

inline void require_rays(const OpticalSystem& system) {
  if (system.source.pixel_count() == 0 || system.source.samples_per_pixel <= 0) throw ZeroRays();
}

inline RenderResult empty_result(const OpticalSystem& system, const RenderOptions& options) {
  RenderResult r;
  const std::size_t pixels = system.source.pixel_count();
  r.map = IrradianceMap::zeros(system.eye.retina.bins_u, system.eye.retina.bins_v);
  r.pixel_delivered.assign(pixels, 0.0);
  r.pixel_image.assign(pixels, 0.0);
  r.pixel_emitted.assign(pixels, 0.0);
  if (options.collect_hits) r.hits.resize(pixels);
  return r;
}

inline void fold(RenderResult& r, std::size_t pixel, const Tally& t) {
  r.pixel_delivered[pixel] += t.delivered;
  r.pixel_image[pixel] += t.image;
  r.pixel_emitted[pixel] += t.emitted;
  r.image_total += t.image;
  r.ghost_total += t.ghost;
  r.direct_total += t.direct;
}

}  // namespace rpsim::detail
