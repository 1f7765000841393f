#include "rpsim/tracer.hpp"

#include <algorithm>
#include <numeric>

#include "trace_kernel.hpp"

namespace rpsim {

bool admits(ClassFilter filter, RayClass cls) {
  switch (filter) {
    case ClassFilter::All: return true;
    case ClassFilter::ImageOnly: return cls == RayClass::Image;
    case ClassFilter::GhostOnly: return cls == RayClass::Ghost;
  }
  return false;
}

const char* to_string(RayClass cls) {
  switch (cls) {
    case RayClass::Image: return "image";
    case RayClass::Ghost: return "ghost";
    case RayClass::Direct: return "direct";
  }
  return "?";
}

const char* to_string(Action action) {
  switch (action) {
    case Action::Refract: return "refract";
    case Action::Pass: return "pass";
    case Action::Block: return "block";
    case Action::Transfer: return "transfer";
    case Action::Absorb: return "absorb";
    case Action::Retina: return "retina";
    case Action::Miss: return "miss";
  }
  return "?";
}

std::vector<BranchResult> trace_ray(const Ray& ray, const OpticalSystem& system, bool record_events) {
  std::vector<BranchResult> out;
  auto sink = [&](RayClass cls, double weight, const std::optional<InPlane>& retina, const TraceEvent& terminal,
                  const std::vector<TraceEvent>& events) {
    out.push_back({cls, weight, retina, terminal, record_events ? events : std::vector<TraceEvent>{}});
  };
  detail::BranchTracer tracer(system, sink, record_events);
  tracer.run(ray);
  return out;
}

IrradianceMap IrradianceMap::zeros(int bins_u, int bins_v) {
  return {bins_u, bins_v, std::vector<double>(static_cast<std::size_t>(bins_u) * bins_v, 0.0)};
}

double IrradianceMap::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double IrradianceMap::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

void IrradianceMap::add(const IrradianceMap& other) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
}

double RenderResult::emitted() const { return std::accumulate(pixel_emitted.begin(), pixel_emitted.end(), 0.0); }

double RenderResult::delivered() const {
  return std::accumulate(pixel_delivered.begin(), pixel_delivered.end(), 0.0);
}

RenderResult render_retina(const Scene& scene, std::uint64_t seed, const RenderOptions& options) {
  return render_retina(compile(scene), seed, options);
}

}  // namespace rpsim
