#include "rpsim/scene.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rpsim {

SceneElement SceneElement::make(std::string id, const Placement& placement, Element element) {
  std::visit([&](auto& e) { e.frame = placement.frame(); }, element);
  return {std::move(id), placement, std::move(element)};
}

const PlaneFrame& SceneElement::frame() const {
  return std::visit([](const auto& e) -> const PlaneFrame& { return e.frame; }, element);
}

std::optional<std::string> Scene::check() const {
  if (projector.pixels_u < 0 || projector.pixels_v < 0) return "invariant: pixels >= 0";
  if (!(projector.pitch > 0.0)) return "invariant: pitch > 0";
  if (projector.samples < 0) return "invariant: samples >= 0";
  if (render.max_events < 1) return "invariant: max_events >= 1";
  if (!(render.weight_cutoff >= 0.0)) return "invariant: weight_cutoff >= 0";
  std::set<std::string> ids;
  for (const SceneElement& e : elements) {
    if (!ids.insert(e.id).second) return "duplicate id '" + e.id + "'";
    if (auto why = std::visit([](const auto& x) { return x.check(); }, e.element)) return why;
  }
  return eye.check();
}

TargetDisk source_target(const Scene& scene) {
  for (const SceneElement& e : scene.elements) {
    if (const auto* lens = std::get_if<ThinLens>(&e.element)) return {lens->frame, 0.5 * lens->diameter, {}};
  }
  for (const SceneElement& e : scene.elements) {
    if (const auto* ap = std::get_if<CircularAperture>(&e.element)) return {ap->frame, ap->radius, ap->center_offset};
  }
  const EyeStack eye = eye_stack(scene.eye);
  return {eye.pupil.frame, eye.pupil.radius, eye.pupil.center_offset};
}

OpticalSystem compile(const Scene& scene) {
  if (auto why = scene.check()) throw std::invalid_argument(*why);
  OpticalSystem sys;
  sys.source.frame = scene.projector.placement.frame();
  sys.source.pixels_u = scene.projector.pixels_u;
  sys.source.pixels_v = scene.projector.pixels_v;
  sys.source.pitch = scene.projector.pitch;
  sys.source.samples_per_pixel = scene.projector.samples;
  sys.source.target = source_target(scene);
  sys.elements = scene.elements;
  sys.eye = eye_stack(scene.eye);
  sys.settings = scene.render;
  return sys;
}

void sort_by_axial_position(std::vector<SceneElement>& elements) {
  std::stable_sort(elements.begin(), elements.end(), [](const SceneElement& a, const SceneElement& b) {
    return a.placement.position.z < b.placement.position.z;
  });
}

}  // namespace rpsim
