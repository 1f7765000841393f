#pragma once

// Branching traversal shared by trace_ray and the render kernels. A Sink receives
// one call per terminated branch:
//   void operator()(RayClass cls, double weight, const std::optional<InPlane>& retina,
//                   const TraceEvent& terminal, const std::vector<TraceEvent>& events);

#include <limits>
#include <vector>

#include "rpsim/tracer.hpp"

namespace rpsim::detail {

inline constexpr std::string_view kPupilId = "eye.pupil";
inline constexpr std::string_view kEyeLensId = "eye.lens";
inline constexpr std::string_view kRetinaId = "eye.retina";

inline RayClass after_mode(RayClass cls, PlateMode mode) {
  if (cls == RayClass::Ghost || mode == PlateMode::GhostU || mode == PlateMode::GhostV) return RayClass::Ghost;
  if (cls == RayClass::Image || mode == PlateMode::Image) return RayClass::Image;
  return RayClass::Direct;
}

template <class Sink>
class BranchTracer {
 public:
  BranchTracer(const OpticalSystem& system, Sink& sink, bool record)
      : sys_(system), sink_(sink), record_(record) {}

  void run(const Ray& ray) {
    cutoff_ = sys_.settings.weight_cutoff * ray.weight;
    events_.clear();
    propagate(ray, RayClass::Direct, 0, 0.0);
  }

 private:
  static bool on_plane(const Vec3& p, const PlaneFrame& f) {
    return std::abs(dot(p - f.origin, f.n)) <= kAdvanceEpsilon;
  }

  void finish(RayClass cls, double weight, const std::optional<InPlane>& retina, const TraceEvent& terminal) {
    if (record_) events_.push_back(terminal);
    sink_(cls, weight, retina, terminal, events_);
    if (record_) events_.pop_back();
  }

  void push(const TraceEvent& e) {
    if (record_) events_.push_back(e);
  }
  void pop() {
    if (record_) events_.pop_back();
  }

  void propagate(const Ray& ray, RayClass cls, int events, double path) {
    if (ray.weight < cutoff_ || events >= sys_.settings.max_events) {
      finish(cls, ray.weight, std::nullopt, {{}, ray.origin, Action::Absorb, std::nullopt, path});
      return;
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (const SceneElement& e : sys_.elements) {
      if (auto h = intersect_plane(ray, e.frame()); h && h->t < nearest) nearest = h->t;
    }
    if (auto h = intersect_plane(ray, sys_.eye.pupil.frame); h && h->t < nearest) nearest = h->t;
    if (nearest == std::numeric_limits<double>::infinity()) {
      finish(cls, ray.weight, std::nullopt, {{}, ray.origin, Action::Miss, std::nullopt, path});
      return;
    }
    const Vec3 point = ray.at(nearest);
    apply_group(Ray{point, ray.direction, ray.weight}, cls, events + 1, path + nearest, 0);
  }

  // Applies, in declared order, every element whose plane contains the ray origin,
  // starting at element `first`; the eye comes last.
  void apply_group(Ray ray, RayClass cls, int events, double path, std::size_t first) {
    const Vec3 point = ray.origin;
    for (std::size_t i = first; i < sys_.elements.size(); ++i) {
      const SceneElement& e = sys_.elements[i];
      if (!on_plane(point, e.frame())) continue;
      if (const auto* lens = std::get_if<ThinLens>(&e.element)) {
        const auto out = lens_refract(ray, *lens, point);
        if (!out) {
          finish(cls, ray.weight, std::nullopt, {e.id, point, Action::Block, std::nullopt, path});
          return;
        }
        ray = *out;
        push({e.id, point, Action::Refract, std::nullopt, path});
        apply_group(ray, cls, events, path, i + 1);
        pop();
        return;
      }
      if (const auto* ap = std::get_if<CircularAperture>(&e.element)) {
        if (!aperture_pass(point, *ap)) {
          finish(cls, ray.weight, std::nullopt, {e.id, point, Action::Block, std::nullopt, path});
          return;
        }
        push({e.id, point, Action::Pass, std::nullopt, path});
        apply_group(ray, cls, events, path, i + 1);
        pop();
        return;
      }
      const auto& plate = std::get<TransferPlate>(e.element);
      for (PlateMode mode : kPlateModes) {
        const auto out = plate_transfer(ray, plate, point, mode);
        if (!out) continue;
        push({e.id, point, Action::Transfer, mode, path});
        apply_group(*out, after_mode(cls, mode), events, path, i + 1);
        pop();
      }
      return;
    }

    if (on_plane(point, sys_.eye.pupil.frame)) {
      enter_eye(ray, cls, path);
      return;
    }
    propagate(ray, cls, events, path);
  }

  void enter_eye(const Ray& ray, RayClass cls, double path) {
    const EyeResult r = eye_trace_at_pupil(ray, ray.origin, sys_.eye);
    const double at = path + r.path_length;
    if (record_ && r.part != EyePart::Pupil) {
      push({kPupilId, ray.origin, Action::Pass, std::nullopt, path});
      if (r.part == EyePart::Retina) {
        push({kEyeLensId, r.lens_point, Action::Refract, std::nullopt, path + r.lens_path_length});
      }
    }
    switch (r.outcome) {
      case EyeOutcome::Hit:
        finish(cls, r.weight, r.retina, {kRetinaId, r.point, Action::Retina, std::nullopt, at});
        break;
      case EyeOutcome::Blocked:
        finish(cls, ray.weight, std::nullopt,
               {r.part == EyePart::Pupil ? kPupilId : kEyeLensId, r.point, Action::Block, std::nullopt, at});
        break;
      case EyeOutcome::Miss:
        finish(cls, ray.weight, std::nullopt,
               {r.part == EyePart::Retina ? kRetinaId : kEyeLensId, r.point, Action::Miss, std::nullopt, at});
        break;
    }
    if (record_ && r.part != EyePart::Pupil) {
      pop();
      if (r.part == EyePart::Retina) pop();
    }
  }

  const OpticalSystem& sys_;
  Sink& sink_;
  bool record_;
  double cutoff_ = 0.0;
  std::vector<TraceEvent> events_;
};

}  // namespace rpsim::detail
