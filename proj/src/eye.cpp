#include "rpsim/eye.hpp"

#include <cmath>
#include <limits>

namespace rpsim {

std::optional<std::string> EyeModel::check() const {
  if (!(pupil_radius > 0.0)) return "invariant: pupil_radius > 0";
  if (!(retina_distance > 0.0)) return "invariant: retina_distance > 0";
  if (!(focal_length != 0.0) || !std::isfinite(focal_length)) return "invariant: focal_length != 0";
  if (lens_diameter && !(*lens_diameter > 0.0)) return "invariant: lens_diameter > 0";
  if (!(pupil_to_lens_gap >= 0.0)) return "invariant: gap >= 0";
  if (!(retina_half_width_u > 0.0) || !(retina_half_width_v > 0.0)) return "invariant: retina half widths > 0";
  if (retina_bins_u < 1 || retina_bins_v < 1) return "invariant: retina bins >= 1";
  return std::nullopt;
}

EyeStack eye_stack(const EyeModel& eye) {
  const PlaneFrame pupil_plane = eye.placement.frame().shifted(eye.offset);
  const PlaneFrame lens_plane = pupil_plane.advanced(eye.pupil_to_lens_gap);
  const PlaneFrame retina_plane = lens_plane.advanced(eye.retina_distance);
  return {
      CircularAperture{pupil_plane, eye.pupil_radius, {}},
      ThinLens{lens_plane, eye.focal_length,
               eye.lens_diameter.value_or(std::numeric_limits<double>::infinity())},
      Screen{retina_plane, eye.retina_half_width_u, eye.retina_half_width_v, eye.retina_bins_u,
             eye.retina_bins_v},
  };
}

EyeResult eye_trace_at_pupil(const Ray& ray, const Vec3& pupil_point, const EyeStack& eye) {
  EyeResult result;
  result.point = pupil_point;
  if (!aperture_pass(pupil_point, eye.pupil)) {
    result.outcome = EyeOutcome::Blocked;
    return result;
  }

  result.part = EyePart::Lens;
  Vec3 lens_point = pupil_point;
  if (dot(eye.lens.frame.origin - eye.pupil.frame.origin, eye.pupil.frame.n) > kAdvanceEpsilon) {
    const auto h = intersect_plane(Ray{pupil_point, ray.direction, ray.weight}, eye.lens.frame);
    if (!h) return result;
    lens_point = h->point;
    result.path_length = h->t;
  }
  result.point = lens_point;
  result.lens_point = lens_point;
  result.lens_path_length = result.path_length;
  const auto refracted = lens_refract(ray, eye.lens, lens_point);
  if (!refracted) {
    result.outcome = EyeOutcome::Blocked;
    return result;
  }

  result.part = EyePart::Retina;
  const auto at_retina = intersect_plane(*refracted, eye.retina.frame);
  if (!at_retina) return result;
  result.point = at_retina->point;
  result.path_length += at_retina->t;
  const InPlane p = eye.retina.frame.local(at_retina->point);
  if (std::abs(p.u) > eye.retina.half_width_u || std::abs(p.v) > eye.retina.half_width_v) return result;
  result.outcome = EyeOutcome::Hit;
  result.retina = p;
  result.weight = refracted->weight;
  return result;
}

EyeResult eye_trace(const Ray& ray, const EyeStack& eye) {
  const auto at_pupil = intersect_plane(ray, eye.pupil.frame);
  if (!at_pupil) {
    EyeResult miss;
    miss.point = ray.origin;
    return miss;
  }
  EyeResult result = eye_trace_at_pupil(ray, at_pupil->point, eye);
  result.path_length += at_pupil->t;
  result.lens_path_length += at_pupil->t;
  return result;
}

EyeResult eye_trace(const Ray& ray, const EyeModel& eye) { return eye_trace(ray, eye_stack(eye)); }

double focused_focal_length(double object_distance, double retina_distance) {
  return 1.0 / (1.0 / retina_distance + 1.0 / object_distance);
}

}  // namespace rpsim
