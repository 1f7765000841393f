#pragma once

#include <optional>
#include <string>

#include "rpsim/elements.hpp"

namespace rpsim {

/// Reduced eye: a movable iris in front of a decentered varifocal thin lens, with the
/// retina a fixed distance behind the lens.
///
/// `placement` locates the pupil plane of the undisplaced eye. `offset` translates
/// iris, lens and retina together in that plane, so retina coordinates are always
/// measured from the displaced eye's own axis.
struct EyeModel {
  Placement placement;
  double pupil_radius = 2.0;
  InPlane offset;
  double focal_length = 17.0;
  /// Clear diameter of the crystalline lens; empty means the iris is the only stop.
  std::optional<double> lens_diameter;
  double pupil_to_lens_gap = 0.0;
  double retina_distance = 17.0;
  double retina_half_width_u = 12.0;
  double retina_half_width_v = 12.0;
  int retina_bins_u = 192;
  int retina_bins_v = 192;

  std::optional<std::string> check() const;
  bool operator==(const EyeModel&) const = default;
};

/// The eye as positioned elements, front to back.
struct EyeStack {
  CircularAperture pupil;
  ThinLens lens;
  Screen retina;
};

EyeStack eye_stack(const EyeModel& eye);

enum class EyeOutcome { Hit, Blocked, Miss };
enum class EyePart { Pupil, Lens, Retina };

struct EyeResult {
  EyeOutcome outcome = EyeOutcome::Miss;
  /// Retina coordinates; meaningful for Hit.
  InPlane retina;
  double weight = 0.0;
  /// Last part of the eye the ray interacted with.
  EyePart part = EyePart::Pupil;
  /// Where the ray stopped: retina point, occluding plane point, or last point reached.
  Vec3 point;
  /// Distance travelled from the incoming ray's origin to `point`.
  double path_length = 0.0;
  /// Lens-plane crossing and its distance; meaningful once the ray got past the iris.
  Vec3 lens_point;
  double lens_path_length = 0.0;
};

/// Pupil, then lens, then retina. Blocked means the iris or lens rim stopped the ray;
/// Miss means it never reached the pupil plane or landed off the retina.
EyeResult eye_trace(const Ray& ray, const EyeStack& eye);
EyeResult eye_trace(const Ray& ray, const EyeModel& eye);

/// Same as eye_trace for a ray already standing on the pupil plane at `pupil_point`.
EyeResult eye_trace_at_pupil(const Ray& ray, const Vec3& pupil_point, const EyeStack& eye);

/// Eye focal length that brings a point `object_distance` in front of the lens into focus.
double focused_focal_length(double object_distance, double retina_distance);

}  // namespace rpsim
