#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rpsim/elements.hpp"
#include "rpsim/eye.hpp"

namespace rpsim {

using Element = std::variant<ThinLens, CircularAperture, TransferPlate>;

/// One declared optical element. The element's frame is always `placement.frame()`.
struct SceneElement {
  std::string id;
  Placement placement;
  Element element;

  static SceneElement make(std::string id, const Placement& placement, Element element);
  const PlaneFrame& frame() const;
  bool operator==(const SceneElement&) const = default;
};

struct ProjectorSpec {
  Placement placement;
  int pixels_u = 1;
  int pixels_v = 1;
  double pitch = 1.0;
  int samples = 64;
  bool operator==(const ProjectorSpec&) const = default;
};

struct RenderSettings {
  int max_events = 16;
  /// Branches carrying less than this fraction of their emitted ray's weight are absorbed.
  double weight_cutoff = 1e-6;
  /// A pixel counts as visible when its image-class retina weight exceeds this
  /// fraction of its emitted weight.
  double coverage_threshold = 1e-4;
  /// Minimum coverage inside the eyebox.
  double eyebox_plateau = 0.95;
  /// Distance from the eye to the diffuser of the comparison scene.
  double baseline_distance = 250.0;
  bool operator==(const RenderSettings&) const = default;
};

struct Scene {
  ProjectorSpec projector;
  /// Ordered by axial (z) position.
  std::vector<SceneElement> elements;
  EyeModel eye;
  RenderSettings render;

  std::optional<std::string> check() const;
  bool operator==(const Scene&) const = default;
};

/// Runtime form of a Scene: frames resolved, eye expanded, source aimed.
struct OpticalSystem {
  SourceGrid source;
  std::vector<SceneElement> elements;
  EyeStack eye;
  RenderSettings settings;
};

/// The disk the projector aims at: the first lens, else the first aperture, else the
/// eye's pupil.
TargetDisk source_target(const Scene& scene);

/// Throws std::invalid_argument when the scene violates an invariant.
OpticalSystem compile(const Scene& scene);

void sort_by_axial_position(std::vector<SceneElement>& elements);

}  // namespace rpsim
