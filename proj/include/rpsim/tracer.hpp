#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rpsim/scene.hpp"

namespace rpsim {

/// Ghost if any plate ghost mode was taken, else Image if any image mode was taken.
enum class RayClass { Image, Ghost, Direct };
enum class ClassFilter { All, ImageOnly, GhostOnly };

bool admits(ClassFilter filter, RayClass cls);
const char* to_string(RayClass cls);

enum class Action { Refract, Pass, Block, Transfer, Absorb, Retina, Miss };
const char* to_string(Action action);

struct TraceEvent {
  /// Element id, or "eye.pupil" / "eye.lens" / "eye.retina". Points into the system
  /// being traced; empty for absorption and escape.
  std::string_view element;
  Vec3 point;
  Action action = Action::Miss;
  std::optional<PlateMode> mode;
  /// Distance along the path from the emitted ray's origin.
  double path_length = 0.0;
};

struct BranchResult {
  RayClass cls = RayClass::Direct;
  /// Weight carried at termination.
  double weight = 0.0;
  /// Retina coordinates when the branch landed on the retina.
  std::optional<InPlane> retina;
  TraceEvent terminal;
  /// Every event along the branch, terminal included; filled only when requested.
  std::vector<TraceEvent> events;
};

/// Nearest-hit propagation of one emitted ray. Plates split a branch into every
/// admissible mode; each branch ends on the retina, at an occluder, by absorption
/// (weight or event budget) or by escaping the system.
std::vector<BranchResult> trace_ray(const Ray& ray, const OpticalSystem& system, bool record_events = false);

/// Row-major weighted histogram over a screen; row 0 is the top edge.
struct IrradianceMap {
  int bins_u = 0;
  int bins_v = 0;
  std::vector<double> values;

  static IrradianceMap zeros(int bins_u, int bins_v);
  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * bins_u + col]; }
  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * bins_u + col]; }
  double total() const;
  double max() const;
  void add(const IrradianceMap& other);
  bool operator==(const IrradianceMap&) const = default;
};

struct WeightedPoint {
  InPlane p;
  double w = 0.0;
};

struct RenderOptions {
  ClassFilter filter = ClassFilter::All;
  /// Keep every retina hit of this class, grouped by pixel.
  std::optional<RayClass> collect_hits;
};

struct RenderResult {
  IrradianceMap map;
  /// Retina weight per source pixel for the admitted classes.
  std::vector<double> pixel_delivered;
  /// Image-class retina weight per source pixel, whatever the filter.
  std::vector<double> pixel_image;
  std::vector<double> pixel_emitted;
  double image_total = 0.0;
  double ghost_total = 0.0;
  double direct_total = 0.0;
  /// Hits of the collected class per pixel; empty unless requested.
  std::vector<std::vector<WeightedPoint>> hits;

  double emitted() const;
  double delivered() const;
};

/// OpenMP render. Work is split into fixed (pixel, sample block) units whose partial
/// results are merged in unit order, so the output does not depend on thread count.
/// Throws ZeroRays for an empty source.
RenderResult render_retina(const OpticalSystem& system, std::uint64_t seed, const RenderOptions& options = {});
RenderResult render_retina(const Scene& scene, std::uint64_t seed, const RenderOptions& options = {});

/// Single-threaded reference render over the full sample list.
RenderResult render_retina_serial(const OpticalSystem& system, std::uint64_t seed,
                                  const RenderOptions& options = {});

}  // namespace rpsim
