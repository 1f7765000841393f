#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rpsim/geometry.hpp"

namespace rpsim {

/// Ideal thin lens. Positive focal length converges. Outside the clear disk the
/// mount is opaque.
struct ThinLens {
  PlaneFrame frame;
  double focal_length = 0.0;
  double diameter = 0.0;

  /// Reason string for the first violated invariant, if any.
  std::optional<std::string> check() const;
  bool operator==(const ThinLens&) const = default;
};

/// Closed circular hole in an opaque plane. `center_offset` moves the hole within the plane.
struct CircularAperture {
  PlaneFrame frame;
  double radius = 0.0;
  InPlane center_offset;

  std::optional<std::string> check() const;
  bool operator==(const CircularAperture&) const = default;
};

/// Plane-symmetric transfer plate (dihedral corner reflector array).
///
/// An incoming ray splits into four outgoing families: the double-reflected image
/// (both in-plane direction components negated), two single-reflection ghosts
/// (one component negated) and the unreflected direct leak. Beyond `theta_max_deg`
/// incidence only the direct leak survives.
struct TransferPlate {
  PlaneFrame frame;
  double eff_image = 0.5;
  double eff_ghost_u = 0.15;
  double eff_ghost_v = 0.15;
  double eff_direct = 0.1;
  double theta_max_deg = 45.0;

  std::optional<std::string> check() const;
  bool operator==(const TransferPlate&) const = default;
};

enum class PlateMode { Image, GhostU, GhostV, Direct };

inline constexpr PlateMode kPlateModes[] = {PlateMode::Image, PlateMode::GhostU, PlateMode::GhostV,
                                            PlateMode::Direct};

const char* to_string(PlateMode mode);

struct Screen {
  PlaneFrame frame;
  double half_width_u = 10.0;
  double half_width_v = 10.0;
  int bins_u = 1;
  int bins_v = 1;

  std::optional<std::string> check() const;

  /// (row, col) of the bin holding `p`; row 0 is the top edge (largest v).
  std::pair<int, int> bin_of(const InPlane& p) const;
  bool operator==(const Screen&) const = default;
};

/// Disk the source aims every sample at.
struct TargetDisk {
  PlaneFrame frame;
  double radius = 1.0;
  InPlane center_offset;

  Vec3 center() const { return frame.at(center_offset); }
};

struct SourceGrid {
  PlaneFrame frame;
  int pixels_u = 1;
  int pixels_v = 1;
  double pitch = 1.0;
  int samples_per_pixel = 64;
  TargetDisk target;

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(pixels_u) * static_cast<std::size_t>(pixels_v);
  }
  /// Pixel index is row-major: index = iv * pixels_u + iu.
  Vec3 pixel_center(std::size_t index) const;
};

/// Samples are generated in fixed-size blocks so any block can be produced independently.
inline constexpr std::size_t kSampleBlock = 1024;

std::size_t sample_block_count(const SourceGrid& src);

/// Appends the rays of one sample block of one pixel to `out`.
void sample_pixel_block(const SourceGrid& src, std::size_t pixel, std::uint64_t seed, std::size_t block,
                        std::vector<Ray>& out);

struct SourceSample {
  std::size_t pixel = 0;
  Ray ray;
};

/// Every pixel's stratified bundle toward the target disk, pixel-major.
std::vector<SourceSample> source_sample_rays(const SourceGrid& src, std::uint64_t seed);

/// Maps the unit square onto the unit disk preserving area fractions.
InPlane concentric_disk(double a, double b);

/// Refraction by the ideal lens at `hit`. Empty when `hit` is outside the clear disk.
std::optional<Ray> lens_refract(const Ray& ray, const ThinLens& lens, const Vec3& hit);

bool aperture_pass(const Vec3& hit, const CircularAperture& ap);

/// Outgoing ray for one plate mode. Empty (rejected) for Image and ghost modes when the
/// incidence angle exceeds the plate's acceptance.
std::optional<Ray> plate_transfer(const Ray& ray, const TransferPlate& plate, const Vec3& hit, PlateMode mode);

/// Incidence angle against the plate normal, radians in [0, pi/2].
double incidence_angle(const Vec3& direction, const PlaneFrame& frame);

/// Landing point on the screen in its own coordinates; empty when the ray misses the
/// plane or lands outside the sensitive rectangle.
std::optional<InPlane> screen_hit(const Ray& ray, const Screen& screen);

}  // namespace rpsim
