#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rpsim/scan.hpp"
#include "rpsim/tracer.hpp"

namespace rpsim {

/// Weighted RMS distance of the hits from their weighted centroid (mm).
/// Throws EmptySpot when there is no positive weight.
double rms_spot(std::span<const WeightedPoint> hits);

struct CoverageMeasure {
  /// Fraction of source pixels whose image-class retina weight exceeds the threshold.
  double coverage = 0.0;
  /// Total image-class weight on the retina.
  double intensity = 0.0;
};

CoverageMeasure measure_coverage(const Scene& scene, std::uint64_t seed);
double field_coverage(const Scene& scene, std::uint64_t seed);

/// `min, min + step, ...` up to `max` inclusive (within a thousandth of a step).
std::vector<double> scan_values(double min, double max, double step);

struct EyeboxScan {
  ScanResult coverage;
  ScanResult intensity;
  /// Width of the widest contiguous run of offsets meeting the plateau coverage.
  double extent = 0.0;
};

/// Translates the eye (iris, lens and retina together) along its u axis through
/// `offsets`, which must be strictly increasing.
EyeboxScan eyebox_scan(const Scene& scene, std::span<const double> offsets, std::uint64_t seed);

/// Widest contiguous run of points with value >= plateau, as parameter span.
double plateau_extent(const ScanResult& scan, double plateau);

struct SpotSweep {
  /// Mean RMS spot of the imaging class (image paths, or direct paths in a plate-free
  /// scene) over pixels that reach the retina, per eye focal length.
  ScanResult mean_spot;
  /// Pixels without any image-class hit, per focal length.
  std::vector<std::size_t> empty_pixels;
};

SpotSweep spot_sweep(const Scene& scene, std::span<const double> focal_lengths, std::uint64_t seed);

/// Comparison scene: the projector's image shown at unit magnification on a diffuser
/// `baseline_distance` in front of the same eye. Each diffuser point radiates into the
/// whole pupil; no intermediate optics.
Scene diffuser_baseline(const Scene& scene);

struct FocusSweep {
  SpotSweep proposed;
  SpotSweep baseline;
  double proposed_max = 0.0;
  double baseline_max = 0.0;
};

FocusSweep focus_sweep(const Scene& scene, std::span<const double> focal_lengths, std::uint64_t seed);

/// Ghost-class over image-class retina weight. Requires at least one plate; throws
/// DivisionUndefined when no image light arrives.
double ghost_ratio(const Scene& scene, std::uint64_t seed);

/// Full field angle (degrees) over which a single probe pixel, swept off axis in
/// `angle_step_deg` steps, keeps at least half of its on-axis image-class retina weight.
double fov_limit(const Scene& scene, double angle_step_deg, std::uint64_t seed);

}  // namespace rpsim
