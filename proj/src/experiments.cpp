#include "rpsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rpsim/errors.hpp"
#include "rpsim/scene_io.hpp"

namespace rpsim {

double rms_spot(std::span<const WeightedPoint> hits) {
  if (hits.empty()) throw EmptySpot();
  // Moments about the first hit keep cancellation small for tight spots far off axis.
  const InPlane ref = hits.front().p;
  double w = 0.0, cu = 0.0, cv = 0.0;
  for (const WeightedPoint& h : hits) {
    w += h.w;
    cu += h.w * (h.p.u - ref.u);
    cv += h.w * (h.p.v - ref.v);
  }
  if (!(w > 0.0)) throw EmptySpot();
  cu /= w;
  cv /= w;
  double sq = 0.0;
  for (const WeightedPoint& h : hits) {
    const double du = h.p.u - ref.u - cu, dv = h.p.v - ref.v - cv;
    sq += h.w * (du * du + dv * dv);
  }
  return std::sqrt(sq / w);
}

CoverageMeasure measure_coverage(const Scene& scene, std::uint64_t seed) {
  const RenderResult r = render_retina(scene, seed, {ClassFilter::ImageOnly, std::nullopt});
  CoverageMeasure m;
  std::size_t covered = 0;
  for (std::size_t p = 0; p < r.pixel_image.size(); ++p) {
    if (r.pixel_image[p] > scene.render.coverage_threshold * r.pixel_emitted[p]) ++covered;
  }
  m.coverage = static_cast<double>(covered) / static_cast<double>(r.pixel_image.size());
  m.intensity = r.image_total;
  return m;
}

double field_coverage(const Scene& scene, std::uint64_t seed) { return measure_coverage(scene, seed).coverage; }

std::vector<double> scan_values(double min, double max, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("scan step must be positive");
  if (max < min) throw std::invalid_argument("scan max below min");
  const auto n = static_cast<long>(std::floor((max - min) / step + 1e-3));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) values.push_back(min + static_cast<double>(k) * step);
  return values;
}

namespace {

void require_increasing(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("scan needs at least one value");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw std::invalid_argument("scan values must be strictly increasing");
  }
}

ScanResult tagged(const Scene& scene, std::uint64_t seed) {
  ScanResult s;
  s.scene_hash = scene_hash(scene);
  s.seed = seed;
  return s;
}

bool has_plate(const Scene& scene) {
  return std::any_of(scene.elements.begin(), scene.elements.end(),
                     [](const SceneElement& e) { return std::holds_alternative<TransferPlate>(e.element); });
}

double finite_max(const ScanResult& scan) {
  double m = -std::numeric_limits<double>::infinity();
  for (const ScanPoint& p : scan.points) {
    if (std::isfinite(p.value)) m = std::max(m, p.value);
  }
  return m;
}

}  // namespace

double plateau_extent(const ScanResult& scan, double plateau) {
  double best = 0.0;
  std::size_t i = 0;
  while (i < scan.points.size()) {
    if (scan.points[i].value < plateau) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < scan.points.size() && scan.points[j + 1].value >= plateau) ++j;
    best = std::max(best, scan.points[j].parameter - scan.points[i].parameter);
    i = j + 1;
  }
  return best;
}

EyeboxScan eyebox_scan(const Scene& scene, std::span<const double> offsets, std::uint64_t seed) {
  require_increasing(offsets);
  EyeboxScan scan{tagged(scene, seed), tagged(scene, seed), 0.0};
  Scene moved = scene;
  for (double offset : offsets) {
    moved.eye.offset = {offset, 0.0};
    const CoverageMeasure m = measure_coverage(moved, seed);
    scan.coverage.points.push_back({offset, m.coverage});
    scan.intensity.points.push_back({offset, m.intensity});
  }
  scan.extent = plateau_extent(scan.coverage, scene.render.eyebox_plateau);
  return scan;
}

SpotSweep spot_sweep(const Scene& scene, std::span<const double> focal_lengths, std::uint64_t seed) {
  require_increasing(focal_lengths);
  SpotSweep sweep{tagged(scene, seed), {}};
  // Without a plate every path is direct, and the direct light is the image.
  const RayClass imaging = has_plate(scene) ? RayClass::Image : RayClass::Direct;
  Scene focused = scene;
  for (double f : focal_lengths) {
    focused.eye.focal_length = f;
    const RenderResult r = render_retina(focused, seed, {ClassFilter::All, imaging});
    double sum = 0.0;
    std::size_t counted = 0, empty = 0;
    for (const auto& hits : r.hits) {
      try {
        sum += rms_spot(hits);
        ++counted;
      } catch (const EmptySpot&) {
        ++empty;
      }
    }
    const double mean = counted > 0 ? sum / static_cast<double>(counted) : std::numeric_limits<double>::quiet_NaN();
    sweep.mean_spot.points.push_back({f, mean});
    sweep.empty_pixels.push_back(empty);
  }
  return sweep;
}

Scene diffuser_baseline(const Scene& scene) {
  Scene baseline;
  baseline.eye = scene.eye;
  baseline.render = scene.render;
  const PlaneFrame eye_frame = scene.eye.placement.frame();
  baseline.projector = scene.projector;
  baseline.projector.placement = scene.eye.placement;
  baseline.projector.placement.position = eye_frame.origin - eye_frame.n * scene.render.baseline_distance;
  return baseline;
}

FocusSweep focus_sweep(const Scene& scene, std::span<const double> focal_lengths, std::uint64_t seed) {
  FocusSweep out;
  out.proposed = spot_sweep(scene, focal_lengths, seed);
  out.baseline = spot_sweep(diffuser_baseline(scene), focal_lengths, seed);
  out.proposed_max = finite_max(out.proposed.mean_spot);
  out.baseline_max = finite_max(out.baseline.mean_spot);
  return out;
}

double ghost_ratio(const Scene& scene, std::uint64_t seed) {
  if (!has_plate(scene)) throw std::invalid_argument("ghost_ratio needs a scene with a transfer plate");
  const RenderResult r = render_retina(scene, seed, {ClassFilter::All, std::nullopt});
  if (!(r.image_total > 0.0)) throw DivisionUndefined("no image-class light reaches the retina");
  return r.ghost_total / r.image_total;
}

double fov_limit(const Scene& scene, double angle_step_deg, std::uint64_t seed) {
  if (!(angle_step_deg > 0.0)) throw std::invalid_argument("angle step must be positive");
  const PlaneFrame frame = scene.projector.placement.frame();
  const Vec3 target = source_target(scene).center();
  const double axial = dot(target - frame.origin, frame.n);
  const Vec3 foot = target - frame.n * axial;

  Scene probe = scene;
  probe.projector.pixels_u = 1;
  probe.projector.pixels_v = 1;
  auto image_weight = [&](double angle_deg) {
    probe.projector.placement.position = foot - frame.u * (axial * std::tan(deg_to_rad(angle_deg)));
    return render_retina(probe, seed, {ClassFilter::ImageOnly, std::nullopt}).image_total;
  };

  const double on_axis = image_weight(0.0);
  if (!(on_axis > 0.0)) return 0.0;
  double admitted = 0.0;
  for (long k = 1;; ++k) {
    const double angle = static_cast<double>(k) * angle_step_deg;
    if (angle >= 90.0 || image_weight(angle) < 0.5 * on_axis) break;
    admitted = angle;
  }
  return 2.0 * admitted;
}

}  // namespace rpsim
