#include "rpsim/elements.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rpsim {

std::optional<std::string> ThinLens::check() const {
  if (!(focal_length != 0.0) || !std::isfinite(focal_length)) return "invariant: focal_length != 0";
  if (!(diameter > 0.0)) return "invariant: diameter > 0";
  return std::nullopt;
}

std::optional<std::string> CircularAperture::check() const {
  if (!(radius > 0.0)) return "invariant: radius > 0";
  return std::nullopt;
}

std::optional<std::string> TransferPlate::check() const {
  for (double e : {eff_image, eff_ghost_u, eff_ghost_v, eff_direct}) {
    if (!(e >= 0.0 && e <= 1.0)) return "invariant: efficiencies in [0, 1]";
  }
  if (eff_image + eff_ghost_u + eff_ghost_v + eff_direct > 1.0 + 1e-12) {
    return "invariant: eff_image + eff_ghost_u + eff_ghost_v + eff_direct <= 1";
  }
  if (!(theta_max_deg > 0.0 && theta_max_deg < 90.0)) return "invariant: 0 < theta_max < 90";
  return std::nullopt;
}

const char* to_string(PlateMode mode) {
  switch (mode) {
    case PlateMode::Image: return "image";
    case PlateMode::GhostU: return "ghost_u";
    case PlateMode::GhostV: return "ghost_v";
    case PlateMode::Direct: return "direct";
  }
  return "?";
}

std::optional<std::string> Screen::check() const {
  if (!(half_width_u > 0.0) || !(half_width_v > 0.0)) return "invariant: half widths > 0";
  if (bins_u < 1 || bins_v < 1) return "invariant: bins >= 1";
  return std::nullopt;
}

std::pair<int, int> Screen::bin_of(const InPlane& p) const {
  const int col = static_cast<int>(std::floor((p.u + half_width_u) / (2.0 * half_width_u) * bins_u));
  const int from_bottom = static_cast<int>(std::floor((p.v + half_width_v) / (2.0 * half_width_v) * bins_v));
  const int c = std::clamp(col, 0, bins_u - 1);
  const int r = bins_v - 1 - std::clamp(from_bottom, 0, bins_v - 1);
  return {r, c};
}

Vec3 SourceGrid::pixel_center(std::size_t index) const {
  const auto iu = static_cast<double>(index % static_cast<std::size_t>(pixels_u));
  const auto iv = static_cast<double>(index / static_cast<std::size_t>(pixels_u));
  return frame.at({(iu - 0.5 * (pixels_u - 1)) * pitch, (iv - 0.5 * (pixels_v - 1)) * pitch});
}

InPlane concentric_disk(double a, double b) {
  const double x = 2.0 * a - 1.0;
  const double y = 2.0 * b - 1.0;
  if (x == 0.0 && y == 0.0) return {0.0, 0.0};
  constexpr double quarter = std::numbers::pi / 4.0;
  double r, phi;
  if (std::abs(x) > std::abs(y)) {
    r = x;
    phi = quarter * (y / x);
  } else {
    r = y;
    phi = 2.0 * quarter - quarter * (x / y);
  }
  return {r * std::cos(phi), r * std::sin(phi)};
}

std::size_t sample_block_count(const SourceGrid& src) {
  const auto s = static_cast<std::size_t>(std::max(src.samples_per_pixel, 0));
  return (s + kSampleBlock - 1) / kSampleBlock;
}

void sample_pixel_block(const SourceGrid& src, std::size_t pixel, std::uint64_t seed, std::size_t block,
                        std::vector<Ray>& out) {
  const auto total = static_cast<std::size_t>(src.samples_per_pixel);
  const std::size_t first = block * kSampleBlock;
  const std::size_t last = std::min(total, first + kSampleBlock);
  if (first >= last) return;

  // Jittered nx-by-ny strata; with a non-square count the top row is partly filled.
  const auto nx = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(total))));
  const std::size_t ny = (total + nx - 1) / nx;

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(pixel), static_cast<std::uint32_t>(pixel >> 32),
                    static_cast<std::uint32_t>(block)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);

  const Vec3 from = src.pixel_center(pixel);
  const Vec3 center = src.target.center();
  const double weight = 1.0 / static_cast<double>(total);
  for (std::size_t k = first; k < last; ++k) {
    const double a = (static_cast<double>(k % nx) + jitter(rng)) / static_cast<double>(nx);
    const double b = (static_cast<double>(k / nx) + jitter(rng)) / static_cast<double>(ny);
    const InPlane d = concentric_disk(a, b);
    const Vec3 aim = center + src.target.frame.u * (d.u * src.target.radius) +
                     src.target.frame.v * (d.v * src.target.radius);
    out.push_back(Ray{from, normalized(aim - from), weight});
  }
}

std::vector<SourceSample> source_sample_rays(const SourceGrid& src, std::uint64_t seed) {
  std::vector<SourceSample> samples;
  if (src.samples_per_pixel <= 0) return samples;
  samples.reserve(src.pixel_count() * static_cast<std::size_t>(src.samples_per_pixel));
  std::vector<Ray> rays;
  const std::size_t blocks = sample_block_count(src);
  for (std::size_t p = 0; p < src.pixel_count(); ++p) {
    rays.clear();
    for (std::size_t b = 0; b < blocks; ++b) sample_pixel_block(src, p, seed, b, rays);
    for (const Ray& r : rays) samples.push_back({p, r});
  }
  return samples;
}

std::optional<Ray> lens_refract(const Ray& ray, const ThinLens& lens, const Vec3& hit) {
  const InPlane p = lens.frame.local(hit);
  const double half = 0.5 * lens.diameter;
  if (p.u * p.u + p.v * p.v > half * half) return std::nullopt;

  const Vec3& d = ray.direction;
  const double dn = dot(d, lens.frame.n);
  // Slopes per unit of travel along the axis, so the lens converges from either side.
  const double along = std::abs(dn);
  const double su = dot(d, lens.frame.u) / along - p.u / lens.focal_length;
  const double sv = dot(d, lens.frame.v) / along - p.v / lens.focal_length;
  const Vec3 out = lens.frame.n * (dn < 0.0 ? -1.0 : 1.0) + lens.frame.u * su + lens.frame.v * sv;
  return Ray{hit, normalized(out), ray.weight};
}

bool aperture_pass(const Vec3& hit, const CircularAperture& ap) {
  const InPlane p = ap.frame.local(hit);
  const double du = p.u - ap.center_offset.u;
  const double dv = p.v - ap.center_offset.v;
  return du * du + dv * dv <= ap.radius * ap.radius;
}

double incidence_angle(const Vec3& direction, const PlaneFrame& frame) {
  return std::acos(std::min(1.0, std::abs(dot(direction, frame.n))));
}

std::optional<Ray> plate_transfer(const Ray& ray, const TransferPlate& plate, const Vec3& hit, PlateMode mode) {
  const Vec3& d = ray.direction;
  const PlaneFrame& f = plate.frame;
  if (mode == PlateMode::Direct) return Ray{hit, d, ray.weight * plate.eff_direct};
  if (incidence_angle(d, f) > deg_to_rad(plate.theta_max_deg)) return std::nullopt;

  switch (mode) {
    case PlateMode::Image:
      return Ray{hit, f.n * (2.0 * dot(d, f.n)) - d, ray.weight * plate.eff_image};
    case PlateMode::GhostU:
      return Ray{hit, d - f.u * (2.0 * dot(d, f.u)), ray.weight * plate.eff_ghost_u};
    case PlateMode::GhostV:
      return Ray{hit, d - f.v * (2.0 * dot(d, f.v)), ray.weight * plate.eff_ghost_v};
    case PlateMode::Direct:
      break;
  }
  return std::nullopt;
}

std::optional<InPlane> screen_hit(const Ray& ray, const Screen& screen) {
  const auto hit = intersect_plane(ray, screen.frame);
  if (!hit) return std::nullopt;
  const InPlane p = screen.frame.local(hit->point);
  if (std::abs(p.u) > screen.half_width_u || std::abs(p.v) > screen.half_width_v) return std::nullopt;
  return p;
}

}  // namespace rpsim
