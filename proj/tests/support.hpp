#pragma once

#include <random>
#include <string>

#include "rpsim/geometry.hpp"
#include "rpsim/scene_io.hpp"

namespace rpsim::testing {

inline std::string scene_path(const std::string& name) { return std::string(RPSIM_SCENE_DIR) + "/" + name; }

inline Scene shipped(const std::string& name) { return load_scene(scene_path(name)); }

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return normalized(Vec3{g(rng), g(rng), g(rng)});
}

/// Random unit direction within `max_angle_rad` of `axis` (+z when omitted).
inline Vec3 random_cone(std::mt19937_64& rng, double max_angle_rad, Vec3 axis = {0.0, 0.0, 1.0}) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double cos_max = std::cos(max_angle_rad);
  const double c = 1.0 - uni(rng) * (1.0 - cos_max);
  const double s = std::sqrt(1.0 - c * c);
  const double phi = 2.0 * std::numbers::pi * uni(rng);
  const Vec3 helper = std::abs(axis.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 a = normalized(cross(axis, helper));
  const Vec3 b = cross(axis, a);
  return normalized(axis * c + a * (s * std::cos(phi)) + b * (s * std::sin(phi)));
}

inline PlaneFrame random_frame(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-50.0, 50.0);
  std::uniform_real_distribution<double> tilt(-60.0, 60.0);
  return PlaneFrame::tilted({pos(rng), pos(rng), pos(rng)}, tilt(rng), tilt(rng));
}

}  // namespace rpsim::testing
