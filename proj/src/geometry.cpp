#include "rpsim/geometry.hpp"

namespace rpsim {

namespace {

Vec3 rotate(const Vec3& p, double ax, double ay) {
  // about x
  const double ca = std::cos(ax), sa = std::sin(ax);
  const Vec3 q{p.x, ca * p.y - sa * p.z, sa * p.y + ca * p.z};
  // then about y
  const double cb = std::cos(ay), sb = std::sin(ay);
  return {cb * q.x + sb * q.z, q.y, -sb * q.x + cb * q.z};
}

}  // namespace

PlaneFrame PlaneFrame::tilted(const Vec3& origin, double tilt_x_deg, double tilt_y_deg) {
  if (tilt_x_deg == 0.0 && tilt_y_deg == 0.0) return PlaneFrame{origin};
  const double ax = deg_to_rad(tilt_x_deg);
  const double ay = deg_to_rad(tilt_y_deg);
  return {origin, rotate({1.0, 0.0, 0.0}, ax, ay), rotate({0.0, 1.0, 0.0}, ax, ay),
          rotate({0.0, 0.0, 1.0}, ax, ay)};
}

std::optional<PlaneHit> intersect_plane(const Ray& ray, const PlaneFrame& frame) {
  const double denom = dot(ray.direction, frame.n);
  if (std::abs(denom) <= kParallelEpsilon) return std::nullopt;
  const double t = dot(frame.origin - ray.origin, frame.n) / denom;
  if (!(t > kAdvanceEpsilon)) return std::nullopt;
  return PlaneHit{t, ray.at(t)};
}

DirectionParts transverse_decompose(const Vec3& d, const PlaneFrame& frame) {
  const Vec3 dn = frame.n * dot(d, frame.n);
  return {dn, d - dn};
}

}  // namespace rpsim
