#pragma once

#include <cmath>
#include <numbers>
#include <optional>

namespace rpsim {

// All lengths are millimeters.
inline constexpr double kAdvanceEpsilon = 1e-9;
inline constexpr double kParallelEpsilon = 1e-12;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// In-plane coordinates along a frame's (u, v) axes.
struct InPlane {
  double u = 0.0;
  double v = 0.0;
  constexpr bool operator==(const InPlane&) const = default;
};

/// A plane with an orthonormal right-handed triad {u, v, n}.
struct PlaneFrame {
  Vec3 origin;
  Vec3 u{1.0, 0.0, 0.0};
  Vec3 v{0.0, 1.0, 0.0};
  Vec3 n{0.0, 0.0, 1.0};

  /// Frame whose axes are the global axes rotated first about x by `tilt_x_deg`,
  /// then about y by `tilt_y_deg`.
  static PlaneFrame tilted(const Vec3& origin, double tilt_x_deg, double tilt_y_deg);
  static PlaneFrame axial(double z) { return PlaneFrame{Vec3{0.0, 0.0, z}}; }

  InPlane local(const Vec3& p) const {
    const Vec3 d = p - origin;
    return {dot(d, u), dot(d, v)};
  }
  Vec3 at(const InPlane& p) const { return origin + u * p.u + v * p.v; }
  PlaneFrame shifted(const InPlane& p) const { return {at(p), u, v, n}; }
  PlaneFrame advanced(double along_normal) const { return {origin + n * along_normal, u, v, n}; }

  bool operator==(const PlaneFrame&) const = default;
};

/// Declarative position of a plane: where it sits and how it is tilted (degrees).
struct Placement {
  Vec3 position;
  double tilt_x_deg = 0.0;
  double tilt_y_deg = 0.0;

  PlaneFrame frame() const { return PlaneFrame::tilted(position, tilt_x_deg, tilt_y_deg); }
  bool operator==(const Placement&) const = default;
};

struct Ray {
  Vec3 origin;
  Vec3 direction{0.0, 0.0, 1.0};
  double weight = 1.0;

  Vec3 at(double t) const { return origin + direction * t; }
};

struct PlaneHit {
  double t = 0.0;
  Vec3 point;
};

/// Forward intersection with an infinite plane. Empty when the ray is parallel to
/// the plane or the plane lies no further than kAdvanceEpsilon ahead.
std::optional<PlaneHit> intersect_plane(const Ray& ray, const PlaneFrame& frame);

struct DirectionParts {
  Vec3 normal;
  Vec3 transverse;
};

DirectionParts transverse_decompose(const Vec3& d, const PlaneFrame& frame);

}  // namespace rpsim
