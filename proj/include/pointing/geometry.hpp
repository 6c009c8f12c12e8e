#pragma once

#include <cmath>
#include <optional>

namespace pointing {

inline constexpr double kPi = 3.14159265358979323846;
/// Tolerance for algebraic identities (unit vectors, on-plane tests).
inline constexpr double kExactTol = 1e-9;
/// Tolerance for fitted or sampled geometry.
inline constexpr double kFitTol = 1e-6;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  bool operator==(const Vec3&) const = default;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Throws InvalidArgument for a zero or non-finite vector.
Vec3 normalized(const Vec3& v);

/// A position in the workspace, meters.
using Point3 = Vec3;

/// Coordinates in a plane's (axis_u, axis_v) frame, meters.
struct SurfacePoint {
  double u = 0.0;
  double v = 0.0;

  SurfacePoint operator+(const SurfacePoint& o) const { return {u + o.u, v + o.v}; }
  SurfacePoint operator-(const SurfacePoint& o) const { return {u - o.u, v - o.v}; }
  SurfacePoint operator*(double s) const { return {u * s, v * s}; }
  bool operator==(const SurfacePoint&) const = default;

  double dot(const SurfacePoint& o) const { return u * o.u + v * o.v; }
  double cross(const SurfacePoint& o) const { return u * o.v - v * o.u; }
  double norm() const { return std::hypot(u, v); }
};

double surface_distance(const SurfacePoint& a, const SurfacePoint& b);

class Ray {
 public:
  /// `direction` is normalized on construction.
  Ray(const Point3& origin, const Vec3& direction);

  static Ray through(const Point3& origin, const Point3& target) {
    return Ray(origin, target - origin);
  }

  const Point3& origin() const { return origin_; }
  const Vec3& direction() const { return direction_; }
  Point3 at(double t) const { return origin_ + direction_ * t; }
  bool operator==(const Ray&) const = default;

 private:
  Point3 origin_;
  Vec3 direction_;
};

/// A plane with an orthonormal in-plane frame and a rectangular extent
/// centered on the anchor: u in [-width/2, width/2], v in [-depth/2, depth/2].
class Plane {
 public:
  Plane(const Point3& anchor, const Vec3& axis_u, const Vec3& axis_v,
        double width, double depth);

  /// z = anchor.z with u along +x and v along +y.
  static Plane horizontal(const Point3& anchor, double width, double depth);

  const Point3& anchor() const { return anchor_; }
  const Vec3& normal() const { return normal_; }
  const Vec3& axis_u() const { return axis_u_; }
  const Vec3& axis_v() const { return axis_v_; }
  double width() const { return width_; }
  double depth() const { return depth_; }

  double signed_distance(const Point3& p) const { return (p - anchor_).dot(normal_); }
  bool in_extent(const SurfacePoint& p, double tol = kExactTol) const {
    return std::abs(p.u) <= 0.5 * width_ + tol && std::abs(p.v) <= 0.5 * depth_ + tol;
  }
  bool operator==(const Plane&) const = default;

 private:
  Point3 anchor_;
  Vec3 normal_;
  Vec3 axis_u_;
  Vec3 axis_v_;
  double width_;
  double depth_;
};

/// Ellipse in surface coordinates; `orientation` is the angle of the major
/// axis from axis_u, normalized to [-pi/2, pi/2).
struct Ellipse {
  SurfacePoint center;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double orientation = 0.0;

  SurfacePoint major_dir() const { return {std::cos(orientation), std::sin(orientation)}; }
  SurfacePoint minor_dir() const { return {-std::sin(orientation), std::cos(orientation)}; }
  /// Coordinates along (major, minor) relative to the center.
  SurfacePoint to_local(const SurfacePoint& p) const;
  SurfacePoint from_local(const SurfacePoint& local) const;
  /// (x/a)^2 + (y/b)^2 in the ellipse frame; < 1 inside.
  double level(const SurfacePoint& p) const;
  double diameter() const { return 2.0 * semi_major; }
  bool operator==(const Ellipse&) const = default;
};

std::optional<Point3> ray_plane_intersect(const Ray& ray, const Plane& plane);

/// Ellipse bounding the intersection of the cone (apex = axis origin, full
/// aperture `vertex_angle`) with the plane. Throws UnboundedSection when the
/// section is not a bounded ellipse on the forward nappe.
Ellipse cone_plane_section(const Ray& axis, double vertex_angle, const Plane& plane);

/// Throws OffPlane when `p` is farther than 1e-6 from the plane.
SurfacePoint to_surface_frame(const Point3& p, const Plane& plane);
Point3 from_surface_frame(const SurfacePoint& sp, const Plane& plane);

}  // namespace pointing
