#include "pointing/geometry.hpp"

#include <string>

#include "pointing/error.hpp"

namespace pointing {

Vec3 normalized(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  return v / n;
}

double surface_distance(const SurfacePoint& a, const SurfacePoint& b) {
  return std::hypot(a.u - b.u, a.v - b.v);
}

Ray::Ray(const Point3& origin, const Vec3& direction)
    : origin_(origin), direction_(normalized(direction)) {
  if (!origin.is_finite()) {
    throw Error(ErrorCode::InvalidArgument, "ray origin must be finite");
  }
}

Plane::Plane(const Point3& anchor, const Vec3& axis_u, const Vec3& axis_v,
             double width, double depth)
    : anchor_(anchor),
      normal_(normalized(axis_u.cross(axis_v))),
      axis_u_(axis_u),
      axis_v_(axis_v),
      width_(width),
      depth_(depth) {
  if (!anchor.is_finite()) {
    throw Error(ErrorCode::InvalidArgument, "plane anchor must be finite");
  }
  if (std::abs(axis_u.norm() - 1.0) > kExactTol || std::abs(axis_v.norm() - 1.0) > kExactTol ||
      std::abs(axis_u.dot(axis_v)) > kExactTol) {
    throw Error(ErrorCode::InvalidArgument, "plane axes must be orthonormal");
  }
  if (!(width > 0.0) || !(depth > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "plane extent must be positive");
  }
}

Plane Plane::horizontal(const Point3& anchor, double width, double depth) {
  return Plane(anchor, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, width, depth);
}

SurfacePoint Ellipse::to_local(const SurfacePoint& p) const {
  const SurfacePoint d = p - center;
  return {d.dot(major_dir()), d.dot(minor_dir())};
}

SurfacePoint Ellipse::from_local(const SurfacePoint& local) const {
  return center + major_dir() * local.u + minor_dir() * local.v;
}

double Ellipse::level(const SurfacePoint& p) const {
  const SurfacePoint l = to_local(p);
  const double x = l.u / semi_major;
  const double y = l.v / semi_minor;
  return x * x + y * y;
}

std::optional<Point3> ray_plane_intersect(const Ray& ray, const Plane& plane) {
  const double denom = ray.direction().dot(plane.normal());
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const double t = (plane.anchor() - ray.origin()).dot(plane.normal()) / denom;
  if (!(t > 0.0)) return std::nullopt;
  return ray.at(t);
}

Ellipse cone_plane_section(const Ray& axis, double vertex_angle, const Plane& plane) {
  if (!(vertex_angle > 0.0) || !(vertex_angle < kPi)) {
    throw Error(ErrorCode::InvalidArgument, "vertex angle must lie in (0, pi)");
  }
  // Work with the normal facing the apex so the apex height is positive.
  double height = plane.signed_distance(axis.origin());
  Vec3 up = plane.normal();
  if (height < 0.0) {
    height = -height;
    up = -up;
  }
  if (height < kExactTol) {
    throw Error(ErrorCode::UnboundedSection, "cone apex lies on the plane");
  }

  const double half = 0.5 * vertex_angle;
  const double c = std::cos(half);
  const double sin_half = std::sin(half);
  const Vec3& a = axis.direction();
  const double k = -a.dot(up);  // cosine of the axis tilt from the downward normal
  const SurfacePoint e{a.dot(plane.axis_u()), a.dot(plane.axis_v())};
  const double s = e.norm();  // sine of the tilt
  // The steepest generator makes angle tilt + half with the downward normal.
  if (!(k > 0.0) || !(k * c - s * sin_half > 1e-12)) {
    throw Error(ErrorCode::UnboundedSection,
                "a cone generator is parallel to or diverges from the plane");
  }

  // In-plane offsets w from the apex foot satisfy (e.w + h k)^2 = c^2 (|w|^2 + h^2).
  const double gap = c * c - s * s;
  const SurfacePoint foot = to_surface_frame(axis.origin() - up * height, plane);

  Ellipse out;
  out.center = foot + e * (height * k / gap);
  out.semi_major = height * c * sin_half / gap;
  out.semi_minor = height * sin_half / std::sqrt(gap);
  double angle = s > 1e-15 ? std::atan2(e.v, e.u) : 0.0;
  if (angle >= 0.5 * kPi) angle -= kPi;
  if (angle < -0.5 * kPi) angle += kPi;
  out.orientation = angle;
  return out;
}

SurfacePoint to_surface_frame(const Point3& p, const Plane& plane) {
  const double off = plane.signed_distance(p);
  if (!(std::abs(off) <= kFitTol)) {
    throw Error(ErrorCode::OffPlane,
                "point is " + std::to_string(off) + " m off the plane");
  }
  const Vec3 d = p - plane.anchor();
  return {d.dot(plane.axis_u()), d.dot(plane.axis_v())};
}

Point3 from_surface_frame(const SurfacePoint& sp, const Plane& plane) {
  return plane.anchor() + plane.axis_u() * sp.u + plane.axis_v() * sp.v;
}

}  // namespace pointing
