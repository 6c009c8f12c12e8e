#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pointing/geometry.hpp"

namespace pointing {

/// Minkowski sum of a convex polygon (CCW, one or more vertices) and a disk.
/// One vertex with a positive radius is a disk; zero radius is a plain polygon.
class RoundedPolygon {
 public:
  RoundedPolygon(std::vector<SurfacePoint> hull, double radius);

  static RoundedPolygon disk(const SurfacePoint& center, double radius);
  static RoundedPolygon rectangle(const SurfacePoint& center, double half_u, double half_v,
                                  double yaw = 0.0);

  /// Minkowski sum; the result hull is the convex hull of vertex sums.
  RoundedPolygon operator+(const RoundedPolygon& other) const;
  /// Point reflection through the origin.
  RoundedPolygon reflected() const;

  const std::vector<SurfacePoint>& hull() const { return hull_; }
  double radius() const { return radius_; }

  /// Negative inside, zero on the boundary, positive outside.
  double signed_distance(const SurfacePoint& p) const;
  bool contains(const SurfacePoint& p, double tol = kExactTol) const {
    return signed_distance(p) <= tol;
  }
  bool interior_contains(const SurfacePoint& p, double tol = kExactTol) const {
    return signed_distance(p) < -tol;
  }

  struct Segment {
    SurfacePoint a;
    SurfacePoint b;
  };
  /// Counter-clockwise arc from `from` to `to` (radians, to > from).
  struct Arc {
    SurfacePoint center;
    double radius;
    double from;
    double to;
  };
  using Curve = std::variant<Segment, Arc>;
  std::vector<Curve> boundary() const;

 private:
  std::vector<SurfacePoint> hull_;
  double radius_;
};

/// Points inside every `within` set (closed) and outside every `avoid` set
/// (open, so touching an avoided boundary is allowed).
struct RegionPiece {
  std::vector<RoundedPolygon> within;
  std::vector<RoundedPolygon> avoid;

  bool contains(const SurfacePoint& p, double tol = kExactTol) const;
};

/// A finite union of pieces in surface coordinates.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<RegionPiece> pieces) : pieces_(std::move(pieces)) {}

  static Region rectangle(const SurfacePoint& center, double half_u, double half_v);

  const std::vector<RegionPiece>& pieces() const { return pieces_; }
  bool empty_description() const { return pieces_.empty(); }

  bool contains(const SurfacePoint& p, double tol = kExactTol) const;

  /// Closest member point to `x`; ties go to the lower u, then the lower v.
  /// Nothing when the region is empty.
  std::optional<SurfacePoint> nearest(const SurfacePoint& x) const;

  double distance_to(const SurfacePoint& x) const;

 private:
  std::vector<RegionPiece> pieces_;
};

}  // namespace pointing
