#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointing/geometry.hpp"
#include "pointing/region.hpp"

namespace pointing {

enum class ShapeKind { Mug, Saucer, Cuboid, Cube };

std::string_view to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(std::string_view name);

/// Footprint plus height. Round kinds (mug, saucer) use `half_u` as the radius
/// and keep `half_v == half_u`. Mugs are their bounding cylinder.
struct Shape {
  ShapeKind kind = ShapeKind::Cube;
  double half_u = 0.0;
  double half_v = 0.0;
  double height = 0.0;

  static Shape mug(double radius = 0.04, double height = 0.10);
  static Shape saucer(double radius = 0.07, double height = 0.02);
  static Shape cuboid(double half_u, double half_v, double height);
  static Shape cube(double edge = 0.06);

  bool is_round() const { return kind == ShapeKind::Mug || kind == ShapeKind::Saucer; }
  double radius() const { return half_u; }
  RoundedPolygon footprint(const SurfacePoint& at, double yaw = 0.0) const;
  bool operator==(const Shape&) const = default;
};

struct Pose2D {
  SurfacePoint position;
  double yaw = 0.0;  // [-pi, pi)

  bool operator==(const Pose2D&) const = default;
};

double wrap_yaw(double yaw);

struct SceneObject {
  std::string id;
  Shape shape;
  Pose2D pose;
  /// Id of the object this one rests on; nothing means the table.
  std::optional<std::string> on_top_of;

  RoundedPolygon footprint() const { return shape.footprint(pose.position, pose.yaw); }
  bool operator==(const SceneObject&) const = default;
};

/// Immutable workspace contents. Construction validates ids, supports,
/// extents, and rejects footprints interpenetrating by more than 1 mm.
class Scene {
 public:
  static constexpr double kStabilityMargin = 0.005;
  static constexpr double kCollisionSlack = 0.001;

  Scene(Plane surface, std::vector<SceneObject> objects, bool gravity);

  const Plane& surface() const { return surface_; }
  const std::vector<SceneObject>& objects() const { return objects_; }
  bool gravity() const { return gravity_; }

  const SceneObject* find(std::string_view id) const;
  /// Height of the object's top face above the surface.
  double top_height(std::string_view id) const;

  Scene without(std::string_view id) const;
  Scene with_gravity(bool gravity) const;

  bool operator==(const Scene&) const;

 private:
  Plane surface_;
  std::vector<SceneObject> objects_;
  std::vector<double> tops_;
  bool gravity_;
};

struct PickAndPlaceTask {
  std::string object_id;
  SurfacePoint x_init;
  SurfacePoint x_final;

  bool operator==(const PickAndPlaceTask&) const = default;
};

/// Throws InvalidScene when the task references a missing object or a
/// position outside the surface extent.
void validate_task(const Scene& scene, const PickAndPlaceTask& task);

/// Whether `shape` placed with its center of mass over `position` would rest
/// stably. The support is the highest object whose footprint the placed
/// footprint overlaps, or the table; the center of mass must lie within that
/// support face shrunk by 5 mm. Always true without gravity.
/// Throws OutOfExtent when `position` is off the surface and UnknownSupport
/// when two overlapped supports share the highest top face.
bool is_stable(const Scene& scene, const Shape& shape, const SurfacePoint& position);

/// The set of positions where is_stable holds (ambiguous supports excluded).
Region stable_region(const Scene& scene, const Shape& shape);

/// Closest stable placement to `x`; throws NoStablePlacement when none.
SurfacePoint nearest_stable(const Scene& scene, const Shape& shape, const SurfacePoint& x);

}  // namespace pointing
