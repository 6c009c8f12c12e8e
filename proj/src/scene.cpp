#include "pointing/scene.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "pointing/error.hpp"

namespace pointing {
namespace {

constexpr double kTopTieTol = 1e-6;

// Region of placement centers at which `placed` would interpenetrate `obj`.
RoundedPolygon keep_out(const SceneObject& obj, const Shape& placed) {
  return obj.footprint() + placed.footprint({0.0, 0.0}).reflected();
}

// The support face shrunk by the stability margin; nothing if it vanishes.
std::optional<RoundedPolygon> support_face(const SceneObject& obj) {
  const double m = Scene::kStabilityMargin;
  const Shape& s = obj.shape;
  if (s.is_round()) {
    if (s.radius() <= m) return std::nullopt;
    return RoundedPolygon::disk(obj.pose.position, s.radius() - m);
  }
  if (s.half_u <= m || s.half_v <= m) return std::nullopt;
  return RoundedPolygon::rectangle(obj.pose.position, s.half_u - m, s.half_v - m, obj.pose.yaw);
}

std::optional<RoundedPolygon> table_face(const Plane& surface) {
  const double m = Scene::kStabilityMargin;
  const double hu = 0.5 * surface.width() - m;
  const double hv = 0.5 * surface.depth() - m;
  if (hu <= 0.0 || hv <= 0.0) return std::nullopt;
  return RoundedPolygon::rectangle({0.0, 0.0}, hu, hv);
}

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Mug: return "mug";
    case ShapeKind::Saucer: return "saucer";
    case ShapeKind::Cuboid: return "cuboid";
    case ShapeKind::Cube: return "cube";
  }
  return "unknown";
}

ShapeKind shape_kind_from_string(std::string_view name) {
  for (ShapeKind k : {ShapeKind::Mug, ShapeKind::Saucer, ShapeKind::Cuboid, ShapeKind::Cube}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown shape kind '" + std::string(name) + "'");
}

Shape Shape::mug(double radius, double height) {
  return {ShapeKind::Mug, radius, radius, height};
}

Shape Shape::saucer(double radius, double height) {
  return {ShapeKind::Saucer, radius, radius, height};
}

Shape Shape::cuboid(double half_u, double half_v, double height) {
  return {ShapeKind::Cuboid, half_u, half_v, height};
}

Shape Shape::cube(double edge) {
  return {ShapeKind::Cube, 0.5 * edge, 0.5 * edge, edge};
}

RoundedPolygon Shape::footprint(const SurfacePoint& at, double yaw) const {
  if (is_round()) return RoundedPolygon::disk(at, half_u);
  return RoundedPolygon::rectangle(at, half_u, half_v, yaw);
}

double wrap_yaw(double yaw) {
  double y = std::fmod(yaw + kPi, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y - kPi;
}

Scene::Scene(Plane surface, std::vector<SceneObject> objects, bool gravity)
    : surface_(std::move(surface)), objects_(std::move(objects)), gravity_(gravity) {
  std::set<std::string> ids;
  for (auto& o : objects_) {
    if (o.id.empty()) throw Error(ErrorCode::InvalidScene, "object id must not be empty");
    if (!ids.insert(o.id).second) {
      throw Error(ErrorCode::InvalidScene, "duplicate object id '" + o.id + "'");
    }
    const Shape& s = o.shape;
    if (!(s.half_u > 0.0) || !(s.half_v > 0.0) || !(s.height > 0.0)) {
      throw Error(ErrorCode::InvalidScene, "object '" + o.id + "' has non-positive dimensions");
    }
    if (s.is_round() && s.half_u != s.half_v) {
      throw Error(ErrorCode::InvalidScene, "round object '" + o.id + "' must have equal half extents");
    }
    if (!surface_.in_extent(o.pose.position)) {
      throw Error(ErrorCode::InvalidScene, "object '" + o.id + "' lies outside the surface extent");
    }
    o.pose.yaw = wrap_yaw(o.pose.yaw);
  }

  // Top heights; walking the support chain also detects cycles.
  tops_.assign(objects_.size(), -1.0);
  std::function<double(std::size_t, std::size_t)> top = [&](std::size_t i, std::size_t depth) {
    if (depth > objects_.size()) {
      throw Error(ErrorCode::InvalidScene, "support references form a cycle at '" + objects_[i].id + "'");
    }
    if (tops_[i] >= 0.0) return tops_[i];
    double base = 0.0;
    if (const auto& sup = objects_[i].on_top_of) {
      auto it = std::find_if(objects_.begin(), objects_.end(),
                             [&](const SceneObject& o) { return o.id == *sup; });
      if (it == objects_.end()) {
        throw Error(ErrorCode::InvalidScene,
                    "object '" + objects_[i].id + "' rests on unknown object '" + *sup + "'");
      }
      base = top(static_cast<std::size_t>(it - objects_.begin()), depth + 1);
    }
    return tops_[i] = base + objects_[i].shape.height;
  };
  for (std::size_t i = 0; i < objects_.size(); ++i) top(i, 0);

  for (std::size_t i = 0; i < objects_.size(); ++i) {
    for (std::size_t j = i + 1; j < objects_.size(); ++j) {
      const double bottom_i = tops_[i] - objects_[i].shape.height;
      const double bottom_j = tops_[j] - objects_[j].shape.height;
      const bool vertical_overlap =
          std::min(tops_[i], tops_[j]) - std::max(bottom_i, bottom_j) > kTopTieTol;
      if (!vertical_overlap) continue;
      const double depth = -keep_out(objects_[i], objects_[j].shape)
                                .signed_distance(objects_[j].pose.position);
      if (depth > kCollisionSlack) {
        throw Error(ErrorCode::InvalidScene,
                    "objects '" + objects_[i].id + "' and '" + objects_[j].id + "' interpenetrate");
      }
    }
  }
}

const SceneObject* Scene::find(std::string_view id) const {
  for (const auto& o : objects_) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

double Scene::top_height(std::string_view id) const {
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i].id == id) return tops_[i];
  }
  throw Error(ErrorCode::InvalidArgument, "unknown object '" + std::string(id) + "'");
}

Scene Scene::without(std::string_view id) const {
  std::vector<SceneObject> kept;
  for (const auto& o : objects_) {
    if (o.id == id) continue;
    if (o.on_top_of && *o.on_top_of == id) {
      throw Error(ErrorCode::InvalidScene, "cannot remove '" + std::string(id) + "': it supports '" + o.id + "'");
    }
    kept.push_back(o);
  }
  return Scene(surface_, std::move(kept), gravity_);
}

Scene Scene::with_gravity(bool gravity) const { return Scene(surface_, objects_, gravity); }

bool Scene::operator==(const Scene& other) const {
  return surface_ == other.surface_ && objects_ == other.objects_ && gravity_ == other.gravity_;
}

void validate_task(const Scene& scene, const PickAndPlaceTask& task) {
  if (!scene.find(task.object_id)) {
    throw Error(ErrorCode::InvalidScene, "task object '" + task.object_id + "' is not in the scene");
  }
  if (!scene.surface().in_extent(task.x_init) || !scene.surface().in_extent(task.x_final)) {
    throw Error(ErrorCode::InvalidScene, "task positions must lie inside the surface extent");
  }
}

bool is_stable(const Scene& scene, const Shape& shape, const SurfacePoint& position) {
  if (!scene.surface().in_extent(position)) {
    throw Error(ErrorCode::OutOfExtent, "placement lies outside the surface extent");
  }
  if (!scene.gravity()) return true;

  const SceneObject* support = nullptr;
  double support_top = 0.0;
  int ties = 0;
  for (const auto& obj : scene.objects()) {
    if (!keep_out(obj, shape).interior_contains(position)) continue;
    const double top = scene.top_height(obj.id);
    if (!support || top > support_top + kTopTieTol) {
      support = &obj;
      support_top = top;
      ties = 1;
    } else if (std::abs(top - support_top) <= kTopTieTol) {
      ++ties;
    }
  }
  if (ties > 1) {
    throw Error(ErrorCode::UnknownSupport, "placement overlaps several supports of equal height");
  }
  const auto face = support ? support_face(*support) : table_face(scene.surface());
  return face && face->contains(position);
}

Region stable_region(const Scene& scene, const Shape& shape) {
  const Plane& s = scene.surface();
  if (!scene.gravity()) return Region::rectangle({0.0, 0.0}, 0.5 * s.width(), 0.5 * s.depth());

  const auto extent = RoundedPolygon::rectangle({0.0, 0.0}, 0.5 * s.width(), 0.5 * s.depth());
  std::vector<RegionPiece> pieces;
  if (auto table = table_face(s)) {
    RegionPiece piece{{*table}, {}};
    for (const auto& obj : scene.objects()) piece.avoid.push_back(keep_out(obj, shape));
    pieces.push_back(std::move(piece));
  }
  for (const auto& face_obj : scene.objects()) {
    auto face = support_face(face_obj);
    if (!face) continue;
    const double top = scene.top_height(face_obj.id);
    RegionPiece piece{{*face, extent}, {}};
    for (const auto& obj : scene.objects()) {
      if (obj.id == face_obj.id) continue;
      if (scene.top_height(obj.id) >= top - kTopTieTol) piece.avoid.push_back(keep_out(obj, shape));
    }
    pieces.push_back(std::move(piece));
  }
  return Region(std::move(pieces));
}

SurfacePoint nearest_stable(const Scene& scene, const Shape& shape, const SurfacePoint& x) {
  const auto p = stable_region(scene, shape).nearest(x);
  if (!p) throw Error(ErrorCode::NoStablePlacement, "no stable placement exists for this shape");
  return *p;
}

}  // namespace pointing
