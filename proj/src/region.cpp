#include "pointing/region.hpp"

#include <algorithm>
#include <limits>

#include "pointing/error.hpp"

namespace pointing {
namespace {

constexpr double kTwoPi = 2.0 * kPi;

std::vector<SurfacePoint> convex_hull(std::vector<SurfacePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const SurfacePoint& a, const SurfacePoint& b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const SurfacePoint& a, const SurfacePoint& b) {
                          return surface_distance(a, b) < 1e-15;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;

  // Andrew's monotone chain, dropping collinear points.
  std::vector<SurfacePoint> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const SurfacePoint& o, const SurfacePoint& a, const SurfacePoint& b) {
    return (a - o).cross(b - o);
  };
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double segment_distance(const SurfacePoint& p, const SurfacePoint& a, const SurfacePoint& b) {
  const SurfacePoint ab = b - a;
  const double len2 = ab.dot(ab);
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return surface_distance(p, a + ab * t);
}

SurfacePoint polar(const SurfacePoint& c, double r, double angle) {
  return {c.u + r * std::cos(angle), c.v + r * std::sin(angle)};
}

// Angle lifted into [from, from + 2pi).
double lift(double angle, double from) {
  double a = std::fmod(angle - from, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return from + a;
}

bool on_arc(const RoundedPolygon::Arc& arc, const SurfacePoint& p) {
  const double a = lift(std::atan2(p.v - arc.center.v, p.u - arc.center.u), arc.from);
  return a <= arc.to + 1e-12;
}

struct Closest {
  SurfacePoint operator()(const RoundedPolygon::Segment& s) const {
    const SurfacePoint ab = s.b - s.a;
    const double len2 = ab.dot(ab);
    const double t = len2 > 0.0 ? std::clamp((x - s.a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return s.a + ab * t;
  }
  SurfacePoint operator()(const RoundedPolygon::Arc& arc) const {
    const SurfacePoint d = x - arc.center;
    if (d.norm() == 0.0) return polar(arc.center, arc.radius, arc.from);
    const double angle = std::atan2(d.v, d.u);
    if (lift(angle, arc.from) <= arc.to) return polar(arc.center, arc.radius, angle);
    const SurfacePoint a = polar(arc.center, arc.radius, arc.from);
    const SurfacePoint b = polar(arc.center, arc.radius, arc.to);
    return surface_distance(a, x) <= surface_distance(b, x) ? a : b;
  }
  SurfacePoint x;
};

void endpoints(const RoundedPolygon::Curve& c, std::vector<SurfacePoint>& out) {
  if (const auto* s = std::get_if<RoundedPolygon::Segment>(&c)) {
    out.push_back(s->a);
    out.push_back(s->b);
  } else {
    const auto& arc = std::get<RoundedPolygon::Arc>(c);
    out.push_back(polar(arc.center, arc.radius, arc.from));
    out.push_back(polar(arc.center, arc.radius, arc.to));
  }
}

// Intersections of the supporting line/circle of each curve, filtered to the
// curves themselves.
void line_circle(const SurfacePoint& a, const SurfacePoint& b, const SurfacePoint& c, double r,
                 std::vector<SurfacePoint>& out) {
  const SurfacePoint d = b - a;
  const SurfacePoint f = a - c;
  const double qa = d.dot(d);
  if (qa == 0.0) return;
  const double qb = 2.0 * f.dot(d);
  const double qc = f.dot(f) - r * r;
  double disc = qb * qb - 4.0 * qa * qc;
  if (disc < -1e-18) return;
  disc = std::sqrt(std::max(disc, 0.0));
  for (double t : {(-qb - disc) / (2.0 * qa), (-qb + disc) / (2.0 * qa)}) {
    if (t >= -1e-12 && t <= 1.0 + 1e-12) out.push_back(a + d * std::clamp(t, 0.0, 1.0));
  }
}

void intersect(const RoundedPolygon::Curve& c1, const RoundedPolygon::Curve& c2,
               std::vector<SurfacePoint>& out) {
  using Segment = RoundedPolygon::Segment;
  using Arc = RoundedPolygon::Arc;
  std::vector<SurfacePoint> pts;
  const auto* s1 = std::get_if<Segment>(&c1);
  const auto* s2 = std::get_if<Segment>(&c2);
  const auto* a1 = std::get_if<Arc>(&c1);
  const auto* a2 = std::get_if<Arc>(&c2);
  if (s1 && s2) {
    const SurfacePoint r = s1->b - s1->a;
    const SurfacePoint s = s2->b - s2->a;
    const double denom = r.cross(s);
    if (std::abs(denom) < 1e-18) return;
    const SurfacePoint qp = s2->a - s1->a;
    const double t = qp.cross(s) / denom;
    const double u = qp.cross(r) / denom;
    if (t >= -1e-12 && t <= 1.0 + 1e-12 && u >= -1e-12 && u <= 1.0 + 1e-12) {
      out.push_back(s1->a + r * std::clamp(t, 0.0, 1.0));
    }
    return;
  }
  if (s1 && a2) {
    line_circle(s1->a, s1->b, a2->center, a2->radius, pts);
    for (const auto& p : pts) if (on_arc(*a2, p)) out.push_back(p);
    return;
  }
  if (a1 && s2) {
    intersect(c2, c1, out);
    return;
  }
  const SurfacePoint d = a2->center - a1->center;
  const double dist = d.norm();
  if (dist == 0.0 || dist > a1->radius + a2->radius + 1e-12 ||
      dist < std::abs(a1->radius - a2->radius) - 1e-12) {
    return;
  }
  const double along = (dist * dist + a1->radius * a1->radius - a2->radius * a2->radius) / (2.0 * dist);
  const double h = std::sqrt(std::max(a1->radius * a1->radius - along * along, 0.0));
  const SurfacePoint unit = d * (1.0 / dist);
  const SurfacePoint perp{-unit.v, unit.u};
  const SurfacePoint mid = a1->center + unit * along;
  for (const auto& p : {mid + perp * h, mid - perp * h}) {
    if (on_arc(*a1, p) && on_arc(*a2, p)) out.push_back(p);
  }
}

}  // namespace

RoundedPolygon::RoundedPolygon(std::vector<SurfacePoint> hull, double radius)
    : hull_(convex_hull(std::move(hull))), radius_(radius) {
  if (hull_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "rounded polygon needs at least one vertex");
  }
  if (!(radius >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rounding radius must be non-negative");
  }
}

RoundedPolygon RoundedPolygon::disk(const SurfacePoint& center, double radius) {
  return RoundedPolygon({center}, radius);
}

RoundedPolygon RoundedPolygon::rectangle(const SurfacePoint& center, double half_u,
                                         double half_v, double yaw) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  std::vector<SurfacePoint> pts;
  for (const auto& [du, dv] : {std::pair{-half_u, -half_v}, std::pair{half_u, -half_v},
                               std::pair{half_u, half_v}, std::pair{-half_u, half_v}}) {
    pts.push_back({center.u + c * du - s * dv, center.v + s * du + c * dv});
  }
  return RoundedPolygon(std::move(pts), 0.0);
}

RoundedPolygon RoundedPolygon::operator+(const RoundedPolygon& other) const {
  std::vector<SurfacePoint> sums;
  sums.reserve(hull_.size() * other.hull_.size());
  for (const auto& a : hull_) {
    for (const auto& b : other.hull_) sums.push_back(a + b);
  }
  return RoundedPolygon(std::move(sums), radius_ + other.radius_);
}

RoundedPolygon RoundedPolygon::reflected() const {
  std::vector<SurfacePoint> pts;
  pts.reserve(hull_.size());
  for (const auto& p : hull_) pts.push_back({-p.u, -p.v});
  return RoundedPolygon(std::move(pts), radius_);
}

double RoundedPolygon::signed_distance(const SurfacePoint& p) const {
  const std::size_t n = hull_.size();
  if (n == 1) return surface_distance(p, hull_[0]) - radius_;
  if (n == 2) return segment_distance(p, hull_[0], hull_[1]) - radius_;

  bool inside = true;
  double depth = std::numeric_limits<double>::infinity();
  double outside = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const SurfacePoint& a = hull_[i];
    const SurfacePoint& b = hull_[(i + 1) % n];
    const SurfacePoint edge = b - a;
    const double side = edge.cross(p - a) / edge.norm();
    if (side < 0.0) inside = false;
    depth = std::min(depth, side);
    outside = std::min(outside, segment_distance(p, a, b));
  }
  return (inside ? -depth : outside) - radius_;
}

std::vector<RoundedPolygon::Curve> RoundedPolygon::boundary() const {
  std::vector<Curve> out;
  const std::size_t n = hull_.size();
  if (n == 1) {
    if (radius_ > 0.0) out.emplace_back(Arc{hull_[0], radius_, 0.0, kTwoPi});
    return out;
  }
  std::vector<SurfacePoint> normals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SurfacePoint edge = hull_[(i + 1) % n] - hull_[i];
    normals[i] = SurfacePoint{edge.v, -edge.u} * (1.0 / edge.norm());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const SurfacePoint& a = hull_[i];
    const SurfacePoint& b = hull_[(i + 1) % n];
    out.emplace_back(Segment{a + normals[i] * radius_, b + normals[i] * radius_});
    if (radius_ > 0.0) {
      const SurfacePoint& next = normals[(i + 1) % n];
      const double from = std::atan2(normals[i].v, normals[i].u);
      const double to = lift(std::atan2(next.v, next.u), from);
      out.emplace_back(Arc{b, radius_, from, to});
    }
  }
  return out;
}

bool RegionPiece::contains(const SurfacePoint& p, double tol) const {
  for (const auto& w : within) {
    if (!w.contains(p, tol)) return false;
  }
  for (const auto& a : avoid) {
    if (a.interior_contains(p, tol)) return false;
  }
  return true;
}

Region Region::rectangle(const SurfacePoint& center, double half_u, double half_v) {
  return Region({RegionPiece{{RoundedPolygon::rectangle(center, half_u, half_v)}, {}}});
}

bool Region::contains(const SurfacePoint& p, double tol) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const RegionPiece& piece) { return piece.contains(p, tol); });
}

std::optional<SurfacePoint> Region::nearest(const SurfacePoint& x) const {
  // The nearest point of a region bounded by segments and arcs is x itself, a
  // foot on one boundary curve, a curve endpoint, or a crossing of two curves.
  std::optional<SurfacePoint> best;
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](const SurfacePoint& c) {
    const double d = surface_distance(c, x);
    if (d < best_d - 1e-12 ||
        (d <= best_d + 1e-12 && (c.u < best->u || (c.u == best->u && c.v < best->v)))) {
      best = c;
      best_d = std::min(d, best_d);
    }
  };

  for (const auto& piece : pieces_) {
    if (piece.contains(x)) {
      consider(x);
      continue;
    }
    std::vector<RoundedPolygon::Curve> curves;
    for (const auto& w : piece.within) {
      for (auto& c : w.boundary()) curves.push_back(std::move(c));
    }
    for (const auto& a : piece.avoid) {
      for (auto& c : a.boundary()) curves.push_back(std::move(c));
    }
    std::vector<SurfacePoint> candidates;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      candidates.push_back(std::visit(Closest{x}, curves[i]));
      endpoints(curves[i], candidates);
      for (std::size_t j = i + 1; j < curves.size(); ++j) intersect(curves[i], curves[j], candidates);
    }
    for (const auto& c : candidates) {
      if (piece.contains(c)) consider(c);
    }
  }
  return best;
}

double Region::distance_to(const SurfacePoint& x) const {
  const auto p = nearest(x);
  return p ? surface_distance(*p, x) : std::numeric_limits<double>::infinity();
}

}  // namespace pointing
