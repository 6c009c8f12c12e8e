#include <doctest.h>

#include <random>

#include "pointing/region.hpp"
#include "support.hpp"

using namespace pointing;

namespace {

// Signed distance by sampling the boundary densely; sign from the hull
// half-planes offset by the radius.
double brute_distance(const RoundedPolygon& p, const SurfacePoint& x) {
  double best = 1e300;
  const auto& h = p.hull();
  const std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i) {
    const SurfacePoint a = h[i], b = h[(i + 1) % n];
    for (int k = 0; k <= 2000; ++k) {
      const double t = k / 2000.0;
      const SurfacePoint q{a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)};
      best = std::min(best, surface_distance(q, x));
    }
  }
  return best - p.radius();
}

}  // namespace

TEST_SUITE("region") {

TEST_CASE("rectangle and disk membership") {
  const auto r = RoundedPolygon::rectangle({1, 1}, 0.5, 0.25);
  CHECK(r.contains({1.5, 1.25}));
  CHECK_FALSE(r.interior_contains({1.5, 1.25}));
  CHECK(r.interior_contains({1.2, 1.1}));
  CHECK_FALSE(r.contains({1.51, 1.0}));
  CHECK(r.signed_distance({1, 1}) == doctest::Approx(-0.25));
  CHECK(r.signed_distance({2, 1}) == doctest::Approx(0.5));

  const auto d = RoundedPolygon::disk({0, 0}, 0.3);
  CHECK(d.signed_distance({0, 0}) == doctest::Approx(-0.3));
  CHECK(d.signed_distance({0.6, 0.8}) == doctest::Approx(0.7));
}

TEST_CASE("rotated rectangle") {
  const auto r = RoundedPolygon::rectangle({0, 0}, 1.0, 0.1, kPi / 4);
  CHECK(r.contains({0.7, 0.7}));
  CHECK_FALSE(r.contains({0.7, -0.7}));
  CHECK(r.hull().size() == 4);
}

TEST_CASE("signed distance of rounded polygons") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int shape = 0; shape < 20; ++shape) {
    std::vector<SurfacePoint> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({d(gen), d(gen)});
    const RoundedPolygon p(pts, 0.1 * std::abs(d(gen)));
    for (int i = 0; i < 50; ++i) {
      const SurfacePoint x{2 * d(gen), 2 * d(gen)};
      const double sd = p.signed_distance(x);
      // Outside, the brute force is the true distance; inside it bounds depth.
      if (sd > 0) CHECK(sd == doctest::Approx(brute_distance(p, x)).epsilon(1e-5));
    }
  }
}

TEST_CASE("Minkowski sum of boxes and disks") {
  const auto a = RoundedPolygon::rectangle({0.2, 0.1}, 0.1, 0.05);
  const auto b = RoundedPolygon::disk({0, 0}, 0.04);
  const auto s = a + b;
  CHECK(s.radius() == doctest::Approx(0.04));
  // A point is in A + B iff its distance to A is at most B's radius.
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> d(-0.2, 0.5);
  for (int i = 0; i < 5000; ++i) {
    const SurfacePoint x{d(gen), d(gen)};
    const double qa = std::max(0.0, std::abs(x.u - 0.2) - 0.1);
    const double qb = std::max(0.0, std::abs(x.v - 0.1) - 0.05);
    const bool expected = std::hypot(qa, qb) <= 0.04;
    if (std::abs(std::hypot(qa, qb) - 0.04) < 1e-9) continue;
    CHECK(s.contains(x) == expected);
  }
  const auto refl = a.reflected();
  CHECK(refl.contains({-0.2, -0.1}));
  CHECK_FALSE(refl.contains({0.2, 0.1}));
}

TEST_CASE("region with keep-outs: nearest point matches a grid search") {
  const RegionPiece table{{RoundedPolygon::rectangle({0, 0}, 0.5, 0.4)},
                          {RoundedPolygon::rectangle({0.1, 0}, 0.15, 0.1) + RoundedPolygon::disk({0, 0}, 0.05),
                           RoundedPolygon::disk({-0.25, 0.2}, 0.08)}};
  const RegionPiece top{{RoundedPolygon::rectangle({0.1, 0}, 0.1, 0.05)}, {}};
  const Region region({table, top});

  std::vector<SurfacePoint> members;
  for (double u = -0.5; u <= 0.5 + 1e-12; u += 0.002) {
    for (double v = -0.4; v <= 0.4 + 1e-12; v += 0.002) {
      if (region.contains({u, v})) members.push_back({u, v});
    }
  }
  REQUIRE(!members.empty());
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> du(-0.6, 0.6), dv(-0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    const SurfacePoint x{du(gen), dv(gen)};
    const auto near = region.nearest(x);
    REQUIRE(near);
    CHECK(region.contains(*near, 1e-7));
    double best = 1e300;
    for (const auto& m : members) best = std::min(best, surface_distance(m, x));
    const double got = surface_distance(*near, x);
    CHECK(got <= best + 1e-9);
    CHECK(got >= best - 0.0015);
    CHECK(region.distance_to(x) == doctest::Approx(got));
  }
}

TEST_CASE("points inside the region are their own nearest point") {
  const Region r = Region::rectangle({0, 0}, 1, 1);
  CHECK(*r.nearest({0.3, -0.2}) == SurfacePoint{0.3, -0.2});
  CHECK(r.distance_to({0.3, -0.2}) == 0.0);
  const auto n = r.nearest({2, 0.5});
  CHECK(n->u == doctest::Approx(1.0));
  CHECK(n->v == doctest::Approx(0.5));
}

TEST_CASE("empty region") {
  const Region empty;
  CHECK_FALSE(empty.nearest({0, 0}));
  const Region hollow({RegionPiece{{RoundedPolygon::disk({0, 0}, 0.1)}, {RoundedPolygon::disk({0, 0}, 0.2)}}});
  CHECK_FALSE(hollow.nearest({0.5, 0}));
  CHECK_FALSE(hollow.contains({0, 0}));
}

TEST_CASE("equidistant nearest points break ties toward lower u") {
  // A region of two separate disks, x exactly between them.
  const Region r({RegionPiece{{RoundedPolygon::disk({-1, 0}, 0.5)}, {}},
                  RegionPiece{{RoundedPolygon::disk({1, 0}, 0.5)}, {}}});
  const auto n = r.nearest({0, 0});
  REQUIRE(n);
  CHECK(n->u == doctest::Approx(-0.5));
}

}
