#include "pointing/sampler.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "pointing/error.hpp"
#include "pointing/rng.hpp"

namespace pointing {
namespace {

SurfacePoint uniform_in_ellipse(const Ellipse& e, Rng& rng) {
  for (;;) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    if (x * x + y * y < 1.0) return e.from_local({x * e.semi_major, y * e.semi_minor});
  }
}

void check_ellipse(const Ellipse& e) {
  if (!(e.semi_minor > 0.0) || !(e.semi_major >= e.semi_minor)) {
    throw Error(ErrorCode::InvalidArgument, "ellipse needs semi_major >= semi_minor > 0");
  }
}

}  // namespace

std::vector<SurfacePoint> sample_positions(const Ellipse& ellipse, const SampleConfig& config) {
  if (config.n == 0 || config.n % 4 != 0) {
    throw Error(ErrorCode::InvalidCount,
                "sample count must be a positive multiple of 4, got " + std::to_string(config.n));
  }
  check_ellipse(ellipse);

  static constexpr std::array<std::pair<double, double>, 4> kQuadrantSigns{
      {{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}}};
  Rng rng(config.seed);
  std::vector<SurfacePoint> out;
  out.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    const auto [su, sv] = kQuadrantSigns[i % 4];
    for (;;) {
      const double x = rng.uniform();
      const double y = rng.uniform();
      if (x * x + y * y < 1.0) {
        out.push_back(ellipse.from_local({su * x * ellipse.semi_major, sv * y * ellipse.semi_minor}));
        break;
      }
    }
  }
  return out;
}

std::vector<SurfacePoint> augment_dispersion(std::vector<SurfacePoint> existing,
                                             const Ellipse& ellipse, std::size_t k,
                                             std::uint64_t seed) {
  if (k == 0) throw Error(ErrorCode::InvalidCount, "dispersion augmentation needs k > 0");
  check_ellipse(ellipse);

  Rng rng(seed);
  existing.reserve(existing.size() + k);
  std::vector<SurfacePoint> pool(kDispersionPool);
  for (std::size_t step = 0; step < k; ++step) {
    for (auto& p : pool) p = uniform_in_ellipse(ellipse, rng);
    double best_score = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      double score = std::numeric_limits<double>::infinity();
      if (existing.empty()) {
        score = surface_distance(pool[i], ellipse.center);
      } else {
        for (const auto& q : existing) score = std::min(score, surface_distance(pool[i], q));
      }
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    existing.push_back(pool[best]);
  }
  return existing;
}

ClutteredPair cluttered_pair_at(const Ellipse& ellipse, double offset, bool tie_positive) {
  check_ellipse(ellipse);
  const double half = ellipse.semi_major;  // D / 2
  if (!(std::abs(offset) <= half * (1.0 + 1e-12))) {
    throw Error(ErrorCode::InvalidArgument, "cluttered offset must lie in [-D/2, D/2]");
  }
  const SurfacePoint axis = ellipse.major_dir();
  const SurfacePoint mid = ellipse.center + axis * offset;
  const SurfacePoint plus = mid + axis * half;
  const SurfacePoint minus = mid - axis * half;
  // A positive offset pulls the minus-side point toward the center.
  const bool minus_nearer = offset > 0.0 || (offset == 0.0 && tie_positive);
  return minus_nearer ? ClutteredPair{minus, plus, offset} : ClutteredPair{plus, minus, offset};
}

ClutteredPair cluttered_pair(const Ellipse& ellipse, std::uint64_t seed) {
  check_ellipse(ellipse);
  Rng rng(seed);
  const double half = ellipse.semi_major;
  const double offset = rng.uniform(-half, half);
  const bool tie_positive = offset == 0.0 ? rng.coin() : true;
  return cluttered_pair_at(ellipse, offset, tie_positive);
}

}  // namespace pointing
