#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pointing/geometry.hpp"

namespace pointing {

struct SampleConfig {
  std::size_t n = 8;
  std::uint64_t seed = 0;
  double cone_vertex_angle = deg_to_rad(45.0);
};

/// Candidates drawn per greedy dispersion step.
inline constexpr std::size_t kDispersionPool = 512;

/// n points inside the ellipse, n/4 in each quadrant of its axes, each uniform
/// over its quadrant (rejection from the quadrant's bounding box). Output is
/// interleaved q1, q2, q3, q4, q1, ... where q1 is (+major, +minor) and the
/// rest follow counter-clockwise. Throws InvalidCount unless n > 0 and n % 4 == 0.
std::vector<SurfacePoint> sample_positions(const Ellipse& ellipse, const SampleConfig& config);

/// Appends k points, each the maximin pick from a fresh pool of 512 uniform
/// candidates inside the ellipse. An empty starting set seeds with the pool
/// point farthest from the center.
std::vector<SurfacePoint> augment_dispersion(std::vector<SurfacePoint> existing,
                                             const Ellipse& ellipse, std::size_t k,
                                             std::uint64_t seed);

struct ClutteredPair {
  SurfacePoint x_object;      // nearer to the section center
  SurfacePoint x_distractor;  // farther from the section center
  double offset = 0.0;        // midpoint shift along the major axis, |offset| <= D/2

  bool operator==(const ClutteredPair&) const = default;
};

/// Two points a section diameter D apart on the major diametric line, their
/// midpoint shifted by offset ~ U[-D/2, D/2]. At an exact tie the next draw
/// decides the labels.
ClutteredPair cluttered_pair(const Ellipse& ellipse, std::uint64_t seed);

/// Deterministic core of cluttered_pair. `tie_positive` labels an exact tie as
/// if the offset were positive.
ClutteredPair cluttered_pair_at(const Ellipse& ellipse, double offset, bool tie_positive = true);

}  // namespace pointing
