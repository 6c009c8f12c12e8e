#pragma once

// Aggregates behind the golden SVGs.

#include "pointing/plot.hpp"

namespace fixtures {

using namespace pointing;

inline AggregateGroup group(std::string key, SurfacePoint at, std::array<std::int64_t, kLabelCount> counts) {
  AggregateGroup g;
  g.key = std::move(key);
  g.position = at;
  g.x_star = {-0.55, -0.35};
  g.counts = counts;
  return g;
}

inline AggregateTable eight_positions() {
  AggregateTable t;
  t.group_by = GroupBy::Position;
  const SurfacePoint pts[8] = {{-0.45, -0.30}, {-0.62, -0.28}, {-0.66, -0.44}, {-0.47, -0.41},
                               {-0.50, -0.22}, {-0.70, -0.33}, {-0.58, -0.50}, {-0.40, -0.36}};
  const std::array<std::int64_t, kLabelCount> counts[8] = {
      {30, 0, 0, 0, 0}, {20, 5, 5, 0, 0}, {10, 10, 10, 0, 0}, {29, 1, 0, 0, 0},
      {0, 30, 0, 0, 0}, {15, 0, 15, 0, 0}, {0, 0, 30, 0, 0}, {25, 3, 2, 0, 0}};
  for (int i = 0; i < 8; ++i) t.groups.push_back(group("p" + std::to_string(i), pts[i], counts[i]));
  return t;
}

inline AggregateTable distances() {
  AggregateTable t;
  const double d[5][2] = {{0.02, 0.40}, {0.08, 0.40}, {0.15, 0.40}, {0.25, 0.55}, {0.35, 0.55}};
  const std::array<std::int64_t, kLabelCount> counts[5] = {
      {0, 0, 20, 2, 8}, {0, 0, 12, 10, 8}, {0, 0, 5, 22, 3}, {0, 0, 1, 28, 1}, {0, 0, 0, 30, 0}};
  for (int i = 0; i < 5; ++i) {
    auto g = group("d" + std::to_string(i), {0, 0}, counts[i]);
    g.delta = d[i][0];
    g.separation = d[i][1];
    t.groups.push_back(g);
  }
  return t;
}

}  // namespace fixtures
