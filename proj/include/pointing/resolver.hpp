#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pointing/geometry.hpp"
#include "pointing/region.hpp"
#include "pointing/scene.hpp"

namespace pointing {

enum class Intent { Referential, Locating };

std::string_view to_string(Intent intent);
Intent intent_from_string(std::string_view name);

/// A gesture and its target x* = ray ∩ surface, in surface coordinates.
struct PointingAct {
  Ray ray;
  Intent intent;
  SurfacePoint target;

  /// Throws NoPointingTarget if the ray misses the plane.
  static PointingAct make(const Ray& ray, Intent intent, const Plane& surface);
  bool operator==(const PointingAct&) const = default;
};

struct DiscreteCandidate {
  std::string id;
  SurfacePoint position;
};

struct CandidateSet {
  std::variant<std::vector<DiscreteCandidate>, Region> kind;

  bool is_discrete() const { return std::holds_alternative<std::vector<DiscreteCandidate>>(kind); }
  const std::vector<DiscreteCandidate>& discrete() const {
    return std::get<std::vector<DiscreteCandidate>>(kind);
  }
  const Region& region() const { return std::get<Region>(kind); }
};

struct ResolverConfig {
  double epsilon = 0.10;
  /// Width of the ambiguous band past theta + epsilon for locating outcomes.
  double ambiguity_band = 0.10;
  /// Optional hard range for referential selection; off by default.
  std::optional<double> max_range;

  void validate() const;
};

/// The continuous selection: region ∩ disk(center, radius).
struct RegionSelection {
  Region region;
  SurfacePoint center;
  double radius = 0.0;

  bool contains(const SurfacePoint& p, double tol = kExactTol) const {
    return region.contains(p, tol) && surface_distance(p, center) <= radius + tol;
  }
};

struct Resolution {
  double theta = 0.0;
  std::variant<std::vector<std::string>, RegionSelection> selected;
  bool ambiguous = false;

  bool is_discrete() const { return std::holds_alternative<std::vector<std::string>>(selected); }
  const std::vector<std::string>& selected_ids() const {
    return std::get<std::vector<std::string>>(selected);
  }
  const RegionSelection& selected_region() const { return std::get<RegionSelection>(selected); }
};

enum class Outcome { Correct, Incorrect, Ambiguous };
enum class ClutteredChoice { Nearer, Ambiguous };

std::string_view to_string(Outcome outcome);
std::string_view to_string(ClutteredChoice choice);

/// Referential: every object position. Locating: the stable region for the
/// shape under gravity, the whole surface otherwise. Throws EmptyScene,
/// NoStablePlacement, or InvalidArgument (locating without a shape).
CandidateSet candidates(const Scene& scene, Intent intent,
                        const std::optional<Shape>& shape_for_placement = std::nullopt);

/// theta = min distance from x* to a candidate; selects every candidate
/// within theta + epsilon.
Resolution resolve(const CandidateSet& cands, const SurfacePoint& x_star, const ResolverConfig& cfg);

using Shown = std::variant<std::string, SurfacePoint>;

/// Throws TypeMismatch when `shown` does not match the resolution kind.
Outcome classify_outcome(const Resolution& res, const Shown& shown, const SurfacePoint& x_star,
                         const ResolverConfig& cfg);

struct ClutteredPrediction {
  ClutteredChoice choice;
  /// 0 if the first position is nearer to x*, 1 otherwise (0 on exact ties).
  int nearer_index;
};

/// Ambiguous iff the two distances to x* differ by at most epsilon.
ClutteredPrediction predict_cluttered(const SurfacePoint& x_star, const SurfacePoint& x1,
                                      const SurfacePoint& x2, const ResolverConfig& cfg);

}  // namespace pointing
