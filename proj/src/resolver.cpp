#include "pointing/resolver.hpp"

#include <algorithm>
#include <limits>

#include "pointing/error.hpp"

namespace pointing {

std::string_view to_string(Intent intent) {
  return intent == Intent::Referential ? "referential" : "locating";
}

Intent intent_from_string(std::string_view name) {
  if (name == "referential") return Intent::Referential;
  if (name == "locating") return Intent::Locating;
  throw Error(ErrorCode::InvalidArgument, "unknown intent '" + std::string(name) + "'");
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Correct: return "correct";
    case Outcome::Incorrect: return "incorrect";
    case Outcome::Ambiguous: return "ambiguous";
  }
  return "unknown";
}

std::string_view to_string(ClutteredChoice choice) {
  return choice == ClutteredChoice::Nearer ? "nearer" : "ambiguous";
}

PointingAct PointingAct::make(const Ray& ray, Intent intent, const Plane& surface) {
  const auto hit = ray_plane_intersect(ray, surface);
  if (!hit) throw Error(ErrorCode::NoPointingTarget, "pointing ray does not meet the surface");
  return PointingAct{ray, intent, to_surface_frame(*hit, surface)};
}

void ResolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!(ambiguity_band >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ambiguity band must be non-negative");
  }
  if (max_range && !(*max_range > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "max range must be positive when set");
  }
}

CandidateSet candidates(const Scene& scene, Intent intent, const std::optional<Shape>& shape_for_placement) {
  if (intent == Intent::Referential) {
    if (scene.objects().empty()) {
      throw Error(ErrorCode::EmptyScene, "referential pointing needs at least one object");
    }
    std::vector<DiscreteCandidate> out;
    out.reserve(scene.objects().size());
    for (const auto& o : scene.objects()) out.push_back({o.id, o.pose.position});
    return CandidateSet{std::move(out)};
  }
  if (!shape_for_placement) {
    throw Error(ErrorCode::InvalidArgument, "locating pointing needs the shape being placed");
  }
  Region region = stable_region(scene, *shape_for_placement);
  if (!region.nearest({0.0, 0.0})) {
    throw Error(ErrorCode::NoStablePlacement, "no stable placement exists for this shape");
  }
  return CandidateSet{std::move(region)};
}

Resolution resolve(const CandidateSet& cands, const SurfacePoint& x_star, const ResolverConfig& cfg) {
  cfg.validate();
  Resolution res;
  if (cands.is_discrete()) {
    const auto& list = cands.discrete();
    if (list.empty()) throw Error(ErrorCode::EmptyScene, "no referential candidates");
    std::vector<double> dist;
    dist.reserve(list.size());
    double theta = std::numeric_limits<double>::infinity();
    for (const auto& c : list) {
      dist.push_back(surface_distance(c.position, x_star));
      if (!cfg.max_range || dist.back() <= *cfg.max_range) theta = std::min(theta, dist.back());
    }
    std::vector<std::string> selected;
    if (std::isfinite(theta)) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (cfg.max_range && dist[i] > *cfg.max_range) continue;
        if (dist[i] <= theta + cfg.epsilon + kExactTol) selected.push_back(list[i].id);
      }
    } else {
      theta = *std::min_element(dist.begin(), dist.end());
    }
    res.theta = theta;
    res.ambiguous = selected.size() > 1;
    res.selected = std::move(selected);
    return res;
  }

  const Region& region = cands.region();
  const auto nearest = region.nearest(x_star);
  if (!nearest) throw Error(ErrorCode::NoStablePlacement, "candidate region is empty");
  res.theta = region.contains(x_star) ? 0.0 : surface_distance(*nearest, x_star);
  res.selected = RegionSelection{region, x_star, res.theta + cfg.epsilon};
  res.ambiguous = false;
  return res;
}

Outcome classify_outcome(const Resolution& res, const Shown& shown, const SurfacePoint& x_star,
                         const ResolverConfig& cfg) {
  if (res.is_discrete()) {
    const auto* id = std::get_if<std::string>(&shown);
    if (!id) throw Error(ErrorCode::TypeMismatch, "referential outcomes must name an object");
    const auto& sel = res.selected_ids();
    if (std::find(sel.begin(), sel.end(), *id) == sel.end()) return Outcome::Incorrect;
    return sel.size() == 1 ? Outcome::Correct : Outcome::Ambiguous;
  }

  const auto* placed = std::get_if<SurfacePoint>(&shown);
  if (!placed) throw Error(ErrorCode::TypeMismatch, "locating outcomes must be a placement");
  if (!res.selected_region().region.contains(*placed)) return Outcome::Incorrect;
  const double d = surface_distance(*placed, x_star);
  const double reach = res.theta + cfg.epsilon;
  if (d <= reach + kExactTol) return Outcome::Correct;
  if (d <= reach + cfg.ambiguity_band + kExactTol) return Outcome::Ambiguous;
  return Outcome::Incorrect;
}

ClutteredPrediction predict_cluttered(const SurfacePoint& x_star, const SurfacePoint& x1,
                                      const SurfacePoint& x2, const ResolverConfig& cfg) {
  cfg.validate();
  const double d1 = surface_distance(x1, x_star);
  const double d2 = surface_distance(x2, x_star);
  const int nearer = d2 < d1 ? 1 : 0;
  const bool ambiguous = std::abs(d1 - d2) <= cfg.epsilon + kExactTol;
  return {ambiguous ? ClutteredChoice::Ambiguous : ClutteredChoice::Nearer, nearer};
}

}  // namespace pointing
