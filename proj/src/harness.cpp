#include "pointing/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <map>
#include <thread>

#include "pointing/error.hpp"
#include "pointing/rng.hpp"
#include "pointing/sampler.hpp"

namespace pointing {
namespace {

constexpr std::array<double, 3> kConeAngles{45.0, 67.5, 90.0};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string index_suffix(std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04zu", i);
  return buf;
}

/// End-effector tip above `target`, displaced against the lean direction so
/// the ray leans along `lean`.
Ray pointing_ray(const Plane& surface, const SurfacePoint& target, const SurfacePoint& lean,
                 double height, double offset) {
  const Point3 hit = from_surface_frame(target, surface);
  const Point3 tip = from_surface_frame(target - lean * offset, surface) + surface.normal() * height;
  return Ray::through(tip, hit);
}

struct RobotPose {
  double height;
  double offset;
};

RobotPose robot_pose(Robot robot, const HarnessGeometry& g) {
  return robot == Robot::Kuka ? RobotPose{g.tip_height_kuka, g.tip_offset_kuka}
                              : RobotPose{g.tip_height_baxter, g.tip_offset_baxter};
}

SceneObject object_at(std::string id, const Shape& shape, const SurfacePoint& at,
                      std::optional<std::string> on = std::nullopt) {
  return SceneObject{std::move(id), shape, Pose2D{at, 0.0}, std::move(on)};
}

std::vector<Trial> ref_vs_loc_trials(const Condition& cond, const RefVsLoc& rv, std::size_t n,
                                     std::uint64_t seed, const HarnessGeometry& g) {
  const Plane surface = g.surface();
  const RobotPose pose = robot_pose(rv.robot, g);
  SurfacePoint x_init = g.pick;
  SurfacePoint x_final = g.place;
  if (rv.reverse) std::swap(x_init, x_final);

  const bool referential = rv.intent == Intent::Referential;
  const SurfacePoint aim = referential ? x_init : x_final;
  const Ray ray = pointing_ray(surface, aim, {0.0, 1.0}, pose.height, pose.offset);
  const PointingAct act = PointingAct::make(ray, rv.intent, surface);
  const double angle = deg_to_rad(rv.cone_deg);
  const Ellipse section = cone_plane_section(ray, angle, surface);
  const auto samples = sample_positions(section, {n, substream_seed(seed, 0), angle});
  const Shape guide = Shape::cube(g.guide_cube_edge);
  const std::string tag = condition_tag(cond);

  std::vector<Trial> out;
  out.reserve(n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SurfacePoint mug_at = referential ? samples[i] : x_init;
    Scene scene(surface, {object_at("mug", g.mug, mug_at), object_at("guide_cube", guide, g.guide_cube)},
                true);
    PickAndPlaceTask task{"mug", mug_at, x_final};
    TrialShown shown = referential ? TrialShown{ShownObject{"mug"}} : TrialShown{ShownPlacement{samples[i]}};
    out.push_back(Trial{tag + "/" + index_suffix(i), cond, std::move(scene), std::move(task), act,
                        std::move(shown), section});
  }
  return out;
}

std::vector<Trial> cluttered_trials(const Cluttered& cl, std::size_t n, std::uint64_t seed,
                                    const HarnessGeometry& g) {
  if (n == 0 || n % 4 != 0) {
    throw Error(ErrorCode::InvalidCount, "cluttered trial count must be a positive multiple of 4");
  }
  const Plane surface = g.surface();
  const RobotPose pose = robot_pose(Robot::Baxter, g);
  const Ray ray = pointing_ray(surface, g.cluttered_target, {1.0, 0.0}, pose.height, pose.offset);
  const PointingAct act = PointingAct::make(ray, Intent::Referential, surface);
  const Ellipse section = cone_plane_section(ray, deg_to_rad(cl.cone_deg), surface);
  // Pairs lie on the major diametric line, offset around the pointing target.
  Ellipse around = section;
  around.center = act.target;
  const std::string tag = condition_tag(Condition{cl});

  std::vector<Trial> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ClutteredPair pair = cluttered_pair(around, substream_seed(seed, i));
    Scene scene(surface,
                {object_at("mug_object", g.mug, pair.x_object),
                 object_at("mug_distractor", g.mug, pair.x_distractor)},
                true);
    PickAndPlaceTask task{"mug_object", pair.x_object, pair.x_object};
    out.push_back(Trial{tag + "/" + index_suffix(i), Condition{cl}, std::move(scene), std::move(task),
                        act, ShownObject{"mug_object"}, section});
  }
  return out;
}

std::vector<Trial> natural_trials(const NaturalVsUnnatural& nv, const HarnessGeometry& g) {
  const Plane surface = g.surface();
  const Shape& block = g.stack_block;
  const SurfacePoint c = g.stack_center;
  const SurfacePoint edge = c + SurfacePoint{block.half_u + g.edge_overhang, 0.0};
  const SurfacePoint beside =
      c - SurfacePoint{0.0, block.half_v + g.placed_cube.half_v + g.table_side_gap};
  const RobotPose pose = robot_pose(Robot::Baxter, g);
  const Ray ray = pointing_ray(surface, edge, {0.0, 1.0}, pose.height, pose.offset);
  const PointingAct act = PointingAct::make(ray, Intent::Locating, surface);

  Scene scene(surface,
              {object_at("stack_base", block, c), object_at("stack_top", block, c, "stack_base"),
               object_at("cube", g.placed_cube, g.cube_start)},
              nv.gravity);
  const std::string tag = condition_tag(Condition{nv});
  std::vector<Trial> out;
  for (const auto& [config, at] : {std::pair{StackConfig::Top, c}, std::pair{StackConfig::Edge, edge},
                                   std::pair{StackConfig::Table, beside}}) {
    out.push_back(Trial{tag + "/" + std::string(to_string(config)), Condition{nv}, scene,
                        PickAndPlaceTask{"cube", g.cube_start, edge}, act, ShownStack{config, at},
                        std::nullopt});
  }
  return out;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view to_string(Robot robot) { return robot == Robot::Kuka ? "kuka" : "baxter"; }

std::string_view to_string(Verb verb) {
  switch (verb) {
    case Verb::Put: return "put";
    case Verb::Place: return "place";
    case Verb::Move: return "move";
    case Verb::Push: return "push";
  }
  return "put";
}

std::string_view to_string(StackConfig config) {
  switch (config) {
    case StackConfig::Top: return "top";
    case StackConfig::Edge: return "edge";
    case StackConfig::Table: return "table";
  }
  return "top";
}

Robot robot_from_string(std::string_view name) {
  if (name == "baxter") return Robot::Baxter;
  if (name == "kuka") return Robot::Kuka;
  throw Error(ErrorCode::InvalidArgument, "unknown robot '" + std::string(name) + "'");
}

Verb verb_from_string(std::string_view name) {
  for (Verb v : {Verb::Put, Verb::Place, Verb::Move, Verb::Push}) {
    if (to_string(v) == name) return v;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown verb '" + std::string(name) + "'");
}

StackConfig stack_config_from_string(std::string_view name) {
  for (StackConfig c : {StackConfig::Top, StackConfig::Edge, StackConfig::Table}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown stack config '" + std::string(name) + "'");
}

void validate_condition(const Condition& cond) {
  auto check = [](double deg) {
    if (std::find(kConeAngles.begin(), kConeAngles.end(), deg) == kConeAngles.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "cone vertex angle must be 45, 67.5 or 90 degrees, got " + format_number(deg));
    }
  };
  std::visit(Overloaded{[&](const RefVsLoc& c) { check(c.cone_deg); },
                        [&](const Cluttered& c) { check(c.cone_deg); },
                        [](const NaturalVsUnnatural&) {},
                        [&](const VerbVariant& c) { check(c.base.cone_deg); }},
             cond);
}

std::string condition_tag(const Condition& cond) {
  auto rvl = [](const RefVsLoc& c) {
    return std::string(to_string(c.robot)) + "/" + (c.speech ? "speech" : "no_speech") + "/" +
           (c.reverse ? "reverse" : "forward") + "/" + format_number(c.cone_deg) + "/" +
           std::string(to_string(c.intent));
  };
  return std::visit(
      Overloaded{[&](const RefVsLoc& c) { return "ref_vs_loc/" + rvl(c); },
                 [](const Cluttered& c) { return "cluttered/" + format_number(c.cone_deg); },
                 [](const NaturalVsUnnatural& c) {
                   return std::string("natural_vs_unnatural/") + (c.gravity ? "natural" : "unnatural");
                 },
                 [&](const VerbVariant& c) { return "verb/" + std::string(to_string(c.verb)) + "/" + rvl(c.base); }},
      cond);
}

std::vector<Trial> generate_trials(const Condition& cond, std::size_t n, std::uint64_t seed,
                                   const HarnessGeometry& geometry) {
  validate_condition(cond);
  return std::visit(
      Overloaded{[&](const RefVsLoc& c) { return ref_vs_loc_trials(cond, c, n, seed, geometry); },
                 [&](const Cluttered& c) { return cluttered_trials(c, n, seed, geometry); },
                 [&](const NaturalVsUnnatural& c) { return natural_trials(c, geometry); },
                 [&](const VerbVariant& c) { return ref_vs_loc_trials(cond, c.base, n, seed, geometry); }},
      cond);
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::Correct: return "correct";
    case Label::Incorrect: return "incorrect";
    case Label::Ambiguous: return "ambiguous";
    case Label::Nearer: return "nearer";
    case Label::Farther: return "farther";
  }
  return "correct";
}

Label label_from_string(std::string_view name) {
  for (Label l : {Label::Correct, Label::Incorrect, Label::Ambiguous, Label::Nearer, Label::Farther}) {
    if (to_string(l) == name) return l;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown label '" + std::string(name) + "'");
}

Label to_label(Outcome outcome) {
  switch (outcome) {
    case Outcome::Correct: return Label::Correct;
    case Outcome::Incorrect: return Label::Incorrect;
    case Outcome::Ambiguous: return Label::Ambiguous;
  }
  return Label::Incorrect;
}

ResponseRecord run_trial(const Trial& trial, const ResolverConfig& cfg) {
  try {
    ResponseRecord rec;
    rec.trial_id = trial.id;
    rec.condition = condition_tag(trial.condition);
    rec.x_star = trial.point_act.target;
    const SurfacePoint& x_star = rec.x_star;

    if (std::holds_alternative<Cluttered>(trial.condition)) {
      const SceneObject* a = trial.scene.find("mug_object");
      const SceneObject* b = trial.scene.find("mug_distractor");
      if (!a || !b) throw Error(ErrorCode::InvalidScene, "cluttered scene needs both mugs");
      const auto pred = predict_cluttered(x_star, a->pose.position, b->pose.position, cfg);
      rec.predicted = pred.choice == ClutteredChoice::Ambiguous ? Label::Ambiguous : Label::Nearer;
      rec.position = a->pose.position;
      rec.shown_distance = surface_distance(a->pose.position, x_star);
      rec.delta = std::abs(surface_distance(a->pose.position, x_star) -
                           surface_distance(b->pose.position, x_star));
      rec.separation = surface_distance(a->pose.position, b->pose.position);
      return rec;
    }

    if (trial.point_act.intent == Intent::Referential) {
      const auto* shown = std::get_if<ShownObject>(&trial.shown);
      if (!shown) throw Error(ErrorCode::TypeMismatch, "referential trials must show an object");
      const SceneObject* obj = trial.scene.find(shown->id);
      if (!obj) throw Error(ErrorCode::InvalidScene, "shown object '" + shown->id + "' is not in the scene");
      const Resolution res = resolve(candidates(trial.scene, Intent::Referential), x_star, cfg);
      rec.predicted = to_label(classify_outcome(res, shown->id, x_star, cfg));
      rec.theta = res.theta;
      rec.selected = static_cast<int>(res.selected_ids().size());
      rec.position = obj->pose.position;
      rec.shown_distance = surface_distance(rec.position, x_star);
      return rec;
    }

    SurfacePoint placed;
    if (const auto* p = std::get_if<ShownPlacement>(&trial.shown)) {
      placed = p->position;
    } else if (const auto* s = std::get_if<ShownStack>(&trial.shown)) {
      placed = s->position;
      rec.config = std::string(to_string(s->config));
    } else {
      throw Error(ErrorCode::TypeMismatch, "locating trials must show a placement");
    }
    const SceneObject* moved = trial.scene.find(trial.task.object_id);
    if (!moved) throw Error(ErrorCode::InvalidScene, "task object is not in the scene");
    const Scene rest = trial.scene.without(moved->id);
    const Resolution res = resolve(candidates(rest, Intent::Locating, moved->shape), x_star, cfg);
    rec.predicted = to_label(classify_outcome(res, placed, x_star, cfg));
    rec.theta = res.theta;
    rec.position = placed;
    rec.shown_distance = surface_distance(placed, x_star);
    return rec;
  } catch (const Error& e) {
    throw Error(e.code(), "trial " + trial.id + ": " + e.what());
  }
}

std::vector<ResponseRecord> run(const std::vector<Trial>& trials, const ResolverConfig& cfg,
                                unsigned threads) {
  cfg.validate();
  std::vector<ResponseRecord> out(trials.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < trials.size(); ++i) out[i] = run_trial(trials[i], cfg);
    return out;
  }

  std::vector<std::exception_ptr> errors(trials.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < trials.size(); i += threads) {
        try {
          out[i] = run_trial(trials[i], cfg);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string_view to_string(GroupBy g) {
  switch (g) {
    case GroupBy::Position: return "position";
    case GroupBy::Config: return "config";
    case GroupBy::Condition: return "condition";
  }
  return "condition";
}

GroupBy group_by_from_string(std::string_view name) {
  for (GroupBy g : {GroupBy::Position, GroupBy::Config, GroupBy::Condition}) {
    if (to_string(g) == name) return g;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown grouping '" + std::string(name) + "'");
}

std::int64_t AggregateGroup::total() const {
  std::int64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

double AggregateGroup::fraction(Label label) const {
  const auto t = total();
  return t > 0 ? static_cast<double>(counts[static_cast<std::size_t>(label)]) / t : 0.0;
}

AggregateTable aggregate(const std::vector<ResponseRecord>& records, GroupBy group_by) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "cannot aggregate zero records");
  std::map<std::string, AggregateGroup> groups;
  for (const auto& r : records) {
    std::string key;
    switch (group_by) {
      case GroupBy::Position: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f,%.4f", r.position.u, r.position.v);
        key = buf;
        break;
      }
      case GroupBy::Config: key = r.config.empty() ? "(none)" : r.config; break;
      case GroupBy::Condition: key = r.condition; break;
    }
    auto [it, inserted] = groups.try_emplace(key);
    AggregateGroup& g = it->second;
    if (inserted) {
      g.key = key;
      g.position = r.position;
      g.x_star = r.x_star;
      g.delta = r.delta.value_or(0.0);
      g.separation = r.separation.value_or(0.0);
    }
    ++g.counts[static_cast<std::size_t>(r.predicted)];
  }
  AggregateTable out;
  out.group_by = group_by;
  for (auto& [_, g] : groups) out.groups.push_back(std::move(g));
  return out;
}

ContingencyTable to_contingency(const std::vector<ResponseRecord>& records_a,
                                const std::vector<ResponseRecord>& records_b,
                                const std::vector<Label>& labels, bool use_human) {
  if (records_a.empty() || records_b.empty()) {
    throw Error(ErrorCode::EmptyInput, "both record sets must be nonempty");
  }
  if (labels.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two labels");
  ContingencyTable t;
  t.row_labels = {"a", "b"};
  for (Label l : labels) t.col_labels.emplace_back(to_string(l));
  for (const auto* set : {&records_a, &records_b}) {
    std::vector<std::int64_t> row(labels.size(), 0);
    for (const auto& r : *set) {
      const std::optional<Label> label = use_human ? r.human : std::optional<Label>(r.predicted);
      if (!label) continue;
      const auto it = std::find(labels.begin(), labels.end(), *label);
      if (it != labels.end()) ++row[static_cast<std::size_t>(it - labels.begin())];
    }
    t.counts.push_back(std::move(row));
  }
  return t;
}

}  // namespace pointing
