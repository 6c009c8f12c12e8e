#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pointing/geometry.hpp"
#include "pointing/resolver.hpp"
#include "pointing/scene.hpp"
#include "pointing/stats.hpp"

namespace pointing {

enum class Robot { Baxter, Kuka };
enum class Verb { Put, Place, Move, Push };
enum class StackConfig { Top, Edge, Table };

std::string_view to_string(Robot robot);
std::string_view to_string(Verb verb);
std::string_view to_string(StackConfig config);
Robot robot_from_string(std::string_view name);
Verb verb_from_string(std::string_view name);
StackConfig stack_config_from_string(std::string_view name);

/// Referential vs locating trials: one mug, a red guide cube, a robot pointing
/// from the near edge of the table.
struct RefVsLoc {
  Robot robot = Robot::Baxter;
  bool speech = true;
  bool reverse = false;
  double cone_deg = 45.0;
  Intent intent = Intent::Referential;

  bool operator==(const RefVsLoc&) const = default;
};

struct Cluttered {
  double cone_deg = 45.0;
  bool operator==(const Cluttered&) const = default;
};

struct NaturalVsUnnatural {
  bool gravity = true;
  bool operator==(const NaturalVsUnnatural&) const = default;
};

/// Same stimuli as the base condition; the verb is metadata only.
struct VerbVariant {
  Verb verb = Verb::Put;
  RefVsLoc base;
  bool operator==(const VerbVariant&) const = default;
};

using Condition = std::variant<RefVsLoc, Cluttered, NaturalVsUnnatural, VerbVariant>;

/// Throws InvalidArgument unless sampled conditions use 45, 67.5 or 90 degrees.
void validate_condition(const Condition& cond);
/// Stable descriptive key, e.g. "ref_vs_loc/baxter/speech/forward/45/referential".
std::string condition_tag(const Condition& cond);

/// Scene constants. None of these are measured values.
struct HarnessGeometry {
  double table_width = 2.4;
  double table_depth = 1.6;
  double tip_height_baxter = 0.45;
  double tip_offset_baxter = 0.15;
  double tip_height_kuka = 0.50;
  double tip_offset_kuka = 0.12;
  SurfacePoint pick = {-0.55, -0.35};
  SurfacePoint place = {0.55, -0.35};
  SurfacePoint guide_cube = {0.0, 0.65};
  double guide_cube_edge = 0.12;
  /// Pointing target for cluttered trials; the robot leans along +u there.
  SurfacePoint cluttered_target = {0.0, 0.0};
  Shape mug = Shape::mug();
  /// Natural scene: two stacked cuboids centered at `stack_center`.
  SurfacePoint stack_center = {0.0, 0.0};
  Shape stack_block = Shape::cuboid(0.10, 0.06, 0.08);
  Shape placed_cube = Shape::cube(0.06);
  SurfacePoint cube_start = {-0.6, 0.4};
  /// The gesture's target, 1 cm beyond the stack top's +u edge.
  double edge_overhang = 0.01;
  /// "table" config: on the table beside the stack, past its -v side.
  double table_side_gap = 0.03;

  Plane surface() const { return Plane::horizontal({0.0, 0.0, 0.0}, table_width, table_depth); }
};

struct ShownObject {
  std::string id;
  bool operator==(const ShownObject&) const = default;
};
struct ShownPlacement {
  SurfacePoint position;
  bool operator==(const ShownPlacement&) const = default;
};
struct ShownStack {
  StackConfig config;
  SurfacePoint position;
  bool operator==(const ShownStack&) const = default;
};
using TrialShown = std::variant<ShownObject, ShownPlacement, ShownStack>;

struct Trial {
  std::string id;
  Condition condition;
  Scene scene;
  PickAndPlaceTask task;
  PointingAct point_act;
  TrialShown shown;
  /// Conic section the stimulus was sampled from, when sampled.
  std::optional<Ellipse> section;

  bool operator==(const Trial&) const = default;
};

/// Trial sets are pure functions of (condition, n, seed, geometry); sampled
/// kinds need n divisible by 4 (InvalidCount otherwise). Natural scenes always
/// yield the three configurations top, edge, table and ignore n.
std::vector<Trial> generate_trials(const Condition& cond, std::size_t n, std::uint64_t seed,
                                   const HarnessGeometry& geometry = {});

enum class Label { Correct, Incorrect, Ambiguous, Nearer, Farther };
inline constexpr std::size_t kLabelCount = 5;
std::string_view to_string(Label label);
Label label_from_string(std::string_view name);
Label to_label(Outcome outcome);

struct ResponseRecord {
  std::string trial_id;
  std::string condition;
  Label predicted = Label::Correct;
  std::optional<Label> human;
  /// Stimulus position: the mug (referential), the shown placement
  /// (locating), or the object mug (cluttered).
  SurfacePoint position;
  SurfacePoint x_star;
  std::string config;
  double theta = 0.0;
  /// Distance from the stimulus position to x*.
  double shown_distance = 0.0;
  /// Number of selected referents (discrete candidate sets only).
  std::optional<int> selected;
  /// Cluttered: |d1 - d2| to x* and the pair separation D.
  std::optional<double> delta;
  std::optional<double> separation;

  bool operator==(const ResponseRecord&) const = default;
};

/// One record per trial, in trial order. Resolver errors are rethrown with the
/// trial id in the message. `threads` > 1 splits the work; results are
/// identical to a sequential run.
std::vector<ResponseRecord> run(const std::vector<Trial>& trials, const ResolverConfig& cfg,
                                unsigned threads = 1);
ResponseRecord run_trial(const Trial& trial, const ResolverConfig& cfg);

enum class GroupBy { Position, Config, Condition };
std::string_view to_string(GroupBy g);
GroupBy group_by_from_string(std::string_view name);

struct AggregateGroup {
  std::string key;
  std::array<std::int64_t, kLabelCount> counts{};
  SurfacePoint position;
  SurfacePoint x_star;
  double delta = 0.0;
  double separation = 0.0;

  std::int64_t total() const;
  double fraction(Label label) const;
  bool operator==(const AggregateGroup&) const = default;
};

struct AggregateTable {
  GroupBy group_by = GroupBy::Condition;
  /// Sorted by key.
  std::vector<AggregateGroup> groups;

  bool operator==(const AggregateTable&) const = default;
};

/// Throws EmptyInput. Group keys: "u,v" (position, 4 decimals), the stack
/// config, or the condition tag. Plot fields come from the group's first
/// record in key order.
AggregateTable aggregate(const std::vector<ResponseRecord>& records, GroupBy group_by);

/// 2 x |labels| table of label counts, rows a then b. Records whose label is
/// not listed are dropped. Uses the human label when `use_human` (records
/// without one are skipped). Throws EmptyInput.
ContingencyTable to_contingency(const std::vector<ResponseRecord>& records_a,
                                const std::vector<ResponseRecord>& records_b,
                                const std::vector<Label>& labels =
                                    {Label::Correct, Label::Incorrect, Label::Ambiguous},
                                bool use_human = false);

}  // namespace pointing
