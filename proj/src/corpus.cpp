#include "pointing/corpus.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pointing/error.hpp"

namespace pointing {
namespace {

using nlohmann::json;

json real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

json pair(const SurfacePoint& p) { return json::array({real(p.u), real(p.v)}); }
json triple(const Vec3& p) { return json::array({real(p.x), real(p.y), real(p.z)}); }

SurfacePoint read_pair(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [u, v]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Vec3 read_triple(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected [x, y, z]");
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json ref_vs_loc_fields(const RefVsLoc& c) {
  return {{"robot", to_string(c.robot)}, {"speech", c.speech}, {"reverse", c.reverse},
          {"cone_deg", real(c.cone_deg)}, {"intent", to_string(c.intent)}};
}

RefVsLoc read_ref_vs_loc(const json& j) {
  RefVsLoc c;
  c.robot = robot_from_string(j.at("robot").get<std::string>());
  c.speech = j.at("speech").get<bool>();
  c.reverse = j.at("reverse").get<bool>();
  c.cone_deg = j.at("cone_deg").get<double>();
  c.intent = intent_from_string(j.at("intent").get<std::string>());
  return c;
}

json condition_json(const Condition& cond) {
  if (const auto* c = std::get_if<RefVsLoc>(&cond)) {
    json j = ref_vs_loc_fields(*c);
    j["kind"] = "ref_vs_loc";
    return j;
  }
  if (const auto* c = std::get_if<Cluttered>(&cond)) {
    return {{"kind", "cluttered"}, {"cone_deg", real(c->cone_deg)}};
  }
  if (const auto* c = std::get_if<NaturalVsUnnatural>(&cond)) {
    return {{"kind", "natural_vs_unnatural"}, {"gravity", c->gravity}};
  }
  const auto& v = std::get<VerbVariant>(cond);
  json j = ref_vs_loc_fields(v.base);
  j["kind"] = "verb_variant";
  j["verb"] = to_string(v.verb);
  return j;
}

Condition read_condition(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "ref_vs_loc") return read_ref_vs_loc(j);
  if (kind == "cluttered") return Cluttered{j.at("cone_deg").get<double>()};
  if (kind == "natural_vs_unnatural") return NaturalVsUnnatural{j.at("gravity").get<bool>()};
  if (kind == "verb_variant") {
    return VerbVariant{verb_from_string(j.at("verb").get<std::string>()), read_ref_vs_loc(j)};
  }
  throw std::invalid_argument("unknown condition kind '" + kind + "'");
}

json header_json(const CorpusHeader& h) {
  json j{{"schema", kCorpusSchema}, {"kind", h.kind}, {"seed", h.seed}};
  j["condition"] = h.condition ? condition_json(*h.condition) : json(nullptr);
  j["count"] = h.count ? json(*h.count) : json(nullptr);
  return j;
}

json trial_json(const Trial& t) {
  const Plane& s = t.scene.surface();
  json objects = json::array();
  for (const auto& o : t.scene.objects()) {
    objects.push_back({{"id", o.id},
                       {"kind", to_string(o.shape.kind)},
                       {"half", pair({o.shape.half_u, o.shape.half_v})},
                       {"height", real(o.shape.height)},
                       {"at", pair(o.pose.position)},
                       {"yaw_deg", real(rad_to_deg(o.pose.yaw))},
                       {"on", o.on_top_of ? json(*o.on_top_of) : json(nullptr)}});
  }
  json shown;
  if (const auto* so = std::get_if<ShownObject>(&t.shown)) {
    shown = {{"type", "object"}, {"id", so->id}};
  } else if (const auto* sp = std::get_if<ShownPlacement>(&t.shown)) {
    shown = {{"type", "placement"}, {"at", pair(sp->position)}};
  } else {
    const auto& ss = std::get<ShownStack>(t.shown);
    shown = {{"type", "stack"}, {"config", to_string(ss.config)}, {"at", pair(ss.position)}};
  }
  json section = nullptr;
  if (t.section) {
    section = {{"center", pair(t.section->center)},
               {"semi_major", real(t.section->semi_major)},
               {"semi_minor", real(t.section->semi_minor)},
               {"orientation_deg", real(rad_to_deg(t.section->orientation))}};
  }
  return {{"id", t.id},
          {"condition", condition_json(t.condition)},
          {"surface",
           {{"anchor", triple(s.anchor())},
            {"axis_u", triple(s.axis_u())},
            {"axis_v", triple(s.axis_v())},
            {"width", real(s.width())},
            {"depth", real(s.depth())}}},
          {"gravity", t.scene.gravity()},
          {"objects", objects},
          {"task", {{"object", t.task.object_id}, {"x_init", pair(t.task.x_init)}, {"x_final", pair(t.task.x_final)}}},
          {"pointing",
           {{"origin", triple(t.point_act.ray.origin())},
            {"direction", triple(t.point_act.ray.direction())},
            {"intent", to_string(t.point_act.intent)},
            {"target", pair(t.point_act.target)}}},
          {"shown", shown},
          {"section", section}};
}

Trial read_trial(const json& j) {
  const json& js = j.at("surface");
  Plane surface(read_triple(js.at("anchor")), read_triple(js.at("axis_u")), read_triple(js.at("axis_v")),
                js.at("width").get<double>(), js.at("depth").get<double>());
  std::vector<SceneObject> objects;
  for (const auto& jo : j.at("objects")) {
    const SurfacePoint half = read_pair(jo.at("half"));
    Shape shape{shape_kind_from_string(jo.at("kind").get<std::string>()), half.u, half.v,
                jo.at("height").get<double>()};
    std::optional<std::string> on;
    if (!jo.at("on").is_null()) on = jo.at("on").get<std::string>();
    objects.push_back({jo.at("id").get<std::string>(), shape,
                       Pose2D{read_pair(jo.at("at")), deg_to_rad(jo.at("yaw_deg").get<double>())}, on});
  }
  Scene scene(surface, std::move(objects), j.at("gravity").get<bool>());

  const json& jt = j.at("task");
  PickAndPlaceTask task{jt.at("object").get<std::string>(), read_pair(jt.at("x_init")),
                        read_pair(jt.at("x_final"))};
  const json& jp = j.at("pointing");
  PointingAct act{Ray(read_triple(jp.at("origin")), read_triple(jp.at("direction"))),
                  intent_from_string(jp.at("intent").get<std::string>()), read_pair(jp.at("target"))};

  const json& jsh = j.at("shown");
  const auto type = jsh.at("type").get<std::string>();
  TrialShown shown;
  if (type == "object") {
    shown = ShownObject{jsh.at("id").get<std::string>()};
  } else if (type == "placement") {
    shown = ShownPlacement{read_pair(jsh.at("at"))};
  } else if (type == "stack") {
    shown = ShownStack{stack_config_from_string(jsh.at("config").get<std::string>()), read_pair(jsh.at("at"))};
  } else {
    throw std::invalid_argument("unknown shown type '" + type + "'");
  }

  std::optional<Ellipse> section;
  if (const json& je = j.at("section"); !je.is_null()) {
    section = Ellipse{read_pair(je.at("center")), je.at("semi_major").get<double>(),
                      je.at("semi_minor").get<double>(), deg_to_rad(je.at("orientation_deg").get<double>())};
  }
  return Trial{j.at("id").get<std::string>(), read_condition(j.at("condition")), std::move(scene),
               std::move(task), std::move(act), std::move(shown), section};
}

json opt_real(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

json response_json(const ResponseRecord& r) {
  return {{"trial", r.trial_id},
          {"condition", r.condition},
          {"predicted", to_string(r.predicted)},
          {"human", r.human ? json(to_string(*r.human)) : json(nullptr)},
          {"position", pair(r.position)},
          {"x_star", pair(r.x_star)},
          {"config", r.config},
          {"theta", real(r.theta)},
          {"shown_distance", real(r.shown_distance)},
          {"selected", r.selected ? json(*r.selected) : json(nullptr)},
          {"delta", opt_real(r.delta)},
          {"separation", opt_real(r.separation)}};
}

std::optional<double> read_opt_real(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ResponseRecord read_response(const json& j) {
  ResponseRecord r;
  r.trial_id = j.at("trial").get<std::string>();
  r.condition = j.at("condition").get<std::string>();
  r.predicted = label_from_string(j.at("predicted").get<std::string>());
  if (!j.at("human").is_null()) r.human = label_from_string(j.at("human").get<std::string>());
  r.position = read_pair(j.at("position"));
  r.x_star = read_pair(j.at("x_star"));
  r.config = j.at("config").get<std::string>();
  r.theta = j.at("theta").get<double>();
  r.shown_distance = j.at("shown_distance").get<double>();
  if (!j.at("selected").is_null()) r.selected = j.at("selected").get<int>();
  r.delta = read_opt_real(j.at("delta"));
  r.separation = read_opt_real(j.at("separation"));
  return r;
}

[[noreturn]] void schema_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::SchemaError, "line " + std::to_string(line) + ": " + what);
}

template <class Record, class Parse>
std::pair<CorpusHeader, std::vector<Record>> read_corpus(std::istream& in, std::string_view kind,
                                                         Parse parse) {
  std::string line;
  std::size_t line_no = 0;
  CorpusHeader header;
  bool have_header = false;
  std::vector<Record> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      schema_error(line_no, std::string("malformed record: ") + e.what());
    }
    try {
      if (!have_header) {
        if (!j.is_object() || !j.contains("schema")) schema_error(line_no, "missing header");
        const auto schema = j.at("schema").get<std::string>();
        if (schema != kCorpusSchema) schema_error(line_no, "unrecognized schema '" + schema + "'");
        header.kind = j.at("kind").get<std::string>();
        if (header.kind != kind) {
          schema_error(line_no, "expected a '" + std::string(kind) + "' corpus, found '" + header.kind + "'");
        }
        header.seed = j.at("seed").get<std::uint64_t>();
        if (!j.at("condition").is_null()) header.condition = read_condition(j.at("condition"));
        if (!j.at("count").is_null()) header.count = j.at("count").get<std::size_t>();
        have_header = true;
        continue;
      }
      records.push_back(parse(j));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SchemaError) throw;
      schema_error(line_no, e.what());
    } catch (const std::exception& e) {
      schema_error(line_no, std::string("invalid record: ") + e.what());
    }
  }
  if (!have_header) schema_error(line_no, "empty corpus, no header");
  if (header.count && *header.count != records.size()) {
    schema_error(line_no, "header declares " + std::to_string(*header.count) + " records, found " +
                              std::to_string(records.size()));
  }
  return {std::move(header), std::move(records)};
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

struct FixtureRow {
  std::string_view name;
  std::array<std::int64_t, 3> counts;
};

constexpr std::array<FixtureRow, 6> kTable1{{
    {"unnatural-top", {12, 9, 9}},
    {"unnatural-edge", {24, 2, 4}},
    {"unnatural-table", {2, 2, 26}},
    {"natural-top", {26, 3, 1}},
    {"natural-edge", {9, 11, 10}},
    {"natural-table", {7, 13, 12}},
}};

}  // namespace

void write_trials(std::ostream& out, const CorpusHeader& header, const std::vector<Trial>& trials) {
  CorpusHeader h = header;
  h.kind = "trials";
  h.count = trials.size();
  out << header_json(h).dump() << '\n';
  for (const auto& t : trials) out << trial_json(t).dump() << '\n';
}

TrialCorpus read_trials(std::istream& in) {
  auto [header, trials] = read_corpus<Trial>(in, "trials", read_trial);
  return {std::move(header), std::move(trials)};
}

void write_responses(std::ostream& out, const CorpusHeader& header,
                     const std::vector<ResponseRecord>& records) {
  CorpusHeader h = header;
  h.kind = "responses";
  h.count = records.size();
  out << header_json(h).dump() << '\n';
  for (const auto& r : records) out << response_json(r).dump() << '\n';
}

ResponseCorpus read_responses(std::istream& in) {
  auto [header, records] = read_corpus<ResponseRecord>(in, "responses", read_response);
  return {std::move(header), std::move(records)};
}

void save_trials(const std::filesystem::path& path, const CorpusHeader& header,
                 const std::vector<Trial>& trials) {
  auto out = open_out(path);
  write_trials(out, header, trials);
  finish(out, path);
}

TrialCorpus load_trials(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_trials(in);
}

void save_responses(const std::filesystem::path& path, const CorpusHeader& header,
                    const std::vector<ResponseRecord>& records) {
  auto out = open_out(path);
  write_responses(out, header, records);
  finish(out, path);
}

ResponseCorpus load_responses(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_responses(in);
}

std::vector<std::int64_t> table1_row(std::string_view name) {
  for (const auto& row : kTable1) {
    if (row.name == name) return {row.counts.begin(), row.counts.end()};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Table 1 row '" + std::string(name) + "'");
}

ContingencyTable table1_rows(const std::vector<std::string>& names) {
  ContingencyTable t;
  t.col_labels = {"correct", "incorrect", "ambiguous"};
  for (const auto& n : names) {
    t.counts.push_back(table1_row(n));
    t.row_labels.push_back(n);
  }
  return t;
}

Table1 load_table1_fixture() {
  auto scene = [](std::string_view prefix) {
    ContingencyTable t;
    t.col_labels = {"correct", "incorrect", "ambiguous"};
    for (std::string_view config : {"top", "edge", "table"}) {
      t.counts.push_back(table1_row(std::string(prefix) + "-" + std::string(config)));
      t.row_labels.emplace_back(config);
    }
    return t;
  };
  return {scene("natural"), scene("unnatural")};
}

ContingencyTable load_counts_fixture(const std::filesystem::path& path) {
  auto in = open_in(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed counts fixture: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != kCountsSchema) {
      throw Error(ErrorCode::SchemaError, "unrecognized counts fixture schema");
    }
    ContingencyTable t;
    t.row_labels = {"referential", "locating"};
    t.col_labels = {"correct", "incorrect", "ambiguous"};
    for (const char* row : {"referential", "locating"}) {
      auto counts = j.at(row).get<std::vector<std::int64_t>>();
      if (counts.size() != 3) throw Error(ErrorCode::SchemaError, std::string(row) + " needs 3 counts");
      t.counts.push_back(std::move(counts));
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid counts fixture: ") + e.what());
  }
}

std::string aggregate_csv(const AggregateTable& table) {
  if (table.groups.empty()) throw Error(ErrorCode::EmptyInput, "aggregate has no groups");
  std::ostringstream out;
  out << "group";
  for (std::size_t l = 0; l < kLabelCount; ++l) out << ',' << to_string(static_cast<Label>(l));
  out << ",total\r\n";
  for (const auto& g : table.groups) {
    out << csv_field(g.key);
    for (auto c : g.counts) out << ',' << c;
    out << ',' << g.total() << "\r\n";
  }
  return out.str();
}

void export_csv(const AggregateTable& table, const std::filesystem::path& path) {
  const std::string text = aggregate_csv(table);
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pointing
