#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pointing/corpus.hpp"
#include "support.hpp"

using namespace pointing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pointing-corpus-tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string write(const std::vector<Trial>& trials, std::uint64_t seed = 7) {
  std::ostringstream out;
  write_trials(out, {"trials", seed, trials.front().condition, trials.size()}, trials);
  return out.str();
}

TrialCorpus read(const std::string& text) {
  std::istringstream in(text);
  return read_trials(in);
}

void check_close(const SurfacePoint& a, const SurfacePoint& b) {
  CHECK(surface_distance(a, b) < 1e-8);
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("trial round trip") {
  RefVsLoc cond;
  const auto trials = generate_trials(cond, 8, 7);
  const std::string first = write(trials);
  const auto loaded = read(first);
  CHECK(loaded.header.seed == 7);
  CHECK(loaded.header.count == 8u);
  CHECK(loaded.header.condition == Condition{cond});
  REQUIRE(loaded.trials.size() == trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& a = trials[i];
    const auto& b = loaded.trials[i];
    CHECK(a.id == b.id);
    CHECK(a.condition == b.condition);
    CHECK(a.task.object_id == b.task.object_id);
    check_close(a.task.x_init, b.task.x_init);
    check_close(a.point_act.target, b.point_act.target);
    CHECK((a.point_act.ray.direction() - b.point_act.ray.direction()).norm() < 1e-8);
    REQUIRE(b.section);
    check_close(a.section->center, b.section->center);
    CHECK(std::abs(a.section->semi_major - b.section->semi_major) < 1e-8);
    REQUIRE(a.scene.objects().size() == b.scene.objects().size());
    for (std::size_t k = 0; k < a.scene.objects().size(); ++k) {
      CHECK(a.scene.objects()[k].id == b.scene.objects()[k].id);
      check_close(a.scene.objects()[k].pose.position, b.scene.objects()[k].pose.position);
    }
  }
  // Written values are already rounded, so a second pass is exact.
  const std::string second = write(loaded.trials);
  CHECK(second == first);
  CHECK(read(second).trials == loaded.trials);
}

TEST_CASE("every condition round trips") {
  for (const Condition& c : std::vector<Condition>{Cluttered{67.5}, NaturalVsUnnatural{false},
                                                   VerbVariant{Verb::Move, RefVsLoc{Robot::Kuka, false, true, 90.0, Intent::Locating}}}) {
    const auto trials = generate_trials(c, 4, 3);
    const std::string text = write(trials);
    const auto back = read(text);
    CHECK(back.header.condition == c);
    CHECK(write(back.trials) == text);
    CHECK(read(write(back.trials)).trials == back.trials);
  }
}

TEST_CASE("files are byte-identical for equal content") {
  const auto trials = generate_trials(Cluttered{45}, 8, 1);
  const auto a = scratch("a.jsonl"), b = scratch("b.jsonl");
  save_trials(a, {"trials", 1, trials.front().condition, trials.size()}, trials);
  save_trials(b, {"trials", 1, trials.front().condition, trials.size()}, trials);
  CHECK(slurp(a) == slurp(b));
  CHECK(load_trials(a).trials.size() == 8);
  const auto text = slurp(a);
  CHECK(text.find("\"schema\":\"pointing-corpus/1\"") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}

TEST_CASE("response round trip") {
  const auto trials = generate_trials(Cluttered{45}, 8, 2);
  auto recs = run(trials, {});
  recs[1].human = Label::Farther;
  std::ostringstream out;
  write_responses(out, {"responses", 2, trials.front().condition, recs.size()}, recs);
  std::istringstream in(out.str());
  const auto back = read_responses(in);
  REQUIRE(back.records.size() == recs.size());
  CHECK(back.records[1].human == Label::Farther);
  CHECK_FALSE(back.records[0].human);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back.records[i].trial_id == recs[i].trial_id);
    CHECK(back.records[i].predicted == recs[i].predicted);
    CHECK(std::abs(*back.records[i].delta - *recs[i].delta) < 1e-8);
  }
  std::ostringstream again;
  write_responses(again, back.header, back.records);
  CHECK(again.str() == out.str());

  const auto p = scratch("r.jsonl");
  save_responses(p, back.header, back.records);
  CHECK(load_responses(p).records == back.records);
  CHECK_ERROR_CODE(load_trials(p), ErrorCode::SchemaError);
}

TEST_CASE("malformed corpora") {
  const auto trials = generate_trials(RefVsLoc{}, 8, 7);
  const std::string text = write(trials);

  // Cut mid-record.
  const std::string truncated = text.substr(0, text.size() - 40);
  try {
    read(truncated);
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    CHECK(std::string(e.what()).find("line 9") != std::string::npos);
  }

  // Whole last record dropped: the header count no longer matches.
  const std::string short_text = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
  CHECK_ERROR_CODE(read(short_text), ErrorCode::SchemaError);

  CHECK_ERROR_CODE(read(""), ErrorCode::SchemaError);
  CHECK_ERROR_CODE(read("{\"schema\":\"other/2\",\"kind\":\"trials\"}\n"), ErrorCode::SchemaError);
  CHECK_ERROR_CODE(read(text.substr(text.find('\n') + 1)), ErrorCode::SchemaError);

  std::string bad_field = text;
  const auto pos = bad_field.find("\"kind\":\"mug\"");
  bad_field.replace(pos, 12, "\"kind\":\"urn\"");
  CHECK_ERROR_CODE(read(bad_field), ErrorCode::SchemaError);

  CHECK_ERROR_CODE(load_trials(scratch("missing.jsonl")), ErrorCode::IoError);
  CHECK_ERROR_CODE(save_trials("/nonexistent-dir/x.jsonl", {"trials", 0, {}, 0}, {}), ErrorCode::IoError);
}

TEST_CASE("Table 1 fixture rows") {
  CHECK(table1_row("natural-top") == std::vector<std::int64_t>{26, 3, 1});
  CHECK(table1_row("natural-edge") == std::vector<std::int64_t>{9, 11, 10});
  CHECK(table1_row("natural-table") == std::vector<std::int64_t>{7, 13, 12});
  CHECK(table1_row("unnatural-top") == std::vector<std::int64_t>{12, 9, 9});
  CHECK(table1_row("unnatural-edge") == std::vector<std::int64_t>{24, 2, 4});
  CHECK(table1_row("unnatural-table") == std::vector<std::int64_t>{2, 2, 26});
  CHECK_ERROR_CODE(table1_row("natural-shelf"), ErrorCode::InvalidArgument);

  const Table1 t = load_table1_fixture();
  CHECK(t.natural.row_labels == std::vector<std::string>{"top", "edge", "table"});
  CHECK(t.unnatural.counts[1] == std::vector<std::int64_t>{24, 2, 4});
  CHECK(t.natural.col_labels == std::vector<std::string>{"correct", "incorrect", "ambiguous"});

  const auto edge = table1_rows({"unnatural-edge", "natural-edge"});
  CHECK(edge.counts == std::vector<std::vector<std::int64_t>>{{24, 2, 4}, {9, 11, 10}});
  CHECK(edge.row_labels == std::vector<std::string>{"unnatural-edge", "natural-edge"});
}

TEST_CASE("external counts fixture") {
  const auto good = scratch("counts.json");
  std::ofstream(good) << R"({"schema":"pointing-counts/1","referential":[90,5,5],"locating":[60,20,20]})";
  const auto t = load_counts_fixture(good);
  CHECK(t.counts == std::vector<std::vector<std::int64_t>>{{90, 5, 5}, {60, 20, 20}});

  const auto bad = scratch("counts-bad.json");
  std::ofstream(bad) << R"({"schema":"pointing-counts/2","referential":[1,2,3],"locating":[1,2,3]})";
  CHECK_ERROR_CODE(load_counts_fixture(bad), ErrorCode::SchemaError);
  std::ofstream(bad) << R"({"schema":"pointing-counts/1","referential":[1,2],"locating":[1,2,3]})";
  CHECK_ERROR_CODE(load_counts_fixture(bad), ErrorCode::SchemaError);
  std::ofstream(bad) << "{not json";
  CHECK_ERROR_CODE(load_counts_fixture(bad), ErrorCode::SchemaError);
}

TEST_CASE("aggregate CSV") {
  AggregateTable one;
  AggregateGroup g;
  g.key = "ref_vs_loc/baxter";
  g.counts = {8, 0, 0, 0, 0};
  one.groups.push_back(g);
  const std::string csv = aggregate_csv(one);
  CHECK(csv == "group,correct,incorrect,ambiguous,nearer,farther,total\r\nref_vs_loc/baxter,8,0,0,0,0,8\r\n");

  AggregateTable quoted;
  g.key = "0.1000,-0.2500";
  quoted.groups.push_back(g);
  g.key = "say \"hi\"";
  quoted.groups.push_back(g);
  const std::string text = aggregate_csv(quoted);
  CHECK(text.find("\"0.1000,-0.2500\",8") != std::string::npos);
  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][0] == "0.1000,-0.2500");
  CHECK(rows[2][0] == "say \"hi\"");
  CHECK(rows[2].size() == 7);

  const auto path = scratch("agg.csv");
  export_csv(quoted, path);
  CHECK(slurp(path) == text);
  CHECK_ERROR_CODE(aggregate_csv(AggregateTable{}), ErrorCode::EmptyInput);
}

TEST_CASE("CSV reader") {
  const auto rows = parse_csv("a,\"b,c\",\"d\"\"e\"\nx,,z\r\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a", "b,c", "d\"e"});
  CHECK(rows[1] == std::vector<std::string>{"x", "", "z"});
}

}
