#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "pointing/corpus.hpp"
#include "pointing/error.hpp"
#include "pointing/harness.hpp"
#include "pointing/plot.hpp"
#include "pointing/stats.hpp"

namespace pointing::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::int64_t parse_count(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a count: '" + s + "'");
  }
  if (used != s.size() || v < 0) throw UsageError("not a count: '" + s + "'");
  return v;
}

struct GenOptions {
  std::string condition;
  std::string cone = "45";
  std::string intent = "referential";
  std::string robot = "baxter";
  bool no_speech = false;
  bool reverse = false;
  std::string gravity = "on";
  std::string verb = "put";
  std::size_t n = 8;
  std::uint64_t seed = 0;
  std::string out;
};

struct RunOptions {
  std::string in;
  std::string out;
  double epsilon = 0.10;
  std::optional<double> band;
  std::optional<double> max_range;
  unsigned threads = 1;
};

struct StatsOptions {
  std::vector<std::string> in;
  std::string fixture;
  std::string rows;
  std::string table;
  std::string test;
  std::string a;
  std::string b;
  double margin = 0.05;
  double alpha = 0.05;
  std::string labels = "correct,incorrect,ambiguous";
  bool human = false;
  bool csv = false;
  bool collapses = false;
};

struct PlotOptions {
  std::string in;
  std::string kind = "scatter-pies";
  std::string group_by = "position";
  std::string out;
  std::string csv;
  int width = 640;
  int height = 480;
  bool no_legend = false;
};

Condition make_condition(const GenOptions& o) {
  RefVsLoc base;
  base.robot = robot_from_string(o.robot);
  base.speech = !o.no_speech;
  base.reverse = o.reverse;
  base.cone_deg = std::stod(o.cone);
  base.intent = intent_from_string(o.intent);
  if (o.condition == "ref-vs-loc") return base;
  if (o.condition == "cluttered") return Cluttered{base.cone_deg};
  if (o.condition == "natural") return NaturalVsUnnatural{o.gravity == "on"};
  return VerbVariant{verb_from_string(o.verb), base};
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  const Condition cond = make_condition(o);
  const auto trials = generate_trials(cond, o.n, o.seed);
  save_trials(o.out, CorpusHeader{"trials", o.seed, cond, trials.size()}, trials);
  out << "wrote " << trials.size() << " trials: condition=" << condition_tag(cond) << " seed=" << o.seed
      << " out=" << o.out << '\n';
  return kExitOk;
}

int cmd_run(const RunOptions& o, std::ostream& out) {
  ResolverConfig cfg;
  cfg.epsilon = o.epsilon;
  cfg.ambiguity_band = o.band.value_or(o.epsilon);
  cfg.max_range = o.max_range;
  cfg.validate();
  const TrialCorpus corpus = load_trials(o.in);
  const auto records = run(corpus.trials, cfg, std::max(1u, o.threads));
  CorpusHeader header = corpus.header;
  header.kind = "responses";
  header.count = records.size();
  save_responses(o.out, header, records);

  std::array<std::int64_t, kLabelCount> counts{};
  std::int64_t selected = 0;
  for (const auto& r : records) {
    ++counts[static_cast<std::size_t>(r.predicted)];
    selected += r.selected.value_or(0);
  }
  out << records.size() << " responses:";
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    out << ' ' << to_string(static_cast<Label>(l)) << '=' << counts[l];
  }
  out << " selected=" << selected << '\n';
  return kExitOk;
}

std::vector<Label> parse_labels(const std::string& s) {
  std::vector<Label> labels;
  for (const auto& part : split(s, ',')) {
    try {
      labels.push_back(label_from_string(part));
    } catch (const Error&) {
      throw UsageError("unknown label '" + part + "'");
    }
  }
  if (labels.size() < 2) throw UsageError("--labels needs at least two labels");
  return labels;
}

ContingencyTable table_from_flag(const std::string& s) {
  ContingencyTable t;
  if (s.find(';') != std::string::npos) {
    for (const auto& row : split(s, ';')) {
      std::vector<std::int64_t> counts;
      for (const auto& c : split(row, ',')) counts.push_back(parse_count(c));
      t.counts.push_back(std::move(counts));
    }
  } else {
    std::vector<std::int64_t> flat;
    for (const auto& c : split(s, ',')) flat.push_back(parse_count(c));
    if (flat.size() < 4 || flat.size() % 2 != 0) {
      throw UsageError("--table needs an even number (>= 4) of counts, or rows separated by ';'");
    }
    const std::size_t cols = flat.size() / 2;
    t.counts = {std::vector<std::int64_t>(flat.begin(), flat.begin() + cols),
                std::vector<std::int64_t>(flat.begin() + cols, flat.end())};
  }
  for (const auto& row : t.counts) {
    if (row.size() != t.counts.front().size()) throw UsageError("--table rows differ in length");
  }
  for (std::size_t r = 0; r < t.counts.size(); ++r) t.row_labels.push_back("r" + std::to_string(r + 1));
  for (std::size_t c = 0; c < t.cols(); ++c) t.col_labels.push_back("c" + std::to_string(c + 1));
  return t;
}

// Drops columns that are zero in every row; a label nobody produced carries no
// information and would make the table degenerate.
ContingencyTable drop_empty_columns(const ContingencyTable& t) {
  ContingencyTable out;
  out.row_labels = t.row_labels;
  out.counts.resize(t.rows());
  for (std::size_t c = 0; c < t.cols(); ++c) {
    if (t.col_sum(c) == 0) continue;
    out.col_labels.push_back(t.col_labels[c]);
    for (std::size_t r = 0; r < t.rows(); ++r) out.counts[r].push_back(t.counts[r][c]);
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_proportion(const std::string& s, const char* flag) {
  const auto parts = split(s, '/');
  if (parts.size() != 2) throw UsageError(std::string(flag) + " expects x/n");
  return {parse_count(parts[0]), parse_count(parts[1])};
}

void print_table(const ContingencyTable& t, std::ostream& out) {
  out << "table:";
  for (const auto& c : t.col_labels) out << ' ' << c;
  out << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    out << "  " << (r < t.row_labels.size() ? t.row_labels[r] : "r" + std::to_string(r + 1)) << ':';
    for (auto v : t.counts[r]) out << ' ' << v;
    out << '\n';
  }
}

int cmd_stats(const StatsOptions& o, std::ostream& out) {
  const int sources = (o.in.empty() ? 0 : 1) + (o.fixture.empty() ? 0 : 1) + (o.table.empty() ? 0 : 1) +
                      (o.a.empty() && o.b.empty() ? 0 : 1);
  if (sources != 1) throw UsageError("give exactly one of --in, --fixture, --table, or --a/--b");
  if (!o.rows.empty() && o.fixture.empty()) throw UsageError("--rows needs --fixture");
  if (o.test != "tost" && (!o.a.empty() || !o.b.empty())) throw UsageError("--a/--b only apply to --test tost");
  if (o.collapses && o.test != "fisher") throw UsageError("--collapses only applies to --test fisher");

  if (!o.a.empty() || !o.b.empty()) {
    if (o.a.empty() || o.b.empty()) throw UsageError("--test tost needs both --a and --b");
  }

  ContingencyTable table;
  if (!o.in.empty()) {
    if (o.in.size() != 2) throw UsageError("--in takes exactly two response corpora");
    const auto a = load_responses(o.in[0]);
    const auto b = load_responses(o.in[1]);
    table = drop_empty_columns(to_contingency(a.records, b.records, parse_labels(o.labels), o.human));
  } else if (!o.fixture.empty()) {
    if (o.rows.empty()) {
      table = table1_rows({"natural-top", "natural-edge", "natural-table", "unnatural-top", "unnatural-edge",
                           "unnatural-table"});
    } else {
      table = table1_rows(split(o.rows, ','));
    }
  } else if (!o.table.empty()) {
    table = table_from_flag(o.table);
  }

  if (o.test == "tost") {
    std::int64_t x1, n1, x2, n2;
    if (!o.a.empty()) {
      std::tie(x1, n1) = parse_proportion(o.a, "--a");
      std::tie(x2, n2) = parse_proportion(o.b, "--b");
    } else {
      // First column is the success count.
      if (table.rows() != 2) throw Error(ErrorCode::DegenerateTable, "tost needs exactly two rows");
      x1 = table.counts[0].front();
      n1 = table.row_sum(0);
      x2 = table.counts[1].front();
      n2 = table.row_sum(1);
    }
    const auto eq = tost_equivalence(x1, n1, x2, n2, o.margin, o.alpha);
    if (o.csv) {
      out << "test,z_lower,z_upper,p_lower,p_upper,margin,alpha,equivalent\n"
          << "tost," << g6(eq.z_lower) << ',' << g6(eq.z_upper) << ',' << g6(eq.p_lower) << ','
          << g6(eq.p_upper) << ',' << g6(eq.margin) << ',' << g6(eq.alpha) << ','
          << (eq.equivalent ? "yes" : "no") << '\n';
    } else {
      out << "test=tost a=" << x1 << '/' << n1 << " b=" << x2 << '/' << n2 << " z_lower=" << g6(eq.z_lower)
          << " z_upper=" << g6(eq.z_upper) << " p_lower=" << g6(eq.p_lower) << " p_upper=" << g6(eq.p_upper)
          << " margin=" << g6(eq.margin) << " alpha=" << g6(eq.alpha)
          << " equivalent=" << (eq.equivalent ? "yes" : "no") << '\n';
    }
    return kExitOk;
  }

  if (o.collapses) {
    const auto all = fisher_collapses(table);
    if (all.empty()) throw Error(ErrorCode::DegenerateTable, "no non-degenerate 2x2 collapse");
    if (o.csv) {
      out << "collapse,statistic,p_value\n";
      for (const auto& c : all) {
        out << '"' << c.description << "\"," << g6(c.result.statistic) << ',' << g6(c.result.p_value) << '\n';
      }
    } else {
      for (const auto& c : all) {
        out << c.description << ": statistic=" << g6(c.result.statistic) << " p=" << g6(c.result.p_value)
            << '\n';
      }
    }
    return kExitOk;
  }

  const TestResult res = o.test == "chi2" ? chi_squared_test(table) : fisher_exact_2x2(table);
  if (o.csv) {
    out << "test,statistic,dof,p_value\n"
        << o.test << ',' << g6(res.statistic) << ',' << (res.dof ? std::to_string(*res.dof) : "") << ','
        << g6(res.p_value) << '\n';
  } else {
    print_table(table, out);
    out << "test=" << o.test << " statistic=" << g6(res.statistic)
        << " dof=" << (res.dof ? std::to_string(*res.dof) : "NA") << " p=" << g6(res.p_value) << '\n';
  }
  return kExitOk;
}

int cmd_plot(const PlotOptions& o, std::ostream& out) {
  const auto corpus = load_responses(o.in);
  const auto table = aggregate(corpus.records, group_by_from_string(o.group_by));
  PlotSpec spec;
  spec.kind = plot_kind_from_string(o.kind);
  spec.width = o.width;
  spec.height = o.height;
  spec.legend = !o.no_legend;
  const std::string svg = render_svg(table, spec);
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + o.out + "' for writing");
  f << svg;
  if (!f.flush()) throw Error(ErrorCode::IoError, "write to '" + o.out + "' failed");
  if (!o.csv.empty()) export_csv(table, o.csv);
  out << "wrote " << table.groups.size() << " pies: kind=" << o.kind << " group_by=" << o.group_by
      << " out=" << o.out << '\n';
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pointing interpretation model: trial generation, resolution, statistics and plots",
               "pointing"};
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a trial corpus");
  g->add_option("--condition", gen.condition, "Experimental condition")
      ->required()
      ->check(CLI::IsMember({"ref-vs-loc", "cluttered", "natural", "verb"}));
  g->add_option("--cone", gen.cone, "Cone vertex angle in degrees")
      ->check(CLI::IsMember({"45", "67.5", "90"}))
      ->capture_default_str();
  g->add_option("--intent", gen.intent)->check(CLI::IsMember({"referential", "locating"}))->capture_default_str();
  g->add_option("--robot", gen.robot)->check(CLI::IsMember({"baxter", "kuka"}))->capture_default_str();
  g->add_flag("--no-speech", gen.no_speech, "Gesture without the spoken command");
  g->add_flag("--reverse", gen.reverse, "Reverse pick and place sides");
  g->add_option("--gravity", gen.gravity, "Stability constraint for natural scenes")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  g->add_option("--verb", gen.verb)->check(CLI::IsMember({"put", "place", "move", "push"}))->capture_default_str();
  g->add_option("--n", gen.n, "Trials to sample (multiple of 4)")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out", gen.out, "Trial corpus (JSONL)")->required();

  RunOptions runo;
  auto* r = app.add_subcommand("run", "Resolve every trial of a corpus");
  r->add_option("--in", runo.in, "Trial corpus")->required();
  r->add_option("--out", runo.out, "Response corpus")->required();
  r->add_option("--epsilon", runo.epsilon, "Tolerance in meters")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--band", runo.band, "Ambiguity band in meters (default: epsilon)")->check(CLI::NonNegativeNumber);
  r->add_option("--max-range", runo.max_range, "Ignore candidates farther than this")
      ->check(CLI::PositiveNumber);
  r->add_option("--threads", runo.threads)->check(CLI::Range(1u, 256u))->capture_default_str();

  StatsOptions st;
  auto* s = app.add_subcommand("stats", "Contingency and equivalence tests");
  s->add_option("--in", st.in, "Two response corpora (rows a, b)");
  s->add_option("--fixture", st.fixture)->check(CLI::IsMember({"table1"}));
  s->add_option("--rows", st.rows, "Fixture rows, e.g. natural-top,unnatural-top");
  s->add_option("--table", st.table, "Counts, row-major: 3,1,1,3 or 1,2;3,4");
  s->add_option("--test", st.test)->required()->check(CLI::IsMember({"chi2", "fisher", "tost"}));
  s->add_option("--a", st.a, "Successes/trials for group a");
  s->add_option("--b", st.b, "Successes/trials for group b");
  s->add_option("--margin", st.margin)->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--alpha", st.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  s->add_option("--labels", st.labels, "Label columns for --in")->capture_default_str();
  s->add_flag("--human", st.human, "Use human labels instead of predictions");
  s->add_flag("--csv", st.csv, "Machine-readable output");
  s->add_flag("--collapses", st.collapses, "Fisher test on every 2x2 collapse");

  PlotOptions pl;
  auto* p = app.add_subcommand("plot", "Render aggregated responses as SVG");
  p->add_option("--in", pl.in, "Response corpus")->required();
  p->add_option("--kind", pl.kind)->check(CLI::IsMember({"scatter-pies", "distance-pies"}))->capture_default_str();
  p->add_option("--group-by", pl.group_by)
      ->check(CLI::IsMember({"position", "config", "condition"}))
      ->capture_default_str();
  p->add_option("--out", pl.out, "SVG file")->required();
  p->add_option("--csv", pl.csv, "Also write the aggregate as CSV");
  p->add_option("--width", pl.width)->check(CLI::Range(160, 10000))->capture_default_str();
  p->add_option("--height", pl.height)->check(CLI::Range(160, 10000))->capture_default_str();
  p->add_flag("--no-legend", pl.no_legend);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out);
    if (r->parsed()) return cmd_run(runo, out);
    if (s->parsed()) return cmd_stats(st, out);
    return cmd_plot(pl, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    for (auto* sub : {g, r, s, p}) {
      if (sub->parsed()) err << sub->help();
    }
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace pointing::cli
