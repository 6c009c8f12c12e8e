#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pointing/harness.hpp"
#include "pointing/stats.hpp"

namespace pointing {

/// Schema tag carried by every corpus header line.
inline constexpr std::string_view kCorpusSchema = "pointing-corpus/1";
inline constexpr std::string_view kCountsSchema = "pointing-counts/1";

struct CorpusHeader {
  std::string kind;  // "trials" or "responses"
  std::uint64_t seed = 0;
  std::optional<Condition> condition;
  std::optional<std::size_t> count;

  bool operator==(const CorpusHeader&) const = default;
};

struct TrialCorpus {
  CorpusHeader header;
  std::vector<Trial> trials;
};

struct ResponseCorpus {
  CorpusHeader header;
  std::vector<ResponseRecord> records;
};

// Line-delimited JSON: one header line, then one record per line. Keys are
// sorted, reals carry 9 significant digits, distances are meters and angles
// degrees. Equal content gives byte-identical files.

void write_trials(std::ostream& out, const CorpusHeader& header, const std::vector<Trial>& trials);
TrialCorpus read_trials(std::istream& in);
void write_responses(std::ostream& out, const CorpusHeader& header,
                     const std::vector<ResponseRecord>& records);
ResponseCorpus read_responses(std::istream& in);

/// Throws IoError on open/write failure; readers throw SchemaError with the
/// offending line number.
void save_trials(const std::filesystem::path& path, const CorpusHeader& header,
                 const std::vector<Trial>& trials);
TrialCorpus load_trials(const std::filesystem::path& path);
void save_responses(const std::filesystem::path& path, const CorpusHeader& header,
                    const std::vector<ResponseRecord>& records);
ResponseCorpus load_responses(const std::filesystem::path& path);

struct Table1 {
  ContingencyTable natural;
  ContingencyTable unnatural;
};

/// Human-response counts for the natural and unnatural stack
/// scenes. Rows top, edge, table; columns correct, incorrect, ambiguous.
Table1 load_table1_fixture();

/// One fixture row by name, e.g. "natural-top". Throws InvalidArgument.
std::vector<std::int64_t> table1_row(std::string_view name);
/// Rows in the given order, labelled by name.
ContingencyTable table1_rows(const std::vector<std::string>& names);

/// External counts fixture: {"schema": "pointing-counts/1",
/// "referential": [c, i, a], "locating": [c, i, a]}.
ContingencyTable load_counts_fixture(const std::filesystem::path& path);

/// group,correct,incorrect,ambiguous,nearer,farther,total with RFC 4180
/// quoting. Throws EmptyInput for an empty aggregate.
std::string aggregate_csv(const AggregateTable& table);
void export_csv(const AggregateTable& table, const std::filesystem::path& path);
/// Minimal RFC 4180 reader (quoted fields, doubled quotes, CRLF or LF).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace pointing
