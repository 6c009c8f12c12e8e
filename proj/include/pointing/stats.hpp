#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pointing {

struct ContingencyTable {
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  std::size_t rows() const { return counts.size(); }
  std::size_t cols() const { return counts.empty() ? 0 : counts.front().size(); }
  std::int64_t total() const;
  std::int64_t row_sum(std::size_t r) const;
  std::int64_t col_sum(std::size_t c) const;

  /// Rectangular, at least 2x2, non-negative counts, label counts matching
  /// when given. Throws InvalidArgument.
  void validate_shape() const;
  bool operator==(const ContingencyTable&) const = default;
};

struct TestResult {
  double statistic = 0.0;
  std::optional<int> dof;
  double p_value = 1.0;
};

struct EquivalenceResult {
  double z_lower = 0.0;
  double z_upper = 0.0;
  double p_lower = 1.0;
  double p_upper = 1.0;
  bool equivalent = false;
  double margin = 0.0;
  double alpha = 0.05;
};

/// Pearson chi-squared without continuity correction; dof = (r-1)(c-1).
/// Throws DegenerateTable on a zero row or column total.
TestResult chi_squared_test(const ContingencyTable& table);

/// Upper tail of the chi-squared distribution.
double chi_squared_sf(double x, int dof);

/// Two-sided Fisher exact test: sums the hypergeometric probabilities of all
/// tables with the observed margins whose probability does not exceed the
/// observed one (relative slack 1e-12). `statistic` is the observed table's
/// probability.
TestResult fisher_exact_2x2(const ContingencyTable& table);

/// Two one-sided pooled z-tests (no continuity correction) of
/// H0: p1 - p2 <= -margin and H0: p1 - p2 >= margin.
/// Throws InvalidCounts.
EquivalenceResult tost_equivalence(std::int64_t x1, std::int64_t n1, std::int64_t x2,
                                   std::int64_t n2, double margin, double alpha = 0.05);

struct FisherCollapse {
  std::string description;
  ContingencyTable table;
  TestResult result;
};

/// Every 2x2 sub-table of an r x c table: each pair of rows against either
/// one column versus the rest, or a pair of columns. Degenerate collapses are
/// skipped.
std::vector<FisherCollapse> fisher_collapses(const ContingencyTable& table);

double normal_cdf(double z);

}  // namespace pointing
