#include "pointing/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "pointing/error.hpp"

namespace pointing {
namespace {

double log_choose(std::int64_t n, std::int64_t k) {
  using boost::math::lgamma;
  return lgamma(static_cast<double>(n + 1)) - lgamma(static_cast<double>(k + 1)) -
         lgamma(static_cast<double>(n - k + 1));
}

void require_nondegenerate(const ContingencyTable& t) {
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.row_sum(r) == 0) throw Error(ErrorCode::DegenerateTable, "table has an all-zero row");
  }
  for (std::size_t c = 0; c < t.cols(); ++c) {
    if (t.col_sum(c) == 0) throw Error(ErrorCode::DegenerateTable, "table has an all-zero column");
  }
}

}  // namespace

std::int64_t ContingencyTable::total() const {
  std::int64_t s = 0;
  for (const auto& row : counts) {
    for (auto v : row) s += v;
  }
  return s;
}

std::int64_t ContingencyTable::row_sum(std::size_t r) const {
  std::int64_t s = 0;
  for (auto v : counts.at(r)) s += v;
  return s;
}

std::int64_t ContingencyTable::col_sum(std::size_t c) const {
  std::int64_t s = 0;
  for (const auto& row : counts) s += row.at(c);
  return s;
}

void ContingencyTable::validate_shape() const {
  if (rows() < 2 || cols() < 2) {
    throw Error(ErrorCode::InvalidArgument, "contingency table must be at least 2x2");
  }
  for (const auto& row : counts) {
    if (row.size() != cols()) throw Error(ErrorCode::InvalidArgument, "contingency table is ragged");
    for (auto v : row) {
      if (v < 0) throw Error(ErrorCode::InvalidArgument, "contingency counts must be non-negative");
    }
  }
  if (!row_labels.empty() && row_labels.size() != rows()) {
    throw Error(ErrorCode::InvalidArgument, "row label count does not match the table");
  }
  if (!col_labels.empty() && col_labels.size() != cols()) {
    throw Error(ErrorCode::InvalidArgument, "column label count does not match the table");
  }
}

double chi_squared_sf(double x, int dof) {
  if (dof <= 0) throw Error(ErrorCode::InvalidArgument, "chi-squared dof must be positive");
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

TestResult chi_squared_test(const ContingencyTable& table) {
  table.validate_shape();
  require_nondegenerate(table);
  const double n = static_cast<double>(table.total());
  double stat = 0.0;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      const double expected = static_cast<double>(table.row_sum(r)) * table.col_sum(c) / n;
      const double diff = static_cast<double>(table.counts[r][c]) - expected;
      stat += diff * diff / expected;
    }
  }
  const int dof = static_cast<int>((table.rows() - 1) * (table.cols() - 1));
  return {stat, dof, std::clamp(chi_squared_sf(stat, dof), 0.0, 1.0)};
}

TestResult fisher_exact_2x2(const ContingencyTable& table) {
  table.validate_shape();
  if (table.rows() != 2 || table.cols() != 2) {
    throw Error(ErrorCode::InvalidArgument, "Fisher exact test needs a 2x2 table");
  }
  require_nondegenerate(table);
  const std::int64_t r1 = table.row_sum(0);
  const std::int64_t r2 = table.row_sum(1);
  const std::int64_t c1 = table.col_sum(0);
  const std::int64_t n = r1 + r2;
  const double log_denom = log_choose(n, c1);
  auto prob = [&](std::int64_t a) {
    return std::exp(log_choose(r1, a) + log_choose(r2, c1 - a) - log_denom);
  };

  const double observed = prob(table.counts[0][0]);
  const double cutoff = observed * (1.0 + 1e-12);
  double p = 0.0;
  for (std::int64_t a = std::max<std::int64_t>(0, c1 - r2); a <= std::min(r1, c1); ++a) {
    const double pa = prob(a);
    if (pa <= cutoff) p += pa;
  }
  return {observed, std::nullopt, std::clamp(p, 0.0, 1.0)};
}

EquivalenceResult tost_equivalence(std::int64_t x1, std::int64_t n1, std::int64_t x2,
                                   std::int64_t n2, double margin, double alpha) {
  if (n1 <= 0 || n2 <= 0 || x1 < 0 || x2 < 0 || x1 > n1 || x2 > n2) {
    throw Error(ErrorCode::InvalidCounts, "need 0 <= x <= n and n > 0 for both samples");
  }
  if (!(margin > 0.0)) throw Error(ErrorCode::InvalidCounts, "equivalence margin must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidCounts, "alpha must lie in (0, 1)");

  const double p1 = static_cast<double>(x1) / n1;
  const double p2 = static_cast<double>(x2) / n2;
  const double pooled = static_cast<double>(x1 + x2) / (n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  const double diff = p1 - p2;

  EquivalenceResult out;
  out.margin = margin;
  out.alpha = alpha;
  // A zero standard error leaves each one-sided test decided by the sign alone.
  const double inf = std::numeric_limits<double>::infinity();
  auto ratio = [&](double num) { return se > 0.0 ? num / se : (num > 0.0 ? inf : (num < 0.0 ? -inf : 0.0)); };
  out.z_lower = ratio(diff + margin);
  out.z_upper = ratio(diff - margin);
  out.p_lower = normal_cdf(-out.z_lower);
  out.p_upper = normal_cdf(out.z_upper);
  out.equivalent = std::max(out.p_lower, out.p_upper) < alpha;
  return out;
}

std::vector<FisherCollapse> fisher_collapses(const ContingencyTable& table) {
  table.validate_shape();
  auto row_name = [&](std::size_t r) {
    return table.row_labels.empty() ? "row" + std::to_string(r) : table.row_labels[r];
  };
  auto col_name = [&](std::size_t c) {
    return table.col_labels.empty() ? "col" + std::to_string(c) : table.col_labels[c];
  };

  std::vector<FisherCollapse> out;
  auto add = [&](std::string description, ContingencyTable sub) {
    try {
      auto result = fisher_exact_2x2(sub);
      out.push_back({std::move(description), std::move(sub), result});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateTable) throw;
    }
  };

  for (std::size_t a = 0; a < table.rows(); ++a) {
    for (std::size_t b = a + 1; b < table.rows(); ++b) {
      const auto& ra = table.counts[a];
      const auto& rb = table.counts[b];
      const std::int64_t sa = table.row_sum(a);
      const std::int64_t sb = table.row_sum(b);
      const std::string rows = row_name(a) + " vs " + row_name(b);
      for (std::size_t j = 0; j < table.cols(); ++j) {
        add(rows + ": " + col_name(j) + " vs rest",
            {{{ra[j], sa - ra[j]}, {rb[j], sb - rb[j]}},
             {row_name(a), row_name(b)},
             {col_name(j), "not " + col_name(j)}});
      }
      for (std::size_t j = 0; j < table.cols(); ++j) {
        for (std::size_t k = j + 1; k < table.cols(); ++k) {
          add(rows + ": " + col_name(j) + " vs " + col_name(k),
              {{{ra[j], ra[k]}, {rb[j], rb[k]}}, {row_name(a), row_name(b)}, {col_name(j), col_name(k)}});
        }
      }
    }
  }
  return out;
}

}  // namespace pointing
