#pragma once

// The published classification of Q_n^{(k)} that are products of two
// repdigits, encoded as data, and its comparison with a search result.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pellrep/search.hpp"

namespace pellrep {

/// One printed row: Q_n for k in [k_min, k_max] (k_max empty = unbounded)
/// with the products a...a * b...b as printed.
struct ClaimedRow {
  std::string id;
  long n = 0;
  int k_min = 3;
  std::optional<int> k_max;
  std::vector<std::pair<long, long>> products;
};

/// The rows as printed, including their slips.
const std::vector<ClaimedRow>& claimed_rows();

enum class RowStatus { Match, ValueTypo, RangeMismatch, Missing };
std::string to_string(RowStatus status);

struct RowIssue {
  RowStatus status = RowStatus::Match;
  std::string detail;
};

struct RowComparison {
  std::string id;
  long n = 0;
  std::string k_range;
  std::vector<int> ks_checked;
  std::vector<int> ks_without_hit;
  std::vector<RowIssue> issues;  // empty = match

  RowStatus status() const { return issues.empty() ? RowStatus::Match : issues.front().status; }
};

struct TheoremComparison {
  std::vector<RowComparison> rows;
  std::vector<SolutionRecord> extras;  // hits not covered by any row
  std::size_t issue_count() const;
};

/// Compares the rows against hits of a search over [k_min, k_max] x [n_min, n_max].
TheoremComparison verify_theorem(const std::vector<SolutionRecord>& hits, const SearchRange& range);

}  // namespace pellrep
