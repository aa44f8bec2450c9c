#pragma once

#include <gmpxx.h>

#include <vector>

#include "pellrep/bigseq.hpp"

namespace pellrep {

struct SolutionRecord {
  int k = 0;
  long n = 0;
  mpz_class value;
  std::vector<Decomposition> decompositions;
  /// Every decomposition has 0.3n - 0.3 < l + m < 0.42n + 2.31.
  bool inside_window = true;

  friend bool operator==(const SolutionRecord& a, const SolutionRecord& b) {
    return a.k == b.k && a.n == b.n && a.value == b.value && a.decompositions == b.decompositions &&
           a.inside_window == b.inside_window;
  }
};

struct SearchRange {
  int k_min = 3;
  int k_max = 100;
  long n_min = 1;
  long n_max = 782;
};

/// Decomposes every Q_n^{(k)} in the box (no pruning) and returns those with
/// at least one decomposition, ordered by k then n. Work is split by k.
std::vector<SolutionRecord> exhaustive_search(const SearchRange& range, unsigned threads = 0);

/// Exact check of 0.3n - 0.3 < s < 0.42n + 2.31.
bool in_relation_window(long n, long s);

}  // namespace pellrep
