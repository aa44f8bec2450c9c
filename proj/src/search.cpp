#include "pellrep/search.hpp"

#include "pellrep/parallel.hpp"

namespace pellrep {

bool in_relation_window(long n, long s) {
  // Scaled by 100: 30n - 30 < 100 s < 42n + 231.
  return 30 * n - 30 < 100 * s && 100 * s < 42 * n + 231;
}

std::vector<SolutionRecord> exhaustive_search(const SearchRange& range, unsigned threads) {
  if (range.k_min < 2 || range.k_max < range.k_min) throw DomainError("invalid k range");
  if (range.n_min < 0 || range.n_max < range.n_min) throw DomainError("invalid n range");
  const std::size_t count = static_cast<std::size_t>(range.k_max - range.k_min + 1);

  auto per_k = parallel_map(count, threads, [&](std::size_t i) {
    const int k = range.k_min + static_cast<int>(i);
    std::vector<SolutionRecord> hits;
    const auto terms = SequenceStore::shared().range(k, range.n_min, range.n_max);
    for (long n = range.n_min; n <= range.n_max; ++n) {
      const mpz_class& value = terms[static_cast<std::size_t>(n - range.n_min)];
      auto decompositions = decompose_repdigit_product(value);
      if (decompositions.empty()) continue;
      SolutionRecord rec{k, n, value, std::move(decompositions), true};
      for (const auto& d : rec.decompositions) {
        if (!in_relation_window(n, d.first.length + d.second.length)) rec.inside_window = false;
      }
      hits.push_back(std::move(rec));
    }
    return hits;
  });

  std::vector<SolutionRecord> out;
  for (auto& hits : per_k) {
    for (auto& h : hits) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace pellrep
