#include "pellrep/theorem.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pellrep {

const std::vector<ClaimedRow>& claimed_rows() {
  static const std::vector<ClaimedRow> rows = {
      {"Q1", 1, 3, std::nullopt, {{1, 2}, {2, 1}}},
      {"Q2", 2, 3, std::nullopt, {{1, 6}, {2, 3}, {3, 2}, {6, 1}}},
      {"Q3", 3, 3, std::nullopt, {{2, 8}, {4, 4}, {8, 1}}},
      {"Q4(k=3)", 4, 3, 3, {{5, 8}, {8, 5}}},
      {"Q4(k>=4)", 4, 4, std::nullopt, {{6, 7}, {7, 6}}},
      {"Q5", 5, 3, std::nullopt, {{22, 5}, {55, 2}, {2, 55}, {5, 22}}},
      {"Q7(k=4)", 7, 4, 4, {{11, 66}, {66, 11}, {22, 33}, {33, 22}}},
  };
  return rows;
}

std::string to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Match: return "match";
    case RowStatus::ValueTypo: return "value-typo";
    case RowStatus::RangeMismatch: return "range-mismatch";
    case RowStatus::Missing: return "missing";
  }
  return "unknown";
}

std::size_t TheoremComparison::issue_count() const {
  std::size_t count = extras.size();
  for (const auto& r : rows) count += r.issues.size();
  return count;
}

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

TheoremComparison verify_theorem(const std::vector<SolutionRecord>& hits, const SearchRange& range) {
  std::map<std::pair<int, long>, const SolutionRecord*> by_kn;
  for (const auto& h : hits) by_kn[{h.k, h.n}] = &h;
  std::set<std::pair<int, long>> covered;

  TheoremComparison out;
  for (const auto& row : claimed_rows()) {
    RowComparison cmp;
    cmp.id = row.id;
    cmp.n = row.n;
    cmp.k_range = row.k_max ? (row.k_min == *row.k_max ? "k=" + std::to_string(row.k_min)
                                                       : "k in [" + std::to_string(row.k_min) + "," +
                                                             std::to_string(*row.k_max) + "]")
                            : "k>=" + std::to_string(row.k_min);

    const int lo = std::max(row.k_min, range.k_min);
    const int hi = row.k_max ? std::min(*row.k_max, range.k_max) : range.k_max;
    const bool n_in_box = row.n >= range.n_min && row.n <= range.n_max;

    // A printed product is a typo when it equals the row value at no k of the range.
    std::set<mpz_class> values;
    for (int k = lo; k <= hi && n_in_box; ++k) values.insert(SequenceStore::shared().term(k, row.n));
    std::set<std::pair<long, long>> printed_ok;
    for (const auto& [x, y] : row.products) {
      if (values.empty()) break;
      const mpz_class product = mpz_class(x) * y;
      if (is_repdigit(mpz_class(x)) && is_repdigit(mpz_class(y)) && values.count(product)) {
        printed_ok.insert({x, y});
      } else {
        std::string seen;
        for (const auto& v : values) seen += (seen.empty() ? "" : "/") + v.get_str();
        cmp.issues.push_back({RowStatus::ValueTypo, std::to_string(x) + "*" + std::to_string(y) + " = " +
                                                        product.get_str() + ", row value " + seen});
      }
    }

    bool any_hit = false;
    for (int k = lo; k <= hi && n_in_box; ++k) {
      cmp.ks_checked.push_back(k);
      const auto it = by_kn.find({k, row.n});
      const mpz_class value = SequenceStore::shared().term(k, row.n);
      bool products_hold = true;
      for (const auto& pr : printed_ok) {
        if (mpz_class(pr.first) * pr.second != value) products_hold = false;
      }
      if (it == by_kn.end() || !products_hold) {
        cmp.ks_without_hit.push_back(k);
        continue;
      }
      any_hit = true;
      covered.insert({k, row.n});
      // Every decomposition found must be printed (in either order).
      for (const auto& d : it->second->decompositions) {
        const long x = d.first.value().get_si();
        const long y = d.second.value().get_si();
        if (!printed_ok.count({x, y}) && !printed_ok.count({y, x})) {
          cmp.issues.push_back({RowStatus::Missing, "k=" + std::to_string(k) + ": " + d.to_string() +
                                                        " not listed"});
        }
      }
    }
    if (!cmp.ks_checked.empty() && !any_hit) {
      cmp.issues.push_back({RowStatus::Missing, "no hit for any k in range"});
    } else if (!cmp.ks_without_hit.empty()) {
      std::string detail = "Q" + std::to_string(row.n) + " is not a product of two repdigits for k in {" +
                           join_ints(cmp.ks_without_hit) + "}";
      std::string given;
      for (int k : cmp.ks_without_hit) {
        given += (given.empty() ? "" : ", ") + std::string("k=") + std::to_string(k) + " gives " +
                 SequenceStore::shared().term(k, row.n).get_str();
        if (given.size() > 200) break;
      }
      detail += " (" + given + ")";
      cmp.issues.push_back({RowStatus::RangeMismatch, detail});
    }
    out.rows.push_back(std::move(cmp));
  }

  for (const auto& h : hits) {
    if (!covered.count({h.k, h.n})) out.extras.push_back(h);
  }
  return out;
}

}  // namespace pellrep
