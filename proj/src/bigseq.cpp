#include "pellrep/bigseq.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace pellrep {

mpz_class Repdigit::value() const { return repdigit_value(digit, length); }

SequenceTable::SequenceTable(int k) : k_(k) {
  if (k < 2) throw DomainError("sequence order k must be at least 2");
  terms_.assign(static_cast<std::size_t>(k - 2), mpz_class(0));
  terms_.emplace_back(2);  // Q_0
  terms_.emplace_back(2);  // Q_1
  // The window holds the k terms ending at Q_1.
  window_sum_ = 4;
}

void SequenceTable::extend_to(long n) {
  // Q_n = 2 Q_{n-1} + Q_{n-2} + ... + Q_{n-k} = Q_{n-1} + (sum of last k terms).
  while (max_index() < n) {
    const std::size_t size = terms_.size();
    mpz_class next = terms_[size - 1] + window_sum_;
    window_sum_ += next;
    if (size >= static_cast<std::size_t>(k_)) {
      window_sum_ -= terms_[size - static_cast<std::size_t>(k_)];
    }
    terms_.push_back(std::move(next));
  }
}

const mpz_class& SequenceTable::at(long n) const {
  if (n < min_index() || n > max_index()) {
    throw DomainError("index " + std::to_string(n) + " not stored for k = " + std::to_string(k_));
  }
  return terms_[static_cast<std::size_t>(n - min_index())];
}

SequenceStore::Entry& SequenceStore::entry(int k) {
  std::lock_guard lock(map_mutex_);
  auto& slot = tables_[k];
  if (!slot) slot = std::make_unique<Entry>(k);
  return *slot;
}

mpz_class SequenceStore::term(int k, long n) {
  if (k < 2) throw DomainError("sequence order k must be at least 2");
  if (n < -(k - 2)) {
    throw DomainError("index " + std::to_string(n) + " below -(k-2) for k = " + std::to_string(k));
  }
  Entry& e = entry(k);
  {
    std::shared_lock read(e.mutex);
    if (n <= e.table.max_index()) return e.table.at(n);
  }
  std::unique_lock write(e.mutex);
  e.table.extend_to(n);
  return e.table.at(n);
}

std::vector<mpz_class> SequenceStore::range(int k, long lo, long hi) {
  std::vector<mpz_class> out;
  if (hi < lo) return out;
  term(k, hi);
  Entry& e = entry(k);
  std::shared_lock read(e.mutex);
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) out.push_back(e.table.at(n));
  return out;
}

SequenceStore& SequenceStore::shared() {
  static SequenceStore store;
  return store;
}

mpz_class kpl_term(int k, long n) { return SequenceStore::shared().term(k, n); }

mpz_class fibonacci(long n) {
  if (n < 0) throw DomainError("fibonacci index must be non-negative");
  mpz_class f;
  mpz_fib_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class repdigit_value(int a, long l) {
  if (a < 1 || a > 9) throw DomainError("repdigit digit must be in [1, 9]");
  if (l < 1) throw DomainError("repdigit length must be at least 1");
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(l));
  return a * (p - 1) / 9;
}

long decimal_digits(const mpz_class& n) { return static_cast<long>(n.get_str(10).size()); }

std::optional<Repdigit> is_repdigit(const mpz_class& n) {
  if (n <= 0) return std::nullopt;
  const std::string s = n.get_str(10);
  if (std::all_of(s.begin(), s.end(), [&](char c) { return c == s[0]; })) {
    return Repdigit{s[0] - '0', static_cast<long>(s.size())};
  }
  return std::nullopt;
}

std::vector<Decomposition> decompose_repdigit_product(const mpz_class& n) {
  std::vector<Decomposition> out;
  if (n < 1) return out;
  // Canonical order puts the shorter factor first, so it suffices to try every
  // repunit R_l with R_l^2 <= n and split n / R_l into a digit pair.
  mpz_class repunit = 1;
  for (long l = 1; repunit * repunit <= n; ++l) {
    if (mpz_divisible_p(n.get_mpz_t(), repunit.get_mpz_t())) {
      const mpz_class rest = n / repunit;
      for (int a = 1; a <= 9; ++a) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(a))) continue;
        const mpz_class other = rest / a;
        const auto second = is_repdigit(other);
        if (!second || second->length < l) continue;
        Repdigit first{a, l};
        if (second->length == l && second->digit < a) continue;
        out.push_back(Decomposition{first, *second, n});
      }
    }
    repunit = repunit * 10 + 1;
  }
  std::sort(out.begin(), out.end(), [](const Decomposition& x, const Decomposition& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });
  return out;
}

FibRelation fib_relation_extent(int k, long n_max) {
  FibRelation rel;
  for (long n = 1; n <= n_max; ++n) {
    const mpz_class diff = kpl_term(k, n) - 2 * fibonacci(2 * n);
    if (diff != 0) {
      rel.first_failure = n;
      rel.residual = diff;
      return rel;
    }
    rel.extent = n;
  }
  return rel;
}

}  // namespace pellrep
