#pragma once

// Exact integer layer: k-Pell-Lucas terms, Fibonacci numbers, repdigits and
// decompositions of an integer as a product of two repdigits.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "pellrep/errors.hpp"

namespace pellrep {

/// a * (10^l - 1) / 9 with a in [1, 9] and l >= 1.
struct Repdigit {
  int digit = 1;
  long length = 1;

  mpz_class value() const;
  std::string to_string() const { return std::string(static_cast<std::size_t>(length), char('0' + digit)); }
  friend bool operator==(const Repdigit&, const Repdigit&) = default;
  friend auto operator<=>(const Repdigit&, const Repdigit&) = default;
};

/// N = first * second with first.length <= second.length, ties broken by digit.
struct Decomposition {
  Repdigit first;
  Repdigit second;
  mpz_class value;

  std::string to_string() const { return first.to_string() + "*" + second.to_string(); }
  friend bool operator==(const Decomposition& a, const Decomposition& b) {
    return a.first == b.first && a.second == b.second && a.value == b.value;
  }
};

/// Terms Q_n for one fixed order k, stored contiguously from n = -(k-2).
class SequenceTable {
 public:
  explicit SequenceTable(int k);

  int k() const { return k_; }
  long min_index() const { return -(k_ - 2); }
  /// Largest index currently stored.
  long max_index() const { return min_index() + static_cast<long>(terms_.size()) - 1; }

  /// Extends the table through index n (no-op if already present).
  void extend_to(long n);
  /// Q_n; n must already be stored.
  const mpz_class& at(long n) const;

 private:
  int k_;
  std::vector<mpz_class> terms_;
  // Running sum of the last k stored terms, used for the O(1) step.
  mpz_class window_sum_;
};

/// Thread-safe collection of per-k tables. Readers of already computed terms
/// take a shared lock only; extension takes the exclusive lock of that k.
class SequenceStore {
 public:
  /// Q_n^{(k)}; throws DomainError for k < 2 or n < -(k-2).
  mpz_class term(int k, long n);
  /// Q_lo..Q_hi inclusive.
  std::vector<mpz_class> range(int k, long lo, long hi);

  /// Process-wide store shared by campaign workers.
  static SequenceStore& shared();

 private:
  struct Entry {
    mutable std::shared_mutex mutex;
    SequenceTable table;
    explicit Entry(int k) : table(k) {}
  };
  Entry& entry(int k);

  std::mutex map_mutex_;
  std::map<int, std::unique_ptr<Entry>> tables_;
};

/// Q_n^{(k)} through the shared store.
mpz_class kpl_term(int k, long n);

/// F_n with F_0 = 0, F_1 = 1.
mpz_class fibonacci(long n);

/// a * (10^l - 1) / 9. Throws DomainError unless 1 <= a <= 9 and l >= 1.
mpz_class repdigit_value(int a, long l);

/// Witness (a, l) when n > 0 has a single repeated decimal digit.
std::optional<Repdigit> is_repdigit(const mpz_class& n);

/// Every canonical way of writing n as a product of two repdigits.
std::vector<Decomposition> decompose_repdigit_product(const mpz_class& n);

/// Number of decimal digits of n > 0.
long decimal_digits(const mpz_class& n);

struct FibRelation {
  long extent = 0;                 // largest n with Q_i = 2 F_{2i} for all 1 <= i <= n
  std::optional<long> first_failure;
  mpz_class residual;              // Q_f - 2 F_{2f} at the first failure, else 0
};

/// Checks Q_n^{(k)} = 2 F_{2n} for n = 1..n_max.
FibRelation fib_relation_extent(int k, long n_max);

}  // namespace pellrep
