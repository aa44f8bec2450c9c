#include <doctest.h>

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "pellrep/bigseq.hpp"

using namespace pellrep;

namespace {

// Independent oracle: sliding window over a deque, no shared state with the store.
std::vector<mpz_class> recurrence_oracle(int k, long n_max) {
  std::deque<mpz_class> window(static_cast<std::size_t>(k - 2), 0);
  window.push_back(2);
  window.push_back(2);
  std::vector<mpz_class> out = {2, 2};
  for (long n = 2; n <= n_max; ++n) {
    mpz_class next = 2 * window.back();
    for (std::size_t i = 0; i + 1 < window.size(); ++i) next += window[window.size() - 2 - i];
    // window holds the last k terms; the sum above covers Q_{n-2}..Q_{n-k}
    out.push_back(next);
    window.push_back(next);
    window.pop_front();
  }
  return out;
}

std::set<std::tuple<int, long, int, long>> brute_force_pairs(long n) {
  std::set<std::tuple<int, long, int, long>> out;
  for (long l = 1; l <= 7; ++l) {
    for (int a = 1; a <= 9; ++a) {
      const long ra = repdigit_value(a, l).get_si();
      if (ra > n) continue;
      for (long m = l; m <= 7; ++m) {
        for (int b = 1; b <= 9; ++b) {
          if (m == l && b < a) continue;
          if (ra * repdigit_value(b, m).get_si() == n) out.insert({a, l, b, m});
        }
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("initial values and small terms") {
  CHECK(kpl_term(3, -1) == 0);
  CHECK(kpl_term(3, 0) == 2);
  CHECK(kpl_term(3, 1) == 2);
  CHECK(kpl_term(3, 2) == 6);
  CHECK(kpl_term(3, 5) == 102);
  CHECK(kpl_term(3, 6) == 260);
  CHECK(kpl_term(4, 7) == 726);
  CHECK(kpl_term(5, -3) == 0);
  CHECK_THROWS_AS(kpl_term(3, -2), DomainError);
  CHECK_THROWS_AS(kpl_term(1, 3), DomainError);
}

TEST_CASE("terms agree with an independent sliding-window recurrence") {
  for (int k = 2; k <= 20; ++k) {
    const auto oracle = recurrence_oracle(k, 60);
    for (long n = 0; n <= 60; ++n) {
      const mpz_class q = kpl_term(k, n);
      REQUIRE(q == oracle[static_cast<std::size_t>(n)]);
      CHECK(q > 0);
      CHECK(mpz_even_p(q.get_mpz_t()) != 0);
    }
  }
}

TEST_CASE("range matches term") {
  const auto r = SequenceStore::shared().range(7, -5, 40);
  REQUIRE(r.size() == 46);
  for (long n = -5; n <= 40; ++n) CHECK(r[static_cast<std::size_t>(n + 5)] == kpl_term(7, n));
}

TEST_CASE("fibonacci") {
  CHECK(fibonacci(0) == 0);
  CHECK(fibonacci(8) == 21);
  CHECK(fibonacci(10) == 55);
  mpz_class a = 0, b = 1;
  for (long n = 0; n < 200; ++n) {
    CHECK(fibonacci(n) == a);
    std::tie(a, b) = std::make_tuple(b, mpz_class(a + b));
  }
}

TEST_CASE("repdigits") {
  CHECK(repdigit_value(5, 2) == 55);
  CHECK(repdigit_value(1, 1) == 1);
  CHECK(repdigit_value(9, 3) == 999);
  CHECK_THROWS_AS(repdigit_value(0, 2), DomainError);
  CHECK_THROWS_AS(repdigit_value(10, 2), DomainError);
  CHECK_THROWS_AS(repdigit_value(3, 0), DomainError);

  const auto six = is_repdigit(666);
  REQUIRE(six);
  CHECK(six->digit == 6);
  CHECK(six->length == 3);
  CHECK_FALSE(is_repdigit(198));
  const auto two = is_repdigit(2);
  REQUIRE(two);
  CHECK(two->digit == 2);
  CHECK(two->length == 1);
  CHECK(decimal_digits(mpz_class("1000000000000000000000")) == 22);
}

TEST_CASE("decompositions of the table values") {
  auto as_strings = [](const mpz_class& n) {
    std::vector<std::string> out;
    for (const auto& d : decompose_repdigit_product(n)) out.push_back(d.to_string());
    return out;
  };
  CHECK(as_strings(726) == std::vector<std::string>{"11*66", "22*33"});
  CHECK(as_strings(16) == std::vector<std::string>{"2*8", "4*4"});
  CHECK(as_strings(10) == std::vector<std::string>{"2*5"});
  CHECK(as_strings(110) == std::vector<std::string>{"2*55", "5*22"});
  CHECK(as_strings(260).empty());
  CHECK(as_strings(102).empty());
  CHECK(as_strings(108).empty());
  CHECK(as_strings(6) == std::vector<std::string>{"1*6", "2*3"});
}

TEST_CASE("decomposition is complete against brute force below 10^6") {
  // Every product of two repdigits below 10^6, plus a stride of other integers.
  std::set<long> targets;
  for (long l = 1; l <= 6; ++l)
    for (int a = 1; a <= 9; ++a)
      for (long m = 1; m <= 6; ++m)
        for (int b = 1; b <= 9; ++b) {
          const mpz_class v = repdigit_value(a, l) * repdigit_value(b, m);
          if (v < 1000000) targets.insert(v.get_si());
        }
  for (long n = 1; n < 1000000; n += 997) targets.insert(n);

  for (long n : targets) {
    std::set<std::tuple<int, long, int, long>> got;
    for (const auto& d : decompose_repdigit_product(n)) {
      CHECK(d.value == n);
      CHECK(d.first.value() * d.second.value() == n);
      const bool canonical = d.first.length < d.second.length ||
                             (d.first.length == d.second.length && d.first.digit <= d.second.digit);
      CHECK(canonical);
      // digit-count pruning: l + m is d or d + 1
      const long digits = decimal_digits(n);
      const long s = d.first.length + d.second.length;
      CHECK((s == digits || s == digits + 1));
      got.insert({d.first.digit, d.first.length, d.second.digit, d.second.length});
    }
    REQUIRE(got == brute_force_pairs(n));
  }
}

TEST_CASE("relation with 2 F_{2n}") {
  const auto r3 = fib_relation_extent(3, 10);
  CHECK(r3.extent == 3);
  REQUIRE(r3.first_failure);
  CHECK(*r3.first_failure == 4);
  CHECK(r3.residual == -2);

  const auto r5 = fib_relation_extent(5, 10);
  CHECK(r5.extent == 5);
  CHECK(r5.residual == -2);

  const auto r2 = fib_relation_extent(2, 10);
  CHECK(r2.extent == 2);

  for (int k = 2; k <= 30; ++k) {
    const auto r = fib_relation_extent(k, 2 * k);
    CHECK(r.extent >= k);
    REQUIRE(r.first_failure);
    CHECK(*r.first_failure == k + 1);
    CHECK(r.residual == -2);
  }
}
