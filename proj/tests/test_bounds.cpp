#include <doctest.h>

#include <cmath>
#include <random>

#include "pellrep/bounds.hpp"
#include "pellrep/search.hpp"

using namespace pellrep;

namespace {

const ChainConstant& need(const BoundChainResult& r, const std::string& name) {
  const ChainConstant* c = r.find(name);
  REQUIRE_MESSAGE(c != nullptr, name);
  return *c;
}

LinearFormInstance instance(int s, long d, double D, std::vector<double> b) {
  LinearFormInstance inst;
  inst.s = s;
  inst.degree = d;
  inst.max_exponent = CertifiedReal::from_decimal(std::to_string(D));
  for (double x : b) inst.heights.push_back(CertifiedReal::from_decimal(std::to_string(x)));
  return inst;
}

}  // namespace

TEST_CASE("logarithmic heights of rationals") {
  CHECK(log_height_rational(81, 1).contains(log(CertifiedReal::from_long(81, 512))));
  CHECK(log_height_rational(1, 2).contains(log(CertifiedReal::from_long(2, 512))));
  CHECK(log_height_rational(10, 1).contains(log_ten(512)));
  CHECK(log_height_rational(-7, 3).contains(log(CertifiedReal::from_long(7, 512))));
  CHECK_THROWS_AS(log_height_rational(1, 0), DomainError);
  CHECK_THROWS_AS(log_height_rational(2, 4), DomainError);
}

TEST_CASE("Matveev factor") {
  const double oracle = 1.4 * std::pow(30.0, 6) * std::pow(3.0, 4.5);
  const auto c3 = matveev_leading_factor(3);
  CHECK(c3.lower_double() <= oracle * (1 + 1e-12));
  CHECK(c3.upper_double() >= oracle * (1 - 1e-12));
  CHECK(round_up_sig(c3, 4) == mpq_class(143200000000));

  const auto two = matveev_rhs(instance(2, 1, 1, {0.2, 0.2}));
  const double expected2 = 1.4 * std::pow(30.0, 5) * std::pow(2.0, 4.5) * 0.04;
  CHECK(two.upper_double() == doctest::Approx(expected2).epsilon(1e-12));

  const auto base = matveev_rhs(instance(3, 4, 10, {1, 2, 3}));
  CHECK(certainly_less(base, matveev_rhs(instance(3, 4, 10, {1.5, 2, 3}))));
  CHECK(certainly_less(base, matveev_rhs(instance(3, 4, 10, {1, 2, 3.5}))));
  CHECK(certainly_less(base, matveev_rhs(instance(3, 4, 11, {1, 2, 3}))));
  CHECK(certainly_less(base, matveev_rhs(instance(3, 5, 10, {1, 2, 3}))));
  CHECK_THROWS_AS(instance(3, 1, 1, {0.1, 1, 1}).validate(), DomainError);
  CHECK_THROWS_AS(instance(1, 1, 1, {1}).validate(), DomainError);
}

TEST_CASE("first-base height for small k") {
  CHECK(first_base_height_small(3).holds);
  CHECK(first_base_height_small(640).holds);
  CHECK_THROWS_AS(first_base_height_small(2), DomainError);
}

TEST_CASE("significant figures and rounding up") {
  CHECK(significant_figures("1.432e11") == 4);
  CHECK(significant_figures("58.72") == 4);
  CHECK(significant_figures("11.1e13") == 3);
  CHECK(significant_figures("4.1e34") == 2);
  CHECK(round_up_sig(CertifiedReal::from_decimal("58.7278"), 4) == mpq_class(5873, 100));
  CHECK(make_chain_constant("x", "", CertifiedReal::from_decimal("58.7278"), "58.72").status ==
        ConstantStatus::Undercut);
  CHECK(make_chain_constant("x", "", CertifiedReal::from_decimal("1.0028e25"), "1.2e25").status ==
        ConstantStatus::Conservative);
  CHECK(make_chain_constant("x", "", CertifiedReal::from_decimal("1.431861e11"), "1.432e11").status ==
        ConstantStatus::Match);
}

TEST_CASE("small-k chain constants") {
  const auto r = small_k_chain(3);
  const std::vector<std::pair<std::string, ConstantStatus>> expected = {
      {"matveev-leading-s3", ConstantStatus::Match},  {"small-leading-coefficient", ConstantStatus::Match},
      {"l-coefficient", ConstantStatus::Match},       {"small-full-height-coefficient", ConstantStatus::Match},
      {"small-full-matveev", ConstantStatus::Match}, {"m-coefficient", ConstantStatus::Match},
      {"n-over-log2-coefficient", ConstantStatus::Match}, {"four-s", ConstantStatus::Match},
      {"log-s-constant", ConstantStatus::Undercut},   {"log-ratio", ConstantStatus::Match},
      {"n-coefficient", ConstantStatus::Match}};
  for (const auto& [name, status] : expected) {
    INFO(name);
    CHECK(need(r, name).status == status);
  }
  CHECK(need(r, "log-s-constant").used.contains(mpq_class(5873, 100)));
  CHECK(r.all_checks_hold());

  // n_bound is the closed formula at k = 3.
  const auto k3 = CertifiedReal::from_long(3, 512);
  const auto formula = CertifiedReal::from_decimal("5.1e29", 512) * pow(k3, 9) * pow(log(k3), 5);
  REQUIRE(r.n_bound);
  CHECK(intersect(*r.n_bound, formula).has_value());
  CHECK(intersect(small_k_n_bound(3L), formula).has_value());

  // 58.72 + 9 log k + 3 log log k < 62.8 log k at k = 3
  const auto lhs = CertifiedReal::from_decimal("58.72") + 9 * log(k3) + 3 * log(log(k3));
  CHECK(certainly_less(lhs, CertifiedReal::from_decimal("62.8") * log(k3)));
}

TEST_CASE("small-k chain grows with k") {
  auto prev = small_k_chain(3);
  for (int k : {4, 10, 100, 640}) {
    const auto next = small_k_chain(k);
    CHECK(certainly_less(*prev.n_bound, *next.n_bound));
    CHECK(certainly_less(*prev.l_bound, *next.l_bound));
    CHECK(certainly_less(*prev.m_bound, *next.m_bound));
    CHECK(next.all_checks_hold());
    prev = next;
  }
  const double ratio = small_k_n_bound(640L).upper_double() / 1.2e59;
  CHECK(ratio > 0.5);
  CHECK(ratio < 2);
}

TEST_CASE("two-step resolution") {
  const auto s16 = CertifiedReal::from_long(16, 256);
  CHECK(solve_log_power_bound(s16, 1).contains(32 * log(s16)));
  CHECK_THROWS_AS(solve_log_power_bound(CertifiedReal::from_long(3), 1), DomainError);
  CHECK_THROWS_AS(solve_log_power_bound(CertifiedReal::from_long(63), 2), DomainError);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ex(1.0, 12.0);
  for (int i = 0; i < 10000; ++i) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const double x = std::pow(10.0, ex(rng));
    const double s_min = std::pow(4.0 * m * m, m);
    const double ratio = x / std::pow(std::log(x), m);
    const double s = std::max(s_min, ratio * (1 + 1e-9)) * (1 + (rng() % 100) / 50.0);
    const auto bound = solve_log_power_bound(CertifiedReal::from_decimal(std::to_string(s)), m);
    CHECK(bound.lower_double() > x);
  }
}

TEST_CASE("large-k chain") {
  const auto c1 = large_k_chain(LargeCase::LambdaHalfK);
  REQUIRE(c1.k_bound);
  REQUIRE(c1.n_bound);
  CHECK(c1.k_bound->upper_double() == doctest::Approx(7.15e17).epsilon(0.01));
  CHECK(std::log10(c1.n_bound->upper_double()) == doctest::Approx(198 + std::log10(2.93)).epsilon(1e-4));
  REQUIRE(c1.fixed_point);
  CHECK(c1.fixed_point->converged);
  CHECK(c1.fixed_point->monotone);
  CHECK(c1.fixed_point->relative_residual < 1e-3);
  CHECK(c1.all_checks_hold());

  const auto c2 = large_k_chain(LargeCase::LambdaThetaL);
  REQUIRE(c2.k_bound);
  CHECK(c2.k_bound->upper_double() == doctest::Approx(4.1e34).epsilon(0.01));
  CHECK(need(c2, "case2-k").status == ConstantStatus::Conservative);
  CHECK(need(c2, "case2-n").status == ConstantStatus::Match);
  CHECK(need(c2, "large-full-matveev").status == ConstantStatus::Match);
  CHECK(need(c2, "k-over-log2-n").status == ConstantStatus::Match);
  CHECK(need(c2, "l-over-log-n").status == ConstantStatus::Match);
  REQUIRE(c2.fixed_point);
  CHECK(c2.fixed_point->converged);
  CHECK(c2.fixed_point->monotone);
  CHECK(c2.all_checks_hold());
}

TEST_CASE("linear forms at the search hits") {
  const Witness w{4, 7, 1, 2, 6, 2};
  const auto ctx = AlgebraicContext::build(4);
  const auto l1 = lambda_residual(LinearFormLabel::SmallKLeading, w, ctx);
  CHECK(l1.holds);
  CHECK(l1.nonzero);
  const auto l2 = lambda_residual(LinearFormLabel::SmallKFull, w, ctx);
  CHECK(l2.holds);
  CHECK(l2.nonzero);
  CHECK_FALSE(lambda_residual(LinearFormLabel::LargeKLeading, w, ctx).applicable);
  CHECK_THROWS_AS(lambda_residual(LinearFormLabel::SmallKLeading, Witness{4, 7, 1, 2, 5, 2}, ctx), DomainError);

  for (const auto& hit : exhaustive_search({3, 12, 1, 40})) {
    const auto c = AlgebraicContext::build(hit.k);
    for (const auto& d : hit.decompositions) {
      const Witness x{hit.k, hit.n, d.first.digit, d.first.length, d.second.digit, d.second.length};
      for (auto label : {LinearFormLabel::SmallKLeading, LinearFormLabel::SmallKFull}) {
        const auto r = lambda_residual(label, x, c);
        CHECK(r.holds);
        CHECK(r.nonzero);
      }
    }
  }
}

TEST_CASE("relation window") {
  const auto g4 = AlgebraicContext::build(4).gamma;
  const auto w7 = relation_window(7, g4);
  CHECK(w7.lower.contains(mpq_class(18, 10)));
  CHECK(w7.upper.contains(mpq_class(525, 100)));
  CHECK(w7.contains(4));
  CHECK_FALSE(w7.contains(6));
  CHECK(relation_window(5, g4).contains(3));
  const auto w3 = relation_window(5, AlgebraicContext::build(3).gamma);
  CHECK(w3.ratio_in_range);
  CHECK(w3.ratio.upper_double() == doctest::Approx(0.406).epsilon(0.002));
}
