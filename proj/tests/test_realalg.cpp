#include <doctest.h>

#include "pellrep/bigseq.hpp"
#include "pellrep/gamma_cache.hpp"
#include "pellrep/realalg.hpp"

using namespace pellrep;

namespace {

// Exact rational bisection on x^3 - 2x^2 - x - 1 over [2, 2.618].
mpq_class bisect_k3(int steps) {
  mpq_class lo(2), hi(2618, 1000);
  auto f = [](const mpq_class& x) { return mpq_class(x * x * x - 2 * x * x - x - 1); };
  for (int i = 0; i < steps; ++i) {
    mpq_class mid = (lo + hi) / 2;
    mid.canonicalize();
    if (f(mid) < 0) lo = mid; else hi = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("characteristic polynomial") {
  const auto root2 = 1 + sqrt(CertifiedReal::from_long(2, 256));
  CHECK(char_poly_eval(2, root2).contains_zero());
  CHECK(char_poly_eval(3, CertifiedReal::from_decimal("2.5")).contains(mpq_class(-3, 8)));
  const auto pd = char_poly_eval_with_derivative(3, CertifiedReal::from_decimal("2.5"));
  // 3x^2 - 4x - 1 at 2.5
  CHECK(pd.derivative.contains(mpq_class(31, 4)));
}

TEST_CASE("dominant root") {
  const auto g2 = dominant_root(2, 256);
  CHECK(g2.contains(1 + sqrt(CertifiedReal::from_long(2, 512))));

  const auto g3 = dominant_root(3, 256);
  const mpq_class lo = bisect_k3(40);
  CHECK(certainly_less(CertifiedReal::from_rational(lo - mpq_class(1, 1000000000)), g3));
  CHECK(certainly_less(g3, CertifiedReal::from_rational(lo + mpq_class(1, 1000000000))));
  CHECK(char_poly_eval(3, g3).contains_zero());

  const auto g50 = dominant_root(50, 256);
  CHECK(g50.width_upper() < 1e-30);
  const auto phi = golden_ratio(512);
  CHECK(certainly_less(root_bracket_lower(50, 512), g50));
  CHECK(certainly_less(g50, sqr(phi)));
}

TEST_CASE("root enclosures tighten with precision") {
  for (int k : {3, 7, 40}) {
    const auto a = dominant_root(k, 256);
    const auto b = dominant_root(k, 512);
    CHECK(a.contains(b));
    CHECK(b.width_upper() <= a.width_upper());
  }
}

TEST_CASE("g_k") {
  const auto phi = golden_ratio(256);
  for (int k : {3, 10, 77}) CHECK(g_k_eval(k, sqr(phi)).contains(1 / (phi + 2)));
  const auto root2 = 1 + sqrt(CertifiedReal::from_long(2, 256));
  // sqrt(2) / (3 (3 + 2 sqrt 2) - 6 (1 + sqrt 2) + 1) = sqrt(2) / 4
  CHECK(g_k_eval(2, root2).contains(sqrt(CertifiedReal::from_long(2, 512)) / 4));
  const auto ctx = AlgebraicContext::build(3);
  CHECK(certainly_less(CertifiedReal::from_decimal("0.276"), ctx.g_gamma));
  CHECK(certainly_less(ctx.g_gamma, CertifiedReal::from_decimal("0.5")));
}

TEST_CASE("bracket and g bounds hold for k in [2, 700]") {
  for (int k = 2; k <= 700; k += (k < 60 ? 1 : 13)) {
    const auto ctx = AlgebraicContext::build(k);
    CHECK(char_poly_eval(k, ctx.gamma).contains_zero());
    CHECK(certainly_less(root_bracket_lower(k, ctx.gamma.precision()), ctx.gamma));
    CHECK(certainly_less(ctx.gamma, sqr(golden_ratio(ctx.gamma.precision()))));
  }
}

TEST_CASE("Binet residual and growth bounds") {
  for (int k = 3; k <= 12; ++k) {
    const auto ctx = AlgebraicContext::build(k);
    for (long n = 2 - k; n <= 40; ++n) {
      const auto r = binet_residual(ctx, n);
      CHECK(certainly_less(r, CertifiedReal::from_long(2)));
    }
  }
  const auto ctx4 = AlgebraicContext::build(4);
  const auto r = binet_residual(ctx4, 7);
  CHECK(r.upper_double() < 2);
  CHECK_THROWS_AS(binet_residual(ctx4, -3), DomainError);

  for (int k = 2; k <= 12; ++k) {
    const auto ctx = AlgebraicContext::build(k);
    for (long n = 1; n <= 40; ++n) CHECK(growth_bounds_check(ctx, n));
  }
}

TEST_CASE("golden-ratio approximations for large k") {
  for (int k : {50, 64, 100}) {
    const auto ctx = AlgebraicContext::build(k);
    for (long n : {2L, 10L, 60L, 1000L, 100000L}) {
      const auto c = phi_approx_checks(ctx, n);
      CHECK(c.all());
    }
  }
  CHECK_THROWS_AS(phi_approx_checks(AlgebraicContext::build(50), 1), DomainError);
  CHECK_THROWS_AS(phi_approx_checks(AlgebraicContext::build(20), 5), DomainError);
  for (int k : {50, 60, 100}) CHECK(xi_auxiliary_facts(k).all());
}

TEST_CASE("half powers of phi") {
  const auto phi = golden_ratio(256);
  CHECK(phi_half_power(phi, 4).contains(sqr(phi)));
  CHECK(sqr(phi_half_power(phi, 3)).contains(pow(phi, 3)));
}

TEST_CASE("gamma cache round trip") {
  GammaCache cache;
  const auto a = cache.get(5, 256);
  CHECK(cache.contains(5, 256));
  const auto path = std::filesystem::temp_directory_path() / "pellrep-test-gamma-cache.txt";
  cache.save(path);
  GammaCache other;
  CHECK(other.load(path) == 1);
  CHECK(other.get(5, 256).contains(a));
  std::filesystem::remove(path);
}
