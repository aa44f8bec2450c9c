#include "pellrep/realalg.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "pellrep/bigseq.hpp"
#include "pellrep/gamma_cache.hpp"

namespace pellrep {

namespace {

constexpr int kMaxBisectionSteps = 60;
constexpr double kBisectionWidth = 1e-6;
constexpr int kMaxNewtonSteps = 200;

// Coefficient of x^i in the characteristic polynomial.
long coefficient(int k, int i) {
  if (i == k) return 1;
  if (i == k - 1) return -2;
  return -1;
}

CertifiedReal exact_midpoint(const CertifiedReal& lo, const CertifiedReal& hi) {
  mpfr_t m;
  mpfr_init2(m, lo.precision());
  mpfr_add(m, lo.lower(), hi.upper(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  CertifiedReal out = CertifiedReal::from_point(m);
  mpfr_clear(m);
  return out;
}

}  // namespace

CertifiedReal char_poly_eval(int k, const CertifiedReal& x) {
  if (k < 2) throw DomainError("polynomial order k must be at least 2");
  CertifiedReal acc = CertifiedReal::from_long(1, x.precision());
  for (int i = k - 1; i >= 0; --i) acc = acc * x + coefficient(k, i);
  return acc;
}

PolyWithDerivative char_poly_eval_with_derivative(int k, const CertifiedReal& x) {
  if (k < 2) throw DomainError("polynomial order k must be at least 2");
  CertifiedReal p = CertifiedReal::from_long(1, x.precision());
  CertifiedReal d = CertifiedReal::from_long(0, x.precision());
  for (int i = k - 1; i >= 0; --i) {
    d = d * x + p;
    p = p * x + coefficient(k, i);
  }
  return {p, d};
}

Precision root_working_precision(int k, Precision precision) {
  // phi^2 - gamma is about phi^{2-k}, i.e. 1.39k bits below the unit.
  return precision + 64 + static_cast<Precision>(std::ceil(1.4 * k));
}

CertifiedReal root_bracket_lower(int k, Precision precision) {
  const CertifiedReal phi = golden_ratio(precision);
  return sqr(phi) * (1 - pow(phi, -static_cast<long>(k)));
}

CertifiedReal dominant_root(int k, Precision precision) {
  if (k < 2) throw DomainError("polynomial order k must be at least 2");
  const Precision work = root_working_precision(k, precision);
  const CertifiedReal phi = golden_ratio(work);
  const CertifiedReal phi_sq = sqr(phi);
  const CertifiedReal bracket_lo = root_bracket_lower(k, work);

  CertifiedReal lo = CertifiedReal::from_point(bracket_lo.lower());
  CertifiedReal hi = CertifiedReal::from_point(phi_sq.upper());
  if (!char_poly_eval(k, lo).certainly_negative() || !char_poly_eval(k, hi).certainly_positive()) {
    throw std::logic_error("no certified sign change on the root bracket for k = " +
                           std::to_string(k));
  }

  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    if ((hi - lo).upper_double() < kBisectionWidth) break;
    const CertifiedReal mid = exact_midpoint(lo, hi);
    const CertifiedReal value = char_poly_eval(k, mid);
    if (value.certainly_negative()) {
      lo = mid;
    } else if (value.certainly_positive()) {
      hi = mid;
    } else {
      break;
    }
  }

  // Interval Newton: X <- X intersect (m - P(m) / P'(X)).
  CertifiedReal box = hull(lo, hi);
  const double target = -static_cast<double>(precision) / 2.0;
  double previous = box.log2_width();
  int stalled = 0;
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    const CertifiedReal mid = midpoint(box);
    const CertifiedReal slope = char_poly_eval_with_derivative(k, box).derivative;
    const CertifiedReal newton = mid - char_poly_eval(k, mid) / slope;
    auto next = intersect(box, newton);
    if (!next) throw std::logic_error("interval Newton lost the root for k = " + std::to_string(k));
    box = *next;
    const double width = box.log2_width();
    if (width < target && width > previous - 1.0) {
      if (++stalled >= 2) break;
    } else {
      stalled = 0;
    }
    previous = width;
  }
  if (!(box.log2_width() < target)) {
    throw InsufficientPrecision("dominant root enclosure too wide for k = " + std::to_string(k));
  }
  if (!certainly_less(bracket_lo, box) || !certainly_less(box, phi_sq)) {
    throw InsufficientPrecision("dominant root not separated from its bracket for k = " +
                                std::to_string(k));
  }
  return box;
}

CertifiedReal g_k_eval(int k, const CertifiedReal& z) {
  const CertifiedReal denom = (k + 1) * sqr(z) - (3L * k) * z + static_cast<long>(k - 1);
  if (denom.contains_zero()) {
    throw InsufficientPrecision("g_k denominator enclosure contains zero");
  }
  return (z - 1) / denom;
}

AlgebraicContext AlgebraicContext::build(int k, Precision precision) {
  if (k < 2) throw DomainError("polynomial order k must be at least 2");
  AlgebraicContext ctx;
  ctx.k = k;
  ctx.precision = precision;
  ctx.gamma = GammaCache::shared().get(k, precision);
  const Precision work = ctx.gamma.precision();
  ctx.phi = golden_ratio(work);
  ctx.g_gamma = g_k_eval(k, ctx.gamma);

  if (!char_poly_eval(k, ctx.gamma).contains_zero()) {
    throw std::logic_error("root enclosure does not annihilate the polynomial");
  }
  if (!(ctx.gamma.log2_width() < -static_cast<double>(precision) / 2.0)) {
    throw InsufficientPrecision("root enclosure too wide");
  }
  if (!certainly_less(root_bracket_lower(k, work), ctx.gamma) ||
      !certainly_less(ctx.gamma, sqr(ctx.phi))) {
    throw InsufficientPrecision("root not certified inside its bracket");
  }
  if (!certainly_less(CertifiedReal::from_decimal("0.276", work), ctx.g_gamma) ||
      !certainly_less(ctx.g_gamma, CertifiedReal::from_decimal("0.5", work))) {
    throw InsufficientPrecision("g_k(gamma) not certified inside (0.276, 0.5)");
  }
  return ctx;
}

CertifiedReal binet_residual(const AlgebraicContext& ctx, long n) {
  if (n < 2 - ctx.k) throw DomainError("residual requires n >= 2 - k");
  const CertifiedReal main = (2 * ctx.gamma - 2) * ctx.g_gamma * pow(ctx.gamma, n);
  const CertifiedReal exact = CertifiedReal::from_integer(kpl_term(ctx.k, n), ctx.gamma.precision());
  CertifiedReal residual = abs(exact - main);
  if (!certainly_less(residual, CertifiedReal::from_long(2, residual.precision()))) {
    throw InsufficientPrecision("residual not certified below 2 at n = " + std::to_string(n));
  }
  return residual;
}

bool growth_bounds_check(const AlgebraicContext& ctx, long n) {
  if (n < 1) throw DomainError("growth bounds require n >= 1");
  const CertifiedReal q = CertifiedReal::from_integer(kpl_term(ctx.k, n), ctx.gamma.precision());
  const CertifiedReal lower = pow(ctx.gamma, n - 1);
  const CertifiedReal upper = 2 * pow(ctx.gamma, n);
  const auto decide = [](const CertifiedReal& a, const CertifiedReal& b) {
    if (certainly_less_equal(a, b)) return true;
    if (certainly_less(b, a)) return false;
    throw InsufficientPrecision("growth bound undecided");
  };
  return decide(lower, q) && decide(q, upper);
}

CertifiedReal phi_half_power(const CertifiedReal& phi, long e) {
  if (e % 2 == 0) return pow(phi, e / 2);
  return sqrt(pow(phi, e));
}

PhiApproxChecks phi_approx_checks(const AlgebraicContext& ctx, long n) {
  const int k = ctx.k;
  if (k < 50) throw DomainError("golden-ratio approximation requires k >= 50");
  if (n <= 1) throw DomainError("golden-ratio approximation requires n > 1");
  const CertifiedReal& phi = ctx.phi;
  const CertifiedReal& gamma = ctx.gamma;
  const CertifiedReal phi_half_k = phi_half_power(phi, k);
  if (!certainly_less(CertifiedReal::from_long(n, phi.precision()), phi_half_k)) {
    throw DomainError("golden-ratio approximation requires n < phi^(k/2)");
  }

  PhiApproxChecks out;
  const CertifiedReal two_phi_pow = 2 * pow(phi, 2 * n + 1);
  const CertifiedReal lead = (2 * gamma - 2) * pow(gamma, n);
  out.power_gap_lhs = abs(lead - two_phi_pow);
  out.power_gap_rhs = 4 * pow(phi, 2 * n) / phi_half_k;
  out.power_gap = certainly_less(out.power_gap_lhs, out.power_gap_rhs);

  const CertifiedReal g_phi = g_k_eval(k, sqr(phi));
  out.g_gap_lhs = abs(ctx.g_gamma - g_phi);
  out.g_gap_rhs = (4L * k) / pow(phi, k);
  out.g_gap = certainly_less(out.g_gap_lhs, out.g_gap_rhs);

  const CertifiedReal xi = lead * ctx.g_gamma * (phi + 2) / two_phi_pow - 1;
  out.xi_abs = abs(xi);
  out.xi_rhs = CertifiedReal::from_decimal("1.25", phi.precision()) / phi_half_k;
  out.xi_bound = certainly_less(out.xi_abs, out.xi_rhs);
  return out;
}

AuxiliaryFacts xi_auxiliary_facts(int k, Precision precision) {
  const Precision work = precision + 2 * static_cast<Precision>(k);
  const CertifiedReal phi = golden_ratio(work);
  const CertifiedReal small = CertifiedReal::from_decimal("0.005", work) / phi_half_power(phi, k);
  AuxiliaryFacts out;
  out.first_term = certainly_less(2 / phi, CertifiedReal::from_decimal("1.24", work));
  out.second_term = certainly_less((4L * k) * (phi + 2) / pow(phi, k), small);
  out.third_term =
      certainly_less((8L * k) / phi * (phi + 2) / phi_half_power(phi, 3L * k), small);
  return out;
}

}  // namespace pellrep
