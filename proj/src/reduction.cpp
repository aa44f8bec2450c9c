#include "pellrep/reduction.hpp"

#include <algorithm>
#include <string>

namespace pellrep {

namespace {

Precision bits_for(const mpz_class& q) { return static_cast<Precision>(mpz_sizeinbase(q.get_mpz_t(), 2)); }

}  // namespace

long dw_index_bound(const mpz_class& x0) {
  if (x0 < 1) throw DomainError("X0 must be at least 1");
  const Precision p = std::max<Precision>(kDefaultPrecision, bits_for(x0) + 64);
  const CertifiedReal phi = golden_ratio(p);
  const CertifiedReal y0 =
      log(1 + CertifiedReal::from_integer(x0, p) * sqrt(CertifiedReal::from_long(5, p))) / log(phi) - 1;
  return ceil_upper(y0).get_si();
}

ReductionResult dw_homogeneous(const ReductionProblem& prob, const ContinuedFraction& cf) {
  if (!prob.homogeneous()) throw DomainError("homogeneous reduction called with a shift term");
  const long y0 = dw_index_bound(prob.x0);
  if (static_cast<long>(cf.size()) < y0 + 2) {
    throw DomainError("continued fraction too short for index bound " + std::to_string(y0));
  }
  mpz_class a_max = 0;
  for (long t = 0; t <= y0; ++t) a_max = std::max(a_max, cf.partial_quotients[static_cast<std::size_t>(t) + 1]);
  const Precision p = std::max<Precision>(kDefaultPrecision, bits_for(prob.x0) + 64);
  ReductionResult out;
  out.precision = p;
  out.y_bound = log(prob.c.with_precision(p) * CertifiedReal::from_integer(a_max + 2, p) *
                    CertifiedReal::from_integer(prob.x0, p) / prob.theta2_abs(p)) /
                prob.rho.with_precision(p);
  return out;
}

std::optional<NearestIntegerDistance> distance_to_integer(const CertifiedReal& y) {
  mpz_class f_lo;
  mpz_class f_hi;
  mpfr_get_z(f_lo.get_mpz_t(), y.lower(), MPFR_RNDD);
  mpfr_get_z(f_hi.get_mpz_t(), y.upper(), MPFR_RNDD);
  const Precision p = y.precision();
  const CertifiedReal lo_pt = CertifiedReal::from_point(y.lower());
  const CertifiedReal hi_pt = CertifiedReal::from_point(y.upper());
  auto smaller_upper = [](const CertifiedReal& a, const CertifiedReal& b) {
    return CertifiedReal::from_point(mpfr_lessequal_p(a.upper(), b.upper()) ? a.upper() : b.upper());
  };
  auto larger_upper = [](const CertifiedReal& a, const CertifiedReal& b) {
    return CertifiedReal::from_point(mpfr_lessequal_p(a.upper(), b.upper()) ? b.upper() : a.upper());
  };

  if (f_lo != f_hi || mpfr_integer_p(y.lower())) {
    // The enclosure reaches an integer n: ||y|| lies in [0, max(hi - n, n - lo)].
    if (f_hi - f_lo > 1) return std::nullopt;
    const CertifiedReal n = CertifiedReal::from_integer(f_hi, p);
    const CertifiedReal spread = larger_upper(hi_pt - n, n - lo_pt);
    if (!certainly_less(spread, CertifiedReal::from_decimal("0.5", p))) return std::nullopt;
    return NearestIntegerDistance{CertifiedReal(p), spread};
  }

  const CertifiedReal f = CertifiedReal::from_integer(f_lo, p);
  const CertifiedReal left = lo_pt - f;
  const CertifiedReal right = (f + 1) - hi_pt;
  // The tent is smallest at an endpoint and never exceeds min(hi - f, f + 1 - lo).
  NearestIntegerDistance d;
  d.lower = CertifiedReal::from_point(mpfr_lessequal_p(left.lower(), right.lower()) ? left.lower()
                                                                                    : right.lower());
  d.upper = smaller_upper(hi_pt - f, (f + 1) - lo_pt);
  return d;
}

ReductionResult dw_inhomogeneous(const ReductionProblem& prob, const ContinuedFraction& cf,
                                 const PrecisionLadder& ladder) {
  if (prob.homogeneous()) throw DomainError("inhomogeneous reduction needs a shift term");
  const auto first = cf.first_denominator_above(prob.x0);
  if (!first) throw DomainError("no convergent denominator exceeds X0");

  int attempts = 0;
  for (std::size_t t = *first; t < cf.size() && attempts < kMaxConvergentAttempts; ++t) {
    ++attempts;
    const mpz_class& q = cf.convergents[t].q;
    // ||q psi|| needs psi to about log2(q) + log2(q / X0) + slack bits.
    const Precision need = 2 * bits_for(q) + 64;
    Precision start = std::max(ladder.start, need);
    if (start > ladder.cap) start = ladder.cap;
    std::optional<bool> passed;
    Precision used = start;
    CertifiedReal margin;
    for (Precision prec = start;; prec *= 2) {
      if (prec > ladder.cap) prec = ladder.cap;
      used = prec;
      const CertifiedReal qq = CertifiedReal::from_integer(q, prec);
      const CertifiedReal threshold = 2 * CertifiedReal::from_integer(prob.x0, prec) / qq;
      const auto dist = distance_to_integer(qq * (*prob.psi)(prec));
      if (dist) {
        if (certainly_less(threshold, dist->lower)) {
          passed = true;
          margin = dist->lower - threshold;
          break;
        }
        if (certainly_less_equal(dist->upper, threshold)) {
          passed = false;
          break;
        }
      }
      if (prec >= ladder.cap) {
        throw InsufficientPrecision("||q psi|| undecided at the precision cap for " + prob.label,
                                    static_cast<long>(t));
      }
    }
    if (!*passed) continue;

    ReductionResult out;
    out.index = static_cast<long>(t);
    out.q = q;
    out.attempts = attempts;
    out.precision = used;
    out.margin = margin;
    const CertifiedReal qq = CertifiedReal::from_integer(q, used);
    out.y_bound = log(sqr(qq) * prob.c.with_precision(used) /
                      (prob.theta2_abs(used) * CertifiedReal::from_integer(prob.x0, used))) /
                  prob.rho.with_precision(used);
    return out;
  }
  throw ReductionFailure("hypothesis failed on " + std::to_string(attempts) +
                         " convergents for " + prob.label);
}

CertifiedReal linearize_constant(const mpq_class& a, Precision precision) {
  if (a <= 0 || a >= 1) throw DomainError("linearization needs 0 < a < 1");
  const CertifiedReal aa = CertifiedReal::from_rational(a, precision);
  return -log(1 - aa) / aa;
}

CertifiedReal linearize_inverse_factor(const mpq_class& a, Precision precision) {
  if (a <= 0 || a >= 1) throw DomainError("linearization needs 0 < a < 1");
  const CertifiedReal aa = CertifiedReal::from_rational(a, precision);
  return aa / (1 - exp(-aa));
}

}  // namespace pellrep
