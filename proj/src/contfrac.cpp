#include "pellrep/contfrac.hpp"

#include <algorithm>
#include <string>

namespace pellrep {

namespace {

// Exact expansion of num/den (den > 0), at most `limit` terms. The second
// member reports whether the expansion ended within the limit.
std::pair<std::vector<mpz_class>, bool> euclid(mpz_class num, mpz_class den, std::size_t limit) {
  std::vector<mpz_class> terms;
  while (terms.size() < limit) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class r = num - a * den;
    terms.push_back(a);
    if (r == 0) return {terms, true};
    num = std::move(den);
    den = std::move(r);
  }
  return {terms, false};
}

mpq_class dyadic(mpfr_srcptr x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

void fill_convergents(ContinuedFraction& cf) {
  cf.convergents.clear();
  // (p_{t-2}, p_{t-1}) and (q_{t-2}, q_{t-1}) seeded with p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0.
  mpz_class p2 = 0, p1 = 1, q2 = 1, q1 = 0;
  for (const mpz_class& a : cf.partial_quotients) {
    mpz_class p = a * p1 + p2;
    mpz_class q = a * q1 + q2;
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = p;
    q1 = q;
    cf.convergents.push_back({std::move(p), std::move(q)});
  }
}

// Number of terms the stop rule wants, given the quotients available.
bool stop_satisfied(const ContinuedFraction& cf, const CfStop& stop, std::size_t& wanted) {
  if (stop.max_terms) {
    wanted = *stop.max_terms;
    return cf.size() >= wanted;
  }
  if (stop.denominator_threshold) {
    auto idx = cf.first_denominator_above(*stop.denominator_threshold);
    if (!idx) return false;
    wanted = *idx + 1 + stop.extra_terms;
    return cf.size() >= wanted;
  }
  wanted = cf.size();
  return true;
}

constexpr std::size_t kUnboundedChunk = 1u << 20;

}  // namespace

std::optional<std::size_t> ContinuedFraction::first_denominator_above(const mpz_class& bound) const {
  for (std::size_t t = 0; t < convergents.size(); ++t) {
    if (convergents[t].q > bound) return t;
  }
  return std::nullopt;
}

bool ContinuedFraction::verify() const {
  if (convergents.size() != partial_quotients.size()) return false;
  mpz_class p_prev = 1, q_prev = 0;
  for (std::size_t t = 0; t < convergents.size(); ++t) {
    const auto& c = convergents[t];
    const mpz_class& a = partial_quotients[t];
    if (t == 0) {
      if (c.p != a || c.q != 1) return false;
    } else {
      if (c.p != a * convergents[t - 1].p + p_prev || c.q != a * convergents[t - 1].q + q_prev) {
        return false;
      }
      // p_t q_{t-1} - p_{t-1} q_t = (-1)^{t-1}
      const mpz_class det = c.p * convergents[t - 1].q - convergents[t - 1].p * c.q;
      if (det != ((t - 1) % 2 == 0 ? 1 : -1)) return false;
    }
    if (t > 0) {
      p_prev = convergents[t - 1].p;
      q_prev = convergents[t - 1].q;
    }
  }
  // |x - p_t/q_t| < 1/(q_t q_{t+1})  <=>  |q_t x - p_t| q_{t+1} < 1.
  const Precision prec = value.precision();
  for (std::size_t t = 0; t + 1 < convergents.size(); ++t) {
    const auto& c = convergents[t];
    const CertifiedReal gap =
        abs(value * CertifiedReal::from_integer(c.q, prec) - CertifiedReal::from_integer(c.p, prec)) *
        CertifiedReal::from_integer(convergents[t + 1].q, prec);
    if (!certainly_less(gap, CertifiedReal::from_long(1, prec))) {
      // Exact rational input: the last step may reach equality with 1.
      if (!(terminated && t + 2 == convergents.size())) return false;
    }
  }
  return true;
}

ContinuedFraction cf_expand(const CertifiedReal& x, const CfStop& stop) {
  const std::size_t limit = stop.max_terms ? *stop.max_terms : kUnboundedChunk;
  const mpq_class lo = dyadic(x.lower());
  const mpq_class hi = dyadic(x.upper());
  ContinuedFraction cf;
  cf.value = x;
  cf.precision = x.precision();

  if (lo == hi) {
    auto [terms, done] = euclid(lo.get_num(), lo.get_den(), limit);
    cf.partial_quotients = std::move(terms);
    cf.terminated = done;
  } else {
    auto [lo_terms, lo_done] = euclid(lo.get_num(), lo.get_den(), limit);
    auto [hi_terms, hi_done] = euclid(hi.get_num(), hi.get_den(), limit);
    std::size_t common = 0;
    const std::size_t n = std::min(lo_terms.size(), hi_terms.size());
    while (common < n && lo_terms[common] == hi_terms[common]) ++common;
    // A shared term is certified only if both expansions continue past it.
    if (common == n && common > 0) {
      const bool lo_continues = common < lo_terms.size() || !lo_done;
      const bool hi_continues = common < hi_terms.size() || !hi_done;
      if (!(lo_continues && hi_continues)) --common;
    }
    cf.partial_quotients.assign(lo_terms.begin(), lo_terms.begin() + static_cast<long>(common));
  }
  fill_convergents(cf);

  std::size_t wanted = 0;
  if (!stop_satisfied(cf, stop, wanted)) {
    if (!cf.terminated) {
      throw InsufficientPrecision("continued fraction needs more precision after " +
                                      std::to_string(cf.size()) + " certified terms",
                                  static_cast<long>(cf.size()));
    }
    return cf;  // exact rational shorter than requested
  }
  if (cf.size() > wanted) {
    cf.partial_quotients.resize(wanted);
    cf.convergents.resize(wanted);
    cf.terminated = false;
  }
  return cf;
}

ContinuedFraction cf_expand(const RealGenerator& gen, const CfStop& stop,
                            const PrecisionLadder& ladder) {
  long reached = -1;
  for (Precision prec = ladder.start;; prec *= 2) {
    if (prec > ladder.cap) prec = ladder.cap;
    try {
      return cf_expand(gen(prec), stop);
    } catch (const InsufficientPrecision& e) {
      reached = std::max(reached, e.index_reached());
      if (prec >= ladder.cap) {
        throw InsufficientPrecision("continued fraction ambiguous at the precision cap", reached);
      }
    }
  }
}

ContinuedFraction cf_expand(const mpq_class& x, const CfStop& stop) {
  const std::size_t limit = stop.max_terms ? *stop.max_terms : kUnboundedChunk;
  ContinuedFraction cf;
  cf.precision = 256;
  cf.value = CertifiedReal::from_rational(x, cf.precision);
  auto [terms, done] = euclid(x.get_num(), x.get_den(), limit);
  cf.partial_quotients = std::move(terms);
  cf.terminated = done;
  fill_convergents(cf);
  std::size_t wanted = 0;
  if (stop_satisfied(cf, stop, wanted) && cf.size() > wanted) {
    cf.partial_quotients.resize(wanted);
    cf.convergents.resize(wanted);
    cf.terminated = false;
  }
  return cf;
}

}  // namespace pellrep
