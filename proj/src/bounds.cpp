#include "pellrep/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <utility>

#include "pellrep/bigseq.hpp"

namespace pellrep {

namespace {

CertifiedReal dec(const char* text, Precision p) { return CertifiedReal::from_decimal(text, p); }
CertifiedReal num(long v, Precision p) { return CertifiedReal::from_long(v, p); }

std::string sci_string(const mpq_class& q, int digits) {
  // q already has `digits` significant figures.
  const CertifiedReal x = CertifiedReal::from_rational(q, 256);
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), x.upper(), MPFR_RNDN);
  std::string s(raw);
  mpfr_free_str(raw);
  std::string out(1, s[0]);
  if (s.size() > 1) out += "." + s.substr(1);
  return out + "e" + std::to_string(static_cast<long>(e) - 1);
}

// Shorthand used throughout the chain: take computed, compare to printed,
// and return the value the next step must use.
struct Chain {
  Precision p;
  std::vector<ChainConstant>& sink;

  CertifiedReal take(std::string name, std::string provenance, const CertifiedReal& computed,
                     const std::string& printed) {
    sink.push_back(make_chain_constant(std::move(name), std::move(provenance), computed, printed));
    return sink.back().used.with_precision(p);
  }

  // A constant the source never prints: rounded up to `digits` figures.
  CertifiedReal derive(std::string name, std::string provenance, const CertifiedReal& computed,
                       int digits) {
    return take(std::move(name), std::move(provenance), computed,
                sci_string(round_up_sig(computed, digits), digits));
  }
};

// The large-k chain opens at k0 = 641; log(C k^9 log^5 k) / log k is largest there.
constexpr long kLargeKStart = 641;

}  // namespace

CertifiedReal log_height_rational(const mpz_class& p, const mpz_class& q, Precision precision) {
  if (q <= 0) throw DomainError("height: denominator must be positive");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw DomainError("height: numerator and denominator must be coprime");
  const mpz_class top = std::max<mpz_class>(abs(p), q);
  return log(CertifiedReal::from_integer(top, precision));
}

std::string to_string(LinearFormLabel label) {
  switch (label) {
    case LinearFormLabel::SmallKLeading: return "small-k leading";
    case LinearFormLabel::SmallKFull: return "small-k full";
    case LinearFormLabel::LargeKLeading: return "large-k leading";
    case LinearFormLabel::LargeKFull: return "large-k full";
  }
  return "?";
}

void LinearFormInstance::validate() const {
  if (s < 2) throw DomainError("linear form needs at least two terms");
  if (heights.size() != static_cast<std::size_t>(s)) throw DomainError("one height bound per term");
  if (degree < 1) throw DomainError("field degree must be positive");
  const Precision p = max_exponent.precision();
  for (const auto& b : heights) {
    if (!certainly_less_equal(dec("0.16", p), b)) throw DomainError("height bound below 0.16");
  }
  if (!certainly_less_equal(num(1, p), max_exponent)) throw DomainError("D must be at least 1");
}

CertifiedReal matveev_leading_factor(int s, Precision precision) {
  if (s < 1) throw DomainError("number of terms must be positive");
  const CertifiedReal ss = num(s, precision);
  return dec("1.4", precision) * pow(num(30, precision), s + 3) * pow(ss, 4) * sqrt(ss);
}

CertifiedReal matveev_rhs(const LinearFormInstance& inst) {
  inst.validate();
  const Precision p = inst.max_exponent.precision();
  const CertifiedReal d = num(inst.degree, p);
  CertifiedReal out = matveev_leading_factor(inst.s, p) * sqr(d) * (1 + log(d)) *
                      (log(inst.max_exponent) + 1);
  for (const auto& b : inst.heights) out = out * b;
  return out;
}

HeightCheck first_base_height_small(int k, Precision precision) {
  if (k < 3) throw DomainError("height estimate requires k >= 3");
  const Precision p = precision;
  const CertifiedReal kk = num(k, p);
  const CertifiedReal phi = golden_ratio(p);
  HeightCheck out;
  out.chain = 4 * log(num(9, p)) + 4 * kk * log(phi) + kk * log(num(k + 1, p)) + log(num(4, p));
  out.bound = dec("6.2", p) * kk * log(kk);
  out.b1 = out.bound * kk;
  out.holds = certainly_less(out.chain, out.bound);
  return out;
}

std::string to_string(ConstantStatus status) {
  switch (status) {
    case ConstantStatus::Match: return "match";
    case ConstantStatus::Conservative: return "conservative";
    case ConstantStatus::Undercut: return "undercut";
  }
  return "?";
}

mpq_class round_up_sig(const CertifiedReal& x, int digits) {
  if (digits < 1) throw DomainError("need at least one significant figure");
  if (!x.certainly_positive()) throw DomainError("rounding applies to positive values");
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), x.upper(), MPFR_RNDU);
  const std::string mantissa(raw);
  mpfr_free_str(raw);
  // value = 0.mantissa * 10^e
  return parse_decimal("0." + mantissa + "e" + std::to_string(static_cast<long>(e)));
}

int significant_figures(const std::string& literal) {
  int count = 0;
  bool leading = true;
  for (char c : literal) {
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (leading && c == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

ChainConstant make_chain_constant(std::string name, std::string provenance,
                                  const CertifiedReal& computed, const std::string& printed) {
  ChainConstant c;
  c.name = std::move(name);
  c.provenance = std::move(provenance);
  c.computed = computed;
  c.printed = printed;
  c.significant = significant_figures(printed);
  const mpq_class printed_value = parse_decimal(printed);
  const mpq_class rounded = round_up_sig(computed, c.significant);
  const Precision p = computed.precision();
  if (printed_value == rounded) {
    c.status = ConstantStatus::Match;
    c.used = CertifiedReal::from_rational(printed_value, p);
  } else if (printed_value > rounded) {
    c.status = ConstantStatus::Conservative;
    c.used = CertifiedReal::from_rational(printed_value, p);
  } else {
    c.status = ConstantStatus::Undercut;
    c.used = CertifiedReal::from_rational(rounded, p);
  }
  return c;
}

const ChainConstant* BoundChainResult::find(const std::string& name) const {
  for (const auto& c : constants) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool BoundChainResult::all_checks_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.holds; });
}

CertifiedReal small_k_n_bound(const CertifiedReal& k, Precision precision) {
  const CertifiedReal kk = k.with_precision(std::max(precision, k.precision()));
  return dec("5.1e29", kk.precision()) * pow(kk, 9) * pow(log(kk), 5);
}

CertifiedReal small_k_n_bound(long k, Precision precision) {
  return small_k_n_bound(num(k, precision), precision);
}

CertifiedReal solve_log_power_bound(const CertifiedReal& s, int m) {
  if (m < 1) throw DomainError("resolution exponent m must be at least 1");
  const Precision p = s.precision();
  const CertifiedReal threshold = pow(num(4L * m * m, p), m);
  if (!certainly_less_equal(threshold, s)) throw DomainError("S below (4m^2)^m");
  return pow(num(2, p), m) * s * pow(log(s), m);
}

BoundChainResult small_k_chain(int k, Precision precision) {
  if (k < 3) throw DomainError("small-k chain requires k >= 3");
  const Precision p = precision;
  BoundChainResult out;
  out.mode = "small-k";
  out.k = k;
  Chain chain{p, out.constants};

  const CertifiedReal log_phi = log(golden_ratio(p));
  const CertifiedReal ln10 = log_ten(p);
  const CertifiedReal k3 = num(3, p);
  const CertifiedReal n5 = num(5, p);
  // Scales at which additive constants are absorbed: the smallest k and n allowed.
  const CertifiedReal min_scale_l = pow(k3, 5) * sqr(log(k3)) * (1 + log(n5));
  const CertifiedReal min_scale_m = pow(k3, 9) * pow(log(k3), 3) * sqr(log(n5));

  const CertifiedReal c3 = chain.take("matveev-leading-s3", "Matveev leading factor with s = 3",
                                      matveev_leading_factor(3, p), "1.432e11");
  // -log|small-k leading form| < C3 k^2 (1+log k)(1+log n) (6.2 k^2 log k)(2 log phi)(k log 10)
  const CertifiedReal lam1 =
      chain.take("small-leading-coefficient", "first small-k form: Matveev bound collected in k and n",
                 c3 * dec("6.2", p) * 2 * log_phi * ln10, "1.97e12");
  // 1 + log k < 2 log k doubles the coefficient and absorbs log 18.3.
  const CertifiedReal l_coef = chain.take(
      "l-coefficient", "bound on l log 10 after 1 + log k < 2 log k", 2 * lam1, "3.94e12");
  const CertifiedReal additive2 = 4 * log(num(9, p)) + 3 * log(num(2, p)) +
                                  12 * log_phi + 3 * log(num(4, p));
  const CertifiedReal h2 =
      chain.take("small-full-height-coefficient", "height of the first base of the second small-k form",
                 l_coef + additive2 / min_scale_l, "3.95e12");
  // B1 = h2 k^6 log^2 k (1+log n); d_L = k; (1+log k) < 2 log k and (1+log n)^2 < 4 log^2 n.
  const CertifiedReal lam2 = chain.take(
      "small-full-matveev", "second small-k form: Matveev bound in k^9 log^3 k log^2 n",
      c3 * h2 * 2 * log_phi * ln10 * 8, "1.1e25");
  const CertifiedReal m_coef =
      chain.take("m-coefficient", "bound on m after dividing by log 10",
                 (lam2 + log(num(19, p)) / min_scale_m) / ln10, "4.78e24");
  // 0.3 n - 0.3 < m + l <= 2m  =>  n < (20/3) m + 1.
  const CertifiedReal s_coef =
      chain.take("n-over-log2-coefficient", "n / log^2 n bound from the m + l window",
                 m_coef * 20 / 3 + 1 / min_scale_m, "3.2e25");
  const CertifiedReal four_s =
      chain.take("four-s", "two-step resolution: 2^2 S", 4 * s_coef, "1.28e26");
  const CertifiedReal log_s_const =
      chain.take("log-s-constant", "log of the S coefficient", log(s_coef), "58.72");
  // (c + 9 log k + 3 log log k) / log k decreases in k, so its maximum is at k = 3.
  const CertifiedReal ratio = chain.take(
      "log-ratio", "max over k >= 3 of (log S) / log k",
      (log_s_const + 9 * log(k3) + 3 * log(log(k3))) / log(k3), "62.8");
  const CertifiedReal n_coef = chain.take("n-coefficient", "absolute n bound coefficient",
                                          four_s * sqr(ratio), "5.1e29");

  const CertifiedReal kk = num(k, p);
  const CertifiedReal logk = log(kk);
  const CertifiedReal n_bound = n_coef * pow(kk, 9) * pow(logk, 5);
  const CertifiedReal log_n = log(n_bound);
  out.n_bound = n_bound;
  out.l_bound = l_coef * pow(kk, 5) * sqr(logk) * (1 + log_n) / ln10;
  out.m_bound = m_coef * pow(kk, 9) * pow(logk, 3) * sqr(log_n);

  const HeightCheck first_base = first_base_height_small(k, p);
  out.checks.push_back({"first-base height chain below 6.2 k log k", first_base.holds});
  out.checks.push_back({"1 + log k < 2 log k", certainly_less(1 + logk, 2 * logk)});
  out.checks.push_back({"1 + log n < 2 log n at n = 5", certainly_less(1 + log(n5), 2 * log(n5))});
  out.checks.push_back(
      {"0.42 n + 2.31 < n at n = 5", certainly_less(dec("0.42", p) * n5 + dec("2.31", p), n5)});
  // log 18.3 < lam1 k^5 log k (log k - 1)(1 + log n), worst case k = 3, n = 5.
  out.checks.push_back(
      {"log 18.3 absorbed by the doubled coefficient",
       certainly_less(log(dec("18.3", p)),
                      lam1 * pow(k3, 5) * log(k3) * (log(k3) - 1) * (1 + log(n5)))});
  out.checks.push_back(
      {"log S ratio below 62.8 at this k",
       certainly_less(log_s_const + 9 * logk + 3 * log(logk), ratio * logk)});
  const CertifiedReal s_value = s_coef * pow(kk, 9) * pow(logk, 3);
  out.checks.push_back({"two-step resolution below n bound",
                        certainly_less_equal(solve_log_power_bound(s_value, 2), n_bound)});
  return out;
}

BoundChainResult large_k_chain(LargeCase mode, Precision precision) {
  const Precision p = precision;
  BoundChainResult out;
  out.mode = mode == LargeCase::LambdaHalfK ? "large-k case 1" : "large-k case 2";
  Chain chain{p, out.constants};

  const CertifiedReal phi = golden_ratio(p);
  const CertifiedReal log_phi = log(phi);
  const CertifiedReal ln10 = log_ten(p);
  const CertifiedReal n5 = num(5, p);
  const CertifiedReal two = num(2, p);
  const CertifiedReal c3 = chain.take("matveev-leading-s3", "Matveev leading factor with s = 3",
                                      matveev_leading_factor(3, p), "1.432e11");

  // Heights of ab(phi+2)/162: 4 log 9 + 3 log 2 + (log phi)/2.
  const CertifiedReal h3 =
      chain.take("large-leading-height", "height of ab(phi + 2)/162",
                 4 * log(num(9, p)) + 3 * log(two) + log_phi / 2, "11.2");
  const CertifiedReal b1 = 2 * h3;
  // d_L = 2, B2 = log phi, B3 = 2 log 10, 1 + log(2n+1) < 2.2 log n.
  const CertifiedReal matveev_d2 = c3 * 4 * (1 + log(two));
  const CertifiedReal lam3 =
      chain.take("large-leading-matveev", "third form: Matveev bound in log n",
                 matveev_d2 * b1 * log_phi * 2 * ln10 * dec("2.2", p), "1.1e14");
  const CertifiedReal lambda_coef =
      chain.take("lambda-coefficient", "bound on lambda / log n",
                 (lam3 + log(num(452, p)) / log(n5)) / log_phi, "2.3e14");

  out.checks.push_back({"1 + log(2n+1) < 2.2 log n at n = 5",
                        certainly_less(1 + log(num(11, p)), dec("2.2", p) * log(n5))});
  out.checks.push_back({"|log first base| within its height bound for the large-k leading form",
                        certainly_less(log(num(162, p) / (phi + 2)), b1) &&
                            certainly_less(log(81 * (phi + 2) / 162), b1)});

  // log n < c log k for k >= 641 where n < 5.1e29 k^9 log^5 k.
  const CertifiedReal k0 = num(kLargeKStart, p);
  const CertifiedReal c_ratio = chain.derive(
      "log-n-over-log-k", "max over k >= 641 of log(5.1e29 k^9 log^5 k) / log k",
      log(small_k_n_bound(k0, p)) / log(k0), 3);
  out.checks.push_back(
      {"log n / log k decreasing from k = 641",
       certainly_less(5 * (1 - log(log(k0))), log(dec("5.1e29", p)))});

  if (mode == LargeCase::LambdaHalfK) {
    // k / 2 < lambda_coef log n  =>  k < S1 log k with S1 = 2 lambda_coef c.
    const CertifiedReal k_slope = 2 * lambda_coef;
    const CertifiedReal s1 = k_slope * c_ratio;
    const CertifiedReal k_bound = chain.take(
        "case1-k", "k bound when lambda = k/2", solve_log_power_bound(s1, 1), "7.15e17");
    const CertifiedReal n_bound = chain.take("case1-n", "n bound from the case-1 k bound",
                                             small_k_n_bound(k_bound, p), "2.93e198");
    out.k_bound = k_bound;
    out.n_bound = n_bound;

    // Fixed point of k -> 2 lambda_coef log(5.1e29 k^9 log^5 k) from k = 641.
    FixedPointSolve fp;
    CertifiedReal x = k0;
    fp.monotone = true;
    for (int i = 1; i <= 200; ++i) {
      const CertifiedReal next = k_slope * log(small_k_n_bound(x, p));
      const double prev_hi = x.upper_double();
      const double next_hi = next.upper_double();
      if (next_hi < prev_hi) fp.monotone = false;
      fp.iterations = i;
      fp.relative_residual = std::fabs(next_hi - prev_hi) / next_hi;
      x = next;
      if (fp.relative_residual < 1e-6) {
        fp.converged = true;
        break;
      }
    }
    if (!fp.converged) throw std::logic_error("case-1 fixed point did not converge");
    fp.value = x;
    out.checks.push_back({"fixed point below the case-1 k bound", certainly_less(x, k_bound)});
    out.fixed_point = fp;
    return out;
  }

  const CertifiedReal l_coef = chain.take("l-over-log-n", "bound on l when lambda = theta l",
                                          lambda_coef * log_phi / ln10, "4.81e13");
  const CertifiedReal h4 = chain.take(
      "large-full-height", "height of ab(10^l - 1)(phi + 2)/162 per log n",
      l_coef * ln10 + (4 * log(num(9, p)) + 4 * log(two) + log_phi / 2) / log(n5), "11.1e13");
  const CertifiedReal lam4 =
      chain.take("large-full-matveev", "fourth form: Matveev bound in log^2 n",
                 matveev_d2 * (2 * h4) * log_phi * 2 * ln10 * dec("2.2", p), "1.1e27");
  const CertifiedReal k_coef =
      chain.take("k-over-log2-n", "k bound per log^2 n",
                 2 * (lam4 + log(num(22, p)) / sqr(log(n5))) / log_phi, "4.58e27");
  const CertifiedReal s2 = k_coef * sqr(c_ratio);
  const CertifiedReal k_bound =
      chain.take("case2-k", "k bound when lambda = theta l", solve_log_power_bound(s2, 2), "4.1e34");
  const CertifiedReal n_bound = chain.take("case2-n", "n bound from the case-2 k bound",
                                           small_k_n_bound(k_bound, p), "5.37e350");
  out.k_bound = k_bound;
  out.n_bound = n_bound;
  out.l_bound = l_coef * log(n_bound);

  FixedPointSolve fp;
  CertifiedReal x = k0;
  fp.monotone = true;
  for (int i = 1; i <= 200; ++i) {
    const CertifiedReal next = k_coef * sqr(log(small_k_n_bound(x, p)));
    const double prev_hi = x.upper_double();
    const double next_hi = next.upper_double();
    if (next_hi < prev_hi) fp.monotone = false;
    fp.iterations = i;
    fp.relative_residual = std::fabs(next_hi - prev_hi) / next_hi;
    x = next;
    if (fp.relative_residual < 1e-6) {
      fp.converged = true;
      break;
    }
  }
  if (!fp.converged) throw std::logic_error("case-2 fixed point did not converge");
  fp.value = x;
  out.checks.push_back({"fixed point below the case-2 k bound", certainly_less(x, k_bound)});
  out.fixed_point = fp;
  return out;
}

LambdaResidual lambda_residual(LinearFormLabel which, const Witness& w, const AlgebraicContext& ctx) {
  if (w.k != ctx.k) throw DomainError("witness order differs from the context order");
  if (w.l > w.m) throw DomainError("witness must have l <= m");
  const mpz_class ra = repdigit_value(w.a, w.l);
  const mpz_class rb = repdigit_value(w.b, w.m);
  if (kpl_term(w.k, w.n) != ra * rb) throw DomainError("witness is not a solution");

  const Precision p = ctx.gamma.precision();
  const CertifiedReal& gamma = ctx.gamma;
  const CertifiedReal& phi = ctx.phi;
  const CertifiedReal ab = num(static_cast<long>(w.a) * w.b, p);
  const CertifiedReal ten = num(10, p);
  const CertifiedReal ten_l_minus_1 = pow(ten, w.l) - 1;
  const CertifiedReal main = 81 * (2 * gamma - 2) * ctx.g_gamma * pow(gamma, w.n);

  LambdaResidual out;
  out.label = which;
  CertifiedReal lambda;
  switch (which) {
    case LinearFormLabel::SmallKLeading:
      lambda = main / ab * pow(ten, -(w.m + w.l)) - 1;
      out.bound = dec("18.3", p) / pow(ten, w.l);
      break;
    case LinearFormLabel::SmallKFull:
      lambda = main / (ab * ten_l_minus_1) * pow(ten, -w.m) - 1;
      out.bound = num(19, p) / pow(ten, w.m);
      break;
    case LinearFormLabel::LargeKLeading:
    case LinearFormLabel::LargeKFull: {
      const CertifiedReal theta = log_ten(p) / log(phi);
      const CertifiedReal half_k = num(w.k, p) / 2;
      const CertifiedReal theta_l = theta * w.l;
      out.applicable = w.k > 640 && w.n >= w.k + 2;
      if (which == LinearFormLabel::LargeKLeading) {
        lambda = ab * pow(ten, w.l + w.m) * (phi + 2) * pow(phi, -(2 * w.n + 1)) / 162 - 1;
        const CertifiedReal lam = certainly_less(theta_l, half_k) ? theta_l : half_k;
        out.bound = num(452, p) / exp(lam * log(phi));
      } else {
        lambda = ab * ten_l_minus_1 * (phi + 2) * pow(phi, -(2 * w.n + 1)) * pow(ten, w.m) / 162 - 1;
        out.bound = num(22, p) / phi_half_power(phi, w.k);
        out.applicable = out.applicable && certainly_less(theta_l, half_k);
      }
      break;
    }
  }
  out.value = abs(lambda);
  out.nonzero = !lambda.contains_zero();
  out.holds = certainly_less(out.value, out.bound);
  return out;
}

bool RelationWindow::contains(long value) const {
  const CertifiedReal v = CertifiedReal::from_long(value, lower.precision());
  return certainly_less(lower, v) && certainly_less(v, upper);
}

RelationWindow relation_window(long n, const CertifiedReal& gamma) {
  if (n < 1) throw DomainError("relation window requires n >= 1");
  const Precision p = gamma.precision();
  RelationWindow out;
  out.lower = dec("0.3", p) * n - dec("0.3", p);
  out.upper = dec("0.42", p) * n + dec("2.31", p);
  out.ratio = log(gamma) / log_ten(p);
  out.ratio_in_range =
      certainly_less(dec("0.3", p), out.ratio) && certainly_less(out.ratio, dec("0.42", p));
  return out;
}

}  // namespace pellrep
