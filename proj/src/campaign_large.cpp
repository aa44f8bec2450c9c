#include <algorithm>
#include <sstream>

#include "detail/memo.hpp"
#include "pellrep/bounds.hpp"
#include "pellrep/campaign.hpp"
#include "pellrep/parallel.hpp"

namespace pellrep {

const std::vector<long>& printed_theta_quotients() {
  static const std::vector<long> q = {0, 4, 1, 3, 1, 1, 1, 6, 4, 2, 1, 10, 1, 4, 46, 3};
  return q;
}

namespace {

CertifiedReal theta_value(Precision p) { return log(golden_ratio(p)) / log_ten(p); }

mpz_class effective_x0(const mpz_class& x0, const CampaignConfig& cfg) {
  return cfg.strict_x0 ? mpz_class(2 * x0 + 1) : x0;
}

struct Item {
  std::optional<ReductionTrace> trace;
  std::string failure;
};

ReductionTrace traced(const ReductionProblem& prob, const ContinuedFraction& cf, const PrecisionLadder& ladder) {
  const ReductionResult r = dw_inhomogeneous(prob, cf, ladder);
  return {prob.label, r.index, detail::integer_sci(r.q), r.margin.lower_sci(3), r.y_bound};
}

}  // namespace

ContinuedFraction theta_expansion(const mpz_class& bound, const PrecisionLadder& ladder) {
  return cf_expand(RealGenerator(theta_value), CfStop{std::nullopt, bound, kMaxConvergentAttempts + 1}, ladder);
}

LargeKPass large_k_pass(int pass, const mpz_class& x0, const ContinuedFraction& cf, const CampaignConfig& cfg) {
  const Precision p0 = cfg.precision;
  LargeKPass out;
  out.pass = pass;
  out.x0 = x0;
  const mpz_class x0_eff = effective_x0(x0, cfg);

  auto ln10 = detail::memo([](Precision p) { return log_ten(p); });
  auto theta = detail::memo(theta_value);
  // log((phi + 2) / 162)
  auto shift = detail::memo([](Precision p) { return log((golden_ratio(p) + 2) / 162); });
  const CertifiedReal log_phi = log(golden_ratio(p0));

  auto make = [&](std::string label, const char* c, const CertifiedReal& rho,
                  std::function<CertifiedReal(Precision)> psi) {
    ReductionProblem prob;
    prob.label = std::move(label);
    prob.c = CertifiedReal::from_decimal(c, p0);
    prob.rho = rho;
    prob.theta = detail::from_memo(theta);
    prob.psi = std::move(psi);
    prob.theta2_abs = detail::from_memo(ln10);
    prob.x0 = x0_eff;
    return prob;
  };

  // The leading form over the 81 digit pairs bounds lambda = min(k/2, theta l).
  const CertifiedReal rho3 = cfg.sharp_rho ? log_phi : CertifiedReal::from_decimal("0.48", p0);
  auto leading = parallel_map(81, cfg.threads, [&](std::size_t i) {
    const int a = static_cast<int>(i / 9) + 1;
    const int b = static_cast<int>(i % 9) + 1;
    const std::string label = "large-k leading a=" + std::to_string(a) + " b=" + std::to_string(b);
    auto psi = [=](Precision p) { return (log(CertifiedReal::from_long(a * b, p)) + shift->get(p)) / ln10->get(p); };
    Item item;
    try {
      item.trace = traced(make(label, "606", rho3, psi), cf, cfg.ladder);
    } catch (const std::runtime_error& e) {
      item.failure = label + ": " + e.what();
    }
    return item;
  });
  out.problems += 81;

  // theta = log 10 / log phi; l <= 2 gives lambda <= 2 theta, outside the form's range.
  const CertifiedReal ratio = log_ten(p0) / log_phi;
  std::optional<CertifiedReal> lambda_max;
  for (auto& it : leading) {
    if (!it.trace) {
      out.failures.push_back(it.failure);
      continue;
    }
    if (!lambda_max || mpfr_greater_p(it.trace->y_bound.upper(), lambda_max->upper())) {
      lambda_max = it.trace->y_bound;
      out.lambda_worst = *it.trace;
    }
  }
  if (!lambda_max) return out;
  if (mpfr_greater_p((2 * ratio).upper(), lambda_max->upper())) lambda_max = 2 * ratio;
  out.lambda_max = *lambda_max;
  out.k_case1 = floor_upper(2 * *lambda_max).get_si();
  out.l_bound = floor_upper(*lambda_max / ratio).get_si();

  // The full form over (a, b, l) with l <= l_bound bounds k directly.
  const CertifiedReal rho4 = cfg.sharp_rho ? log_phi / 2 : CertifiedReal::from_decimal("0.24", p0);
  const auto per_l = static_cast<std::size_t>(81);
  const auto count = per_l * static_cast<std::size_t>(out.l_bound);
  auto full = parallel_map(count, cfg.threads, [&](std::size_t i) {
    const long l = static_cast<long>(i / per_l) + 1;
    const int a = static_cast<int>((i % per_l) / 9) + 1;
    const int b = static_cast<int>(i % 9) + 1;
    mpz_class rep;
    mpz_ui_pow_ui(rep.get_mpz_t(), 10, static_cast<unsigned long>(l));
    rep -= 1;
    rep *= a * b;
    const std::string label =
        "large-k full l=" + std::to_string(l) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
    auto psi = [=](Precision p) { return (log(CertifiedReal::from_integer(rep, p)) + shift->get(p)) / ln10->get(p); };
    Item item;
    try {
      item.trace = traced(make(label, "22.12", rho4, psi), cf, cfg.ladder);
    } catch (const std::runtime_error& e) {
      item.failure = label + ": " + e.what();
    }
    return item;
  });
  out.problems += static_cast<long>(count);

  std::optional<CertifiedReal> g4_max;
  for (auto& it : full) {
    if (!it.trace) {
      out.failures.push_back(it.failure);
      continue;
    }
    if (!g4_max || mpfr_greater_p(it.trace->y_bound.upper(), g4_max->upper())) {
      g4_max = it.trace->y_bound;
      out.full_form_worst = *it.trace;
    }
  }
  out.k_bound = out.k_case1;
  if (g4_max) {
    out.full_form_max = *g4_max;
    out.k_bound = std::max(out.k_bound, floor_upper(*g4_max).get_si());
  }
  out.next_x0 = ceil_upper(small_k_n_bound(out.k_bound, p0));
  return out;
}

LargeKResult large_k_campaign(const LargeKConfig& cfg) {
  LargeKResult result;
  mpz_class x0;
  if (cfg.start_x0) {
    x0 = *cfg.start_x0;
    result.start_x0_provenance = "supplied";
  } else {
    const BoundChainResult chain = large_k_chain(LargeCase::LambdaThetaL, cfg.base.precision);
    const ChainConstant* adopted = chain.find("case2-n");
    if (adopted && adopted->status != ConstantStatus::Undercut) {
      const mpq_class exact = parse_decimal(adopted->printed);
      mpz_cdiv_q(x0.get_mpz_t(), exact.get_num_mpz_t(), exact.get_den_mpz_t());
      result.start_x0_provenance = "absolute n-bound of the large-k chain (case2-n, " + adopted->printed + ")";
    } else {
      x0 = ceil_upper(*chain.n_bound);
      result.start_x0_provenance = "absolute n-bound of the large-k chain (case2-n, recomputed)";
    }
  }
  const ContinuedFraction cf = theta_expansion(effective_x0(x0, cfg.base), cfg.base.ladder);

  for (int pass = 1; pass <= cfg.max_passes; ++pass) {
    LargeKPass p = large_k_pass(pass, x0, cf, cfg.base);
    const bool failed = !p.failures.empty();
    const bool done = !failed && p.k_bound < 641;
    x0 = p.next_x0;
    result.passes.push_back(std::move(p));
    if (done) {
      result.contradiction = true;
      return result;
    }
    if (failed) break;
  }
  std::ostringstream ledger;
  ledger << "no contradiction after " << result.passes.size() << " passes;";
  for (const auto& p : result.passes) {
    ledger << " pass " << p.pass << ": X0=" << detail::integer_sci(p.x0) << " k<=" << p.k_bound
           << " failures=" << p.failures.size() << ";";
  }
  throw CampaignFailure(ledger.str());
}

}  // namespace pellrep
