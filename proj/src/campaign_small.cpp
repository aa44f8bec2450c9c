#include <algorithm>

#include "detail/memo.hpp"
#include "pellrep/bounds.hpp"
#include "pellrep/campaign.hpp"
#include "pellrep/gamma_cache.hpp"
#include "pellrep/parallel.hpp"
#include "pellrep/realalg.hpp"

namespace pellrep {

long n_bound_from_lengths(long l, long m) {
  // floor((l + m)/0.3 + 1) = floor((10 (l + m) + 3) / 3)
  return (10 * (l + m) + 3) / 3;
}

namespace {

struct Reduced {
  ReductionTrace trace;
  long index = -1;
};

Reduced reduce_one(const ReductionProblem& prob, const ContinuedFraction& cf, const PrecisionLadder& ladder) {
  const ReductionResult r = dw_inhomogeneous(prob, cf, ladder);
  Reduced out;
  out.index = r.index;
  out.trace = {prob.label, r.index, detail::integer_sci(r.q), r.margin.lower_sci(3), r.y_bound};
  return out;
}

bool above(const CertifiedReal& candidate, const std::optional<CertifiedReal>& current) {
  return !current || mpfr_greater_p(candidate.upper(), current->upper());
}

}  // namespace

SmallKOutcome small_k_reduce(int k, const CampaignConfig& cfg) {
  if (k < 3 || k > 640) throw DomainError("small-k reduction covers k in [3, 640]");
  const Precision p0 = cfg.precision;
  SmallKOutcome out;
  out.k = k;
  out.x0 = floor_upper(small_k_n_bound(static_cast<long>(k), p0));

  // Certify gamma and g(gamma) once before any reduction uses them.
  (void)AlgebraicContext::build(k, p0);

  auto ln10 = detail::memo([](Precision p) { return log_ten(p); });
  auto theta = detail::memo([k, ln10](Precision p) { return log(GammaCache::shared().get(k, p)) / ln10->get(p); });
  // log(81 (2 gamma - 2) g(gamma))
  auto shift = detail::memo([k](Precision p) {
    const CertifiedReal gamma = GammaCache::shared().get(k, p);
    return log(81 * (2 * gamma - 2) * g_k_eval(k, gamma));
  });

  const ContinuedFraction cf = with_precision_ladder(cfg.ladder, [&](Precision p) {
    return cf_expand(theta->get(p), CfStop{std::nullopt, out.x0, kMaxConvergentAttempts + 1});
  });

  const CertifiedReal rho = cfg.sharp_rho ? log_ten(p0) : CertifiedReal::from_decimal("2.3", p0);
  auto make = [&](std::string label, const char* c, std::function<CertifiedReal(Precision)> psi) {
    ReductionProblem prob;
    prob.label = std::move(label);
    prob.c = CertifiedReal::from_decimal(c, p0);
    prob.rho = rho;
    prob.theta = detail::from_memo(theta);
    prob.psi = std::move(psi);
    prob.theta2_abs = detail::from_memo(ln10);
    prob.x0 = out.x0;
    return prob;
  };

  std::optional<CertifiedReal> l_max;
  for (int a = 1; a <= 9; ++a) {
    for (int b = 1; b <= 9; ++b) {
      ++out.pairs_attempted;
      auto psi = [=](Precision p) { return (shift->get(p) - log(CertifiedReal::from_long(a * b, p))) / ln10->get(p); };
      const std::string label = "small-k leading k=" + std::to_string(k) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
      try {
        const Reduced r = reduce_one(make(label, "20.22", psi), cf, cfg.ladder);
        out.max_index = std::max(out.max_index, r.index);
        if (above(r.trace.y_bound, l_max)) {
          l_max = r.trace.y_bound;
          out.l_worst = r.trace;
        }
      } catch (const std::runtime_error& e) {
        out.failures.push_back(label + ": " + e.what());
      }
    }
  }
  if (!l_max) return out;
  out.l_max = *l_max;
  // The form needs l >= 2; l = 1 is covered by taking at least 1.
  out.l_bound = std::max<long>(1, floor_upper(*l_max).get_si());

  std::optional<CertifiedReal> m_max;
  for (long l = 1; l <= out.l_bound; ++l) {
    const mpz_class rep = [&] {
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(l));
      return mpz_class(t - 1);
    }();
    auto rep_log = detail::memo([rep](Precision p) { return log(CertifiedReal::from_integer(rep, p)); });
    for (int a = 1; a <= 9; ++a) {
      for (int b = 1; b <= 9; ++b) {
        ++out.full_form_problems;
        auto psi = [=](Precision p) {
          return (shift->get(p) - log(CertifiedReal::from_long(a * b, p)) - rep_log->get(p)) / ln10->get(p);
        };
        const std::string label = "small-k full k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                  " a=" + std::to_string(a) + " b=" + std::to_string(b);
        try {
          const Reduced r = reduce_one(make(label, "21.1", psi), cf, cfg.ladder);
          out.max_index = std::max(out.max_index, r.index);
          if (above(r.trace.y_bound, m_max)) {
            m_max = r.trace.y_bound;
            out.m_worst = r.trace;
          }
        } catch (const std::runtime_error& e) {
          out.failures.push_back(label + ": " + e.what());
        }
      }
    }
  }
  if (!m_max) return out;
  out.m_max = *m_max;
  out.m_bound = std::max<long>(1, floor_upper(*m_max).get_si());
  out.n_bound = n_bound_from_lengths(out.l_bound, out.m_bound);
  return out;
}

std::vector<SmallKOutcome> small_k_campaign(const SmallKConfig& cfg) {
  if (cfg.k_min < 3 || cfg.k_max > 640 || cfg.k_max < cfg.k_min) {
    throw DomainError("small-k campaign range must lie in [3, 640]");
  }
  const auto count = static_cast<std::size_t>(cfg.k_max - cfg.k_min + 1);
  return parallel_map(count, cfg.base.threads, [&](std::size_t i) {
    const int k = cfg.k_min + static_cast<int>(i);
    try {
      return small_k_reduce(k, cfg.base);
    } catch (const std::runtime_error& e) {
      SmallKOutcome failed;
      failed.k = k;
      failed.failures.push_back(e.what());
      return failed;
    }
  });
}

}  // namespace pellrep
