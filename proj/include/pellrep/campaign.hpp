#pragma once

// The two reduction campaigns: k in [3, 640] through the forms in log gamma,
// and k > 640 through the golden-ratio forms, iterated to a contradiction.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "pellrep/certified_real.hpp"
#include "pellrep/contfrac.hpp"
#include "pellrep/reduction.hpp"

namespace pellrep {

struct CampaignConfig {
  Precision precision = kDefaultPrecision;
  PrecisionLadder ladder{kDefaultPrecision, kPrecisionCap};
  unsigned threads = 0;
  /// Use log 10, log phi and log(phi)/2 in place of 2.3, 0.48 and 0.24.
  bool sharp_rho = false;
  /// Use 2 X0 + 1 in the large-k forms so X0 also bounds the coefficient 2n + 1.
  bool strict_x0 = false;
};

/// Where a reduction bound came from.
struct ReductionTrace {
  std::string problem;  // e.g. "small-k leading a=1 b=1"
  long index = -1;
  std::string q;        // decimal scientific form of q_t
  std::string margin;   // lower bound of ||q psi|| - 2 X0 / q
  CertifiedReal y_bound;
};

struct SmallKOutcome {
  int k = 0;
  mpz_class x0;
  long l_bound = 0;
  CertifiedReal l_max;  // largest small-k leading bound over the 81 pairs
  ReductionTrace l_worst;
  long m_bound = 0;
  CertifiedReal m_max;  // largest small-k full bound over pairs and l <= l_bound
  ReductionTrace m_worst;
  long n_bound = 0;
  int pairs_attempted = 0;
  long full_form_problems = 0;
  long max_index = 0;
  std::vector<std::string> failures;
  bool flagged() const { return !failures.empty(); }
};

struct SmallKConfig {
  int k_min = 3;
  int k_max = 100;
  CampaignConfig base;
};

/// One reduction pass per k, parallel over k; results in k order. Failures
/// are recorded on the row and the campaign continues.
std::vector<SmallKOutcome> small_k_campaign(const SmallKConfig& cfg);
SmallKOutcome small_k_reduce(int k, const CampaignConfig& cfg);

/// n < (l + m)/0.3 + 1 from the lower edge of the relation window.
long n_bound_from_lengths(long l, long m);

struct LargeKPass {
  int pass = 0;
  mpz_class x0;
  CertifiedReal lambda_max;
  ReductionTrace lambda_worst;
  long k_case1 = 0;   // floor(2 lambda)
  long l_bound = 0;   // floor(lambda / theta)
  CertifiedReal full_form_max;
  ReductionTrace full_form_worst;
  long k_bound = 0;
  mpz_class next_x0;  // ceil of the n-bound at k_bound
  long problems = 0;
  std::vector<std::string> failures;
};

struct LargeKResult {
  std::vector<LargeKPass> passes;
  bool contradiction = false;
  std::string start_x0_provenance;
};

struct LargeKConfig {
  int max_passes = 10;
  /// Initial n-bound; empty means the value adopted by the absolute chain.
  std::optional<mpz_class> start_x0;
  CampaignConfig base;
};

/// Partial quotients of log phi / log 10 as printed alongside the campaign.
const std::vector<long>& printed_theta_quotients();

/// Continued fraction of log phi / log 10 with a convergent beyond bound plus
/// the retry headroom.
ContinuedFraction theta_expansion(const mpz_class& bound, const PrecisionLadder& ladder = {});

/// Iterates the golden-ratio reductions until the k-bound drops below 641.
/// Throws CampaignFailure (message carries the ledger) if max_passes is hit.
LargeKResult large_k_campaign(const LargeKConfig& cfg);

/// One pass at the given X0.
LargeKPass large_k_pass(int pass, const mpz_class& x0, const ContinuedFraction& cf, const CampaignConfig& cfg);

}  // namespace pellrep
