#pragma once

// Certified continued-fraction expansion of an enclosed real number.
//
// The expansion of every real in [lo, hi] starts with the same partial
// quotients as long as the exact expansions of the two (dyadic) endpoints
// agree and neither has terminated; only that common prefix is emitted.

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <vector>

#include "pellrep/certified_real.hpp"

namespace pellrep {

struct Convergent {
  mpz_class p;
  mpz_class q;
};

struct ContinuedFraction {
  CertifiedReal value;
  std::vector<mpz_class> partial_quotients;
  std::vector<Convergent> convergents;
  Precision precision = 0;
  bool terminated = false;  // exact rational expanded to its last term

  std::size_t size() const { return partial_quotients.size(); }
  /// Index of the first convergent with q > bound, if any.
  std::optional<std::size_t> first_denominator_above(const mpz_class& bound) const;
  /// Recurrences, determinant identity and |x - p_t/q_t| < 1/(q_t q_{t+1}).
  bool verify() const;
};

struct CfStop {
  std::optional<std::size_t> max_terms;          // stop after this many quotients
  std::optional<mpz_class> denominator_threshold; // stop once q_t exceeds this
  std::size_t extra_terms = 0;                    // keep going this far past the threshold
};

/// Expands x. Throws InsufficientPrecision (carrying the number of certified
/// terms) when the stop condition needs more terms than x determines.
ContinuedFraction cf_expand(const CertifiedReal& x, const CfStop& stop);

using RealGenerator = std::function<CertifiedReal(Precision)>;

/// Expands the value produced by gen, doubling precision along the ladder.
ContinuedFraction cf_expand(const RealGenerator& gen, const CfStop& stop,
                            const PrecisionLadder& ladder = {});

/// Exact expansion of a rational; always terminates.
ContinuedFraction cf_expand(const mpq_class& x, const CfStop& stop = {});

}  // namespace pellrep
