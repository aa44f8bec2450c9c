#pragma once

// The characteristic polynomial x^k - 2x^{k-1} - x^{k-2} - ... - 1 of the
// k-Pell-Lucas recurrence, its dominant root, and the certified estimates
// that relate the sequence to that root and to the golden ratio.

#include "pellrep/certified_real.hpp"

namespace pellrep {

/// Enclosure of the characteristic polynomial at x (Horner).
CertifiedReal char_poly_eval(int k, const CertifiedReal& x);

struct PolyWithDerivative {
  CertifiedReal value;
  CertifiedReal derivative;
};
PolyWithDerivative char_poly_eval_with_derivative(int k, const CertifiedReal& x);

/// Working precision needed to separate the dominant root from phi^2.
Precision root_working_precision(int k, Precision precision);

/// Enclosure of the dominant root, width below 2^-(precision/2), certified
/// strictly inside (phi^2 (1 - phi^-k), phi^2). The result carries
/// root_working_precision(k, precision) bits.
CertifiedReal dominant_root(int k, Precision precision = kDefaultPrecision);

/// (z - 1) / ((k+1) z^2 - 3k z + k - 1); throws InsufficientPrecision if the
/// denominator enclosure contains zero.
CertifiedReal g_k_eval(int k, const CertifiedReal& z);

/// Lower end of the root bracket: phi^2 (1 - phi^-k).
CertifiedReal root_bracket_lower(int k, Precision precision);

struct AlgebraicContext {
  int k = 0;
  CertifiedReal gamma;
  CertifiedReal g_gamma;
  CertifiedReal phi;
  Precision precision = kDefaultPrecision;

  /// Builds and certifies the context; the root comes from the shared cache.
  static AlgebraicContext build(int k, Precision precision = kDefaultPrecision);
};

/// |Q_n - (2 gamma - 2) g(gamma) gamma^n|; throws InsufficientPrecision unless
/// the enclosure is certainly below 2. Requires n >= 2 - k.
CertifiedReal binet_residual(const AlgebraicContext& ctx, long n);

/// gamma^{n-1} <= Q_n <= 2 gamma^n for n >= 1.
bool growth_bounds_check(const AlgebraicContext& ctx, long n);

struct PhiApproxChecks {
  bool power_gap = false;  // |(2g-2) g^n - 2 phi^{2n+1}| < 4 phi^{2n} / phi^{k/2}
  bool g_gap = false;      // |g_k(gamma) - g_k(phi^2)| < 4k / phi^k
  bool xi_bound = false;   // |xi| < 1.25 / phi^{k/2}
  CertifiedReal power_gap_lhs;
  CertifiedReal power_gap_rhs;
  CertifiedReal g_gap_lhs;
  CertifiedReal g_gap_rhs;
  CertifiedReal xi_abs;
  CertifiedReal xi_rhs;

  bool all() const { return power_gap && g_gap && xi_bound; }
};

/// The golden-ratio approximations for k >= 50 and 1 < n < phi^{k/2}.
/// Throws DomainError outside that range.
PhiApproxChecks phi_approx_checks(const AlgebraicContext& ctx, long n);

struct AuxiliaryFacts {
  bool first_term = false;   // 2/phi < 1.24
  bool second_term = false;  // 4k(phi+2)/phi^k < 0.005/phi^{k/2}
  bool third_term = false;   // (8k/phi)(phi+2)/phi^{3k/2} < 0.005/phi^{k/2}
  bool all() const { return first_term && second_term && third_term; }
};

/// The three small-term estimates behind the |xi| bound.
AuxiliaryFacts xi_auxiliary_facts(int k, Precision precision = kDefaultPrecision);

/// phi^{e/2} for an integer e (handles half-integer exponents).
CertifiedReal phi_half_power(const CertifiedReal& phi, long e);

}  // namespace pellrep
