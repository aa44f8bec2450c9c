#pragma once

// Logarithmic heights, the Matveev lower bound, and the explicit chains of
// inequalities that bound n, k, l and m for a solution of
//   Q_n^{(k)} = a(10^l - 1)/9 * b(10^m - 1)/9.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "pellrep/certified_real.hpp"
#include "pellrep/realalg.hpp"

namespace pellrep {

/// h(p/q) = log max(|p|, q) for coprime p, q with q > 0.
CertifiedReal log_height_rational(const mpz_class& p, const mpz_class& q,
                                  Precision precision = kDefaultPrecision);

enum class LinearFormLabel { SmallKLeading, SmallKFull, LargeKLeading, LargeKFull };
std::string to_string(LinearFormLabel label);

/// eta_1^{a_1} ... eta_s^{a_s} - 1 together with the data Matveev's bound needs.
struct LinearFormInstance {
  LinearFormLabel label = LinearFormLabel::SmallKLeading;
  int s = 3;
  long degree = 1;                    // d_L
  CertifiedReal max_exponent;         // D
  std::vector<CertifiedReal> heights; // B_1..B_s
  std::vector<std::string> bases;     // eta_j, descriptive
  std::vector<std::string> exponents; // a_j, descriptive

  /// Throws DomainError unless s >= 2, heights.size() == s, every B_j >= 0.16 and D >= 1.
  void validate() const;
};

/// 1.4 * 30^{s+3} * s^{4.5}.
CertifiedReal matveev_leading_factor(int s, Precision precision = kDefaultPrecision);

/// Upper bound on -log|Lambda| from Matveev's theorem.
CertifiedReal matveev_rhs(const LinearFormInstance& inst);

struct HeightCheck {
  CertifiedReal chain;  // 4 log 9 + 4k log phi + k log(k+1) + log 4
  CertifiedReal bound;  // 6.2 k log k
  CertifiedReal b1;     // 6.2 k^2 log k
  bool holds = false;
};

/// Height estimate for the first base of the small-k forms. Requires k >= 3.
HeightCheck first_base_height_small(int k, Precision precision = kDefaultPrecision);

enum class ConstantStatus { Match, Conservative, Undercut };
std::string to_string(ConstantStatus status);

/// A constant recomputed with upward rounding and compared to its printed form.
struct ChainConstant {
  std::string name;
  std::string provenance;
  CertifiedReal computed;
  std::string printed;
  int significant = 0;
  ConstantStatus status = ConstantStatus::Match;
  CertifiedReal used;  // printed value, or the rounded-up computed value on an undercut
};

/// Smallest number with `digits` significant figures that is >= x.
mpq_class round_up_sig(const CertifiedReal& x, int digits);
/// Significant figures in a decimal literal ("1.432e11" -> 4, "58.72" -> 4).
int significant_figures(const std::string& literal);

/// Compares the computed value against the printed literal.
ChainConstant make_chain_constant(std::string name, std::string provenance,
                                  const CertifiedReal& computed, const std::string& printed);

struct NamedCheck {
  std::string name;
  bool holds = false;
};

struct FixedPointSolve {
  CertifiedReal value;
  int iterations = 0;
  bool converged = false;
  bool monotone = false;
  double relative_residual = 0.0;
};

enum class LargeCase { LambdaHalfK, LambdaThetaL };

struct BoundChainResult {
  std::string mode;  // "small-k", "large-k case 1", "large-k case 2"
  int k = 0;
  std::optional<CertifiedReal> l_bound;
  std::optional<CertifiedReal> m_bound;
  std::optional<CertifiedReal> n_bound;
  std::optional<CertifiedReal> k_bound;
  std::vector<ChainConstant> constants;
  std::vector<NamedCheck> checks;
  std::optional<FixedPointSolve> fixed_point;

  const ChainConstant* find(const std::string& name) const;
  bool all_checks_hold() const;
};

/// Bounds for k >= 3 and n >= k + 2 through the first two linear forms.
BoundChainResult small_k_chain(int k, Precision precision = kDefaultPrecision);

/// n_bound of the small-k chain: coefficient * k^9 * log^5 k.
CertifiedReal small_k_n_bound(const CertifiedReal& k, Precision precision = kDefaultPrecision);
CertifiedReal small_k_n_bound(long k, Precision precision = kDefaultPrecision);

/// x < 2^m S (log S)^m whenever x / (log x)^m < S, for m >= 1 and S >= (4m^2)^m.
CertifiedReal solve_log_power_bound(const CertifiedReal& s, int m);

/// Absolute bounds for k > 640 in either branch of lambda = min(k/2, theta l).
BoundChainResult large_k_chain(LargeCase mode, Precision precision = kDefaultPrecision);

/// A solution candidate (k, n, a, l, b, m).
struct Witness {
  int k = 3;
  long n = 1;
  int a = 1;
  long l = 1;
  int b = 1;
  long m = 1;
};

struct LambdaResidual {
  LinearFormLabel label = LinearFormLabel::SmallKLeading;
  CertifiedReal value;  // |Lambda|
  CertifiedReal bound;
  bool applicable = true;
  bool holds = false;
  bool nonzero = false;
};

/// Evaluates |Lambda| at a witness and certifies its upper bound and
/// non-vanishing. Throws DomainError when the witness is not a solution.
LambdaResidual lambda_residual(LinearFormLabel which, const Witness& w, const AlgebraicContext& ctx);

struct RelationWindow {
  CertifiedReal lower;       // 0.3 n - 0.3
  CertifiedReal upper;       // 0.42 n + 2.31
  CertifiedReal ratio;       // log gamma / log 10
  bool ratio_in_range = false;
  bool contains(long value) const;
};

/// Window for m + l given n, plus the check 0.3 < log gamma / log 10 < 0.42.
RelationWindow relation_window(long n, const CertifiedReal& gamma);

}  // namespace pellrep
