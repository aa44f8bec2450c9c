#pragma once

// The one-dimensional de Weger reduction for
//   Lambda = delta + x1 theta1 + x2 theta2,  |Lambda| < c exp(-rho Y),  Y <= X <= X0,
// with theta = -theta1/theta2 and psi = delta/theta2.

#include <gmpxx.h>

#include <optional>
#include <string>

#include "pellrep/certified_real.hpp"
#include "pellrep/contfrac.hpp"

namespace pellrep {

struct ReductionProblem {
  std::string label;
  CertifiedReal c;
  CertifiedReal rho;
  RealGenerator theta;               // -theta1 / theta2
  std::optional<RealGenerator> psi;  // delta / theta2; absent in the homogeneous case
  RealGenerator theta2_abs;          // |theta2|
  mpz_class x0;

  bool homogeneous() const { return !psi.has_value(); }
};

struct ReductionResult {
  long index = -1;         // convergent used (homogeneous: -1)
  mpz_class q;             // its denominator
  CertifiedReal y_bound;   // Y < y_bound
  CertifiedReal margin;    // lower bound of ||q psi|| - 2 X0 / q
  int attempts = 0;        // convergents examined
  Precision precision = 0; // precision at which psi was certified
};

/// ceil(-1 + log(1 + X0 sqrt 5) / log phi): every solution of the homogeneous
/// problem is a convergent of index at most this value.
long dw_index_bound(const mpz_class& x0);

/// (1/rho) log(c (A + 2) X0 / |theta2|) with A the largest partial quotient
/// a_{t+1} for t <= dw_index_bound(X0). Throws DomainError if cf is too short.
ReductionResult dw_homogeneous(const ReductionProblem& prob, const ContinuedFraction& cf);

/// Lower and upper bounds of ||y|| over an enclosure. When the enclosure
/// reaches an integer the lower bound is 0; nullopt if it is too wide to say
/// anything.
struct NearestIntegerDistance {
  CertifiedReal lower;
  CertifiedReal upper;
};
std::optional<NearestIntegerDistance> distance_to_integer(const CertifiedReal& y);

inline constexpr int kMaxConvergentAttempts = 30;

/// First convergent with q > X0 and ||q psi|| > 2 X0 / q; returns the bound
/// (1/rho) log(q^2 c / (|theta2| X0)). Throws ReductionFailure after
/// kMaxConvergentAttempts convergents fail the hypothesis, and
/// InsufficientPrecision if ||q psi|| stays ambiguous at the ladder cap.
ReductionResult dw_inhomogeneous(const ReductionProblem& prob, const ContinuedFraction& cf,
                                 const PrecisionLadder& ladder = {});

/// -log(1 - a) / a, the factor turning |Lambda| < a into |log(1 + Lambda)| bounds.
CertifiedReal linearize_constant(const mpq_class& a, Precision precision = kDefaultPrecision);

/// a / (1 - e^{-a}), the factor in the converse estimate |x| < factor |e^x - 1|.
CertifiedReal linearize_inverse_factor(const mpq_class& a, Precision precision = kDefaultPrecision);

}  // namespace pellrep
