#pragma once

// Interval arithmetic over MPFR with outward (directed) rounding.
//
// A CertifiedReal is a closed interval [lower, upper] of MPFR numbers that is
// guaranteed to contain the exact value it stands for. Every operation rounds
// the lower endpoint towards -inf and the upper endpoint towards +inf, so the
// enclosure property is preserved through arbitrary expression trees.
// Comparisons succeed only when the intervals are disjoint; otherwise they
// raise InsufficientPrecision.

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <string_view>

#include "pellrep/errors.hpp"

namespace pellrep {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kPrecisionCap = 16384;

/// Precision schedule used when a certified decision fails: start, double, stop at cap.
struct PrecisionLadder {
  Precision start = kDefaultPrecision;
  Precision cap = kPrecisionCap;
};

class CertifiedReal {
 public:
  /// The exact value 0 at the given precision.
  explicit CertifiedReal(Precision prec = kDefaultPrecision);
  CertifiedReal(const CertifiedReal& other);
  CertifiedReal(CertifiedReal&& other) noexcept;
  CertifiedReal& operator=(const CertifiedReal& other);
  CertifiedReal& operator=(CertifiedReal&& other) noexcept;
  ~CertifiedReal();

  static CertifiedReal from_long(long value, Precision prec = kDefaultPrecision);
  static CertifiedReal from_integer(const mpz_class& value, Precision prec = kDefaultPrecision);
  static CertifiedReal from_rational(const mpq_class& value, Precision prec = kDefaultPrecision);
  /// Decimal literal such as "20.22", "-0.3" or "5.37e350", enclosed exactly.
  static CertifiedReal from_decimal(std::string_view text, Precision prec = kDefaultPrecision);
  /// Interval [lower, upper]; both endpoints are copied exactly.
  static CertifiedReal from_endpoints(mpfr_srcptr lower, mpfr_srcptr upper);
  /// The point interval holding an exact MPFR value.
  static CertifiedReal from_point(mpfr_srcptr value);
  /// Inverse of center_hex()/radius_hex(): [c - r, c + r] rounded outward.
  static CertifiedReal from_center_radius(std::string_view center_hex,
                                          std::string_view radius_hex, Precision prec);

  Precision precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }

  double lower_double() const;
  double upper_double() const;

  /// Midpoint (nearest) and a radius rounded up so that [c-r, c+r] covers the interval.
  std::string center_hex() const;
  std::string radius_hex() const;

  /// Upper bound on hi - lo.
  double width_upper() const;
  /// log2 of the width, rounded up; -inf for point intervals.
  double log2_width() const;

  bool contains(const mpq_class& value) const;
  bool contains(const CertifiedReal& other) const;
  bool contains_zero() const;
  bool is_point() const;
  bool certainly_positive() const;
  bool certainly_negative() const;

  /// Re-rounds both endpoints outward to the new precision.
  CertifiedReal with_precision(Precision prec) const;

  /// "[lo, hi]" with the given number of significant decimal digits.
  std::string to_string(int digits = 20) const;
  /// Decimal scientific notation of the upper endpoint, rounded up.
  std::string upper_sci(int digits = 6) const;
  /// Decimal scientific notation of the lower endpoint, rounded down.
  std::string lower_sci(int digits = 6) const;

 private:
  friend class IntervalAccess;
  mpfr_t lo_;
  mpfr_t hi_;
};

CertifiedReal operator-(const CertifiedReal& x);
CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
/// Throws InsufficientPrecision when the divisor straddles zero.
CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);

CertifiedReal operator+(const CertifiedReal& a, long b);
CertifiedReal operator-(const CertifiedReal& a, long b);
CertifiedReal operator+(long a, const CertifiedReal& b);
CertifiedReal operator-(long a, const CertifiedReal& b);
CertifiedReal operator*(const CertifiedReal& a, long b);
CertifiedReal operator*(long a, const CertifiedReal& b);
CertifiedReal operator/(const CertifiedReal& a, long b);
CertifiedReal operator/(long a, const CertifiedReal& b);

CertifiedReal abs(const CertifiedReal& x);
CertifiedReal sqr(const CertifiedReal& x);
CertifiedReal pow(const CertifiedReal& x, long n);
CertifiedReal sqrt(const CertifiedReal& x);
CertifiedReal exp(const CertifiedReal& x);
CertifiedReal log(const CertifiedReal& x);
/// Smallest interval containing both arguments.
CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b);
/// Intersection, or nullopt when the intervals are disjoint.
std::optional<CertifiedReal> intersect(const CertifiedReal& a, const CertifiedReal& b);
/// Point interval at the (nearest-rounded) midpoint.
CertifiedReal midpoint(const CertifiedReal& x);

CertifiedReal golden_ratio(Precision prec = kDefaultPrecision);
CertifiedReal log_ten(Precision prec = kDefaultPrecision);

/// True only when every point of a is below every point of b.
bool certainly_less(const CertifiedReal& a, const CertifiedReal& b);
bool certainly_less_equal(const CertifiedReal& a, const CertifiedReal& b);
/// Certified a < b; throws InsufficientPrecision when the intervals overlap.
bool less(const CertifiedReal& a, const CertifiedReal& b);

/// floor(x) when it is the same integer across the whole enclosure.
mpz_class floor_certified(const CertifiedReal& x);
/// floor of the upper endpoint: an integer upper bound for any integer <= x.
mpz_class floor_upper(const CertifiedReal& x);
/// ceil of the upper endpoint.
mpz_class ceil_upper(const CertifiedReal& x);

/// Parses a decimal literal into an exact rational.
mpq_class parse_decimal(std::string_view text);

/// Runs fn(precision) along the ladder, doubling whenever it throws
/// InsufficientPrecision, and rethrows once the cap has been tried.
template <typename Fn>
auto with_precision_ladder(const PrecisionLadder& ladder, Fn&& fn) {
  for (Precision prec = ladder.start;; prec *= 2) {
    if (prec > ladder.cap) prec = ladder.cap;
    try {
      return fn(prec);
    } catch (const InsufficientPrecision&) {
      if (prec >= ladder.cap) throw;
    }
  }
}

}  // namespace pellrep
