#include "pellrep/certified_real.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace pellrep {

namespace {

// Large powers such as gamma^(phi^(k/2)) overflow MPFR's default exponent
// range. The range is thread-local in thread-safe builds, so every entry
// point that can produce huge exponents widens it for the calling thread.
void widen_exponent_range() {
  thread_local bool done = false;
  if (!done) {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    done = true;
  }
}

Precision max_prec(const CertifiedReal& a, const CertifiedReal& b) {
  return std::max(a.precision(), b.precision());
}

// RAII scratch value.
struct Scratch {
  mpfr_t v;
  explicit Scratch(Precision p) { mpfr_init2(v, p); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

std::string format_sci(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  if (mpfr_inf_p(x)) return mpfr_signbit(x) ? "-inf" : "inf";
  if (mpfr_nan_p(x)) return "nan";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), x, rnd);
  std::string s(raw);
  mpfr_free_str(raw);
  std::string out;
  std::size_t pos = 0;
  if (s[0] == '-') {
    out += '-';
    pos = 1;
  }
  out += s[pos];
  if (s.size() > pos + 1) {
    out += '.';
    out += s.substr(pos + 1);
  }
  out += 'e';
  out += std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

std::string hex_string(mpfr_srcptr x) {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%Ra", x);
  std::string s(raw);
  mpfr_free_str(raw);
  return s;
}

}  // namespace

// Grants the free operator implementations write access to endpoints.
class IntervalAccess {
 public:
  static mpfr_ptr lo(CertifiedReal& x) { return x.lo_; }
  static mpfr_ptr hi(CertifiedReal& x) { return x.hi_; }
};

namespace {
mpfr_ptr lo(CertifiedReal& x) { return IntervalAccess::lo(x); }
mpfr_ptr hi(CertifiedReal& x) { return IntervalAccess::hi(x); }
}  // namespace

CertifiedReal::CertifiedReal(Precision prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

CertifiedReal::CertifiedReal(const CertifiedReal& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

CertifiedReal::CertifiedReal(CertifiedReal&& other) noexcept {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

CertifiedReal& CertifiedReal::operator=(const CertifiedReal& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

CertifiedReal& CertifiedReal::operator=(CertifiedReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

CertifiedReal::~CertifiedReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

CertifiedReal CertifiedReal::from_long(long value, Precision prec) {
  CertifiedReal r(prec);
  mpfr_set_si(r.lo_, value, MPFR_RNDD);
  mpfr_set_si(r.hi_, value, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::from_integer(const mpz_class& value, Precision prec) {
  CertifiedReal r(prec);
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::from_rational(const mpq_class& value, Precision prec) {
  CertifiedReal r(prec);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::from_decimal(std::string_view text, Precision prec) {
  return from_rational(parse_decimal(text), prec);
}

CertifiedReal CertifiedReal::from_endpoints(mpfr_srcptr lower, mpfr_srcptr upper) {
  if (mpfr_nan_p(lower) || mpfr_nan_p(upper) || mpfr_greater_p(lower, upper)) {
    throw DomainError("CertifiedReal: invalid endpoints");
  }
  CertifiedReal r(std::max(mpfr_get_prec(lower), mpfr_get_prec(upper)));
  mpfr_set(r.lo_, lower, MPFR_RNDD);
  mpfr_set(r.hi_, upper, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::from_point(mpfr_srcptr value) { return from_endpoints(value, value); }

CertifiedReal CertifiedReal::from_center_radius(std::string_view center_hex,
                                                std::string_view radius_hex, Precision prec) {
  const std::string c_text(center_hex);
  const std::string r_text(radius_hex);
  Scratch c(prec + 64);
  Scratch rad(64);
  if (mpfr_set_str(c.v, c_text.c_str(), 0, MPFR_RNDN) != 0 ||
      mpfr_set_str(rad.v, r_text.c_str(), 0, MPFR_RNDU) != 0 || mpfr_sgn(rad.v) < 0) {
    throw DomainError("CertifiedReal: malformed center/radius '" + c_text + "', '" + r_text + "'");
  }
  CertifiedReal r(prec);
  mpfr_sub(r.lo_, c.v, rad.v, MPFR_RNDD);
  mpfr_add(r.hi_, c.v, rad.v, MPFR_RNDU);
  return r;
}

double CertifiedReal::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double CertifiedReal::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string CertifiedReal::center_hex() const {
  Scratch c(precision());
  mpfr_add(c.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(c.v, c.v, 1, MPFR_RNDN);
  return hex_string(c.v);
}

std::string CertifiedReal::radius_hex() const {
  Scratch c(precision());
  mpfr_add(c.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(c.v, c.v, 1, MPFR_RNDN);
  Scratch up(64);
  Scratch down(64);
  mpfr_sub(up.v, hi_, c.v, MPFR_RNDU);
  mpfr_sub(down.v, c.v, lo_, MPFR_RNDU);
  mpfr_max(up.v, up.v, down.v, MPFR_RNDU);
  return hex_string(up.v);
}

double CertifiedReal::width_upper() const {
  Scratch w(64);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

double CertifiedReal::log2_width() const {
  Scratch w(precision());
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  if (mpfr_zero_p(w.v)) return -std::numeric_limits<double>::infinity();
  mpfr_log2(w.v, w.v, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

bool CertifiedReal::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

bool CertifiedReal::contains(const CertifiedReal& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool CertifiedReal::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool CertifiedReal::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
bool CertifiedReal::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool CertifiedReal::certainly_negative() const { return mpfr_sgn(hi_) < 0; }

CertifiedReal CertifiedReal::with_precision(Precision prec) const {
  CertifiedReal r(prec);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

std::string CertifiedReal::to_string(int digits) const {
  return "[" + format_sci(lo_, digits, MPFR_RNDD) + ", " + format_sci(hi_, digits, MPFR_RNDU) + "]";
}

std::string CertifiedReal::upper_sci(int digits) const { return format_sci(hi_, digits, MPFR_RNDU); }
std::string CertifiedReal::lower_sci(int digits) const { return format_sci(lo_, digits, MPFR_RNDD); }

// ---------------------------------------------------------------------------
// Arithmetic

CertifiedReal operator-(const CertifiedReal& x) {
  CertifiedReal r(x.precision());
  mpfr_neg(lo(r), x.upper(), MPFR_RNDD);
  mpfr_neg(hi(r), x.lower(), MPFR_RNDU);
  return r;
}

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  CertifiedReal r(max_prec(a, b));
  mpfr_add(lo(r), a.lower(), b.lower(), MPFR_RNDD);
  mpfr_add(hi(r), a.upper(), b.upper(), MPFR_RNDU);
  return r;
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  CertifiedReal r(max_prec(a, b));
  mpfr_sub(lo(r), a.lower(), b.upper(), MPFR_RNDD);
  mpfr_sub(hi(r), a.upper(), b.lower(), MPFR_RNDU);
  return r;
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  const Precision p = max_prec(a, b);
  CertifiedReal r(p);
  if (mpfr_sgn(a.lower()) >= 0 && mpfr_sgn(b.lower()) >= 0) {
    mpfr_mul(lo(r), a.lower(), b.lower(), MPFR_RNDD);
    mpfr_mul(hi(r), a.upper(), b.upper(), MPFR_RNDU);
    return r;
  }
  mpfr_srcptr av[2] = {a.lower(), a.upper()};
  mpfr_srcptr bv[2] = {b.lower(), b.upper()};
  Scratch t(p);
  bool first = true;
  for (auto x : av) {
    for (auto y : bv) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, lo(r))) mpfr_set(lo(r), t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, hi(r))) mpfr_set(hi(r), t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  if (b.contains_zero()) {
    throw InsufficientPrecision("division by an interval that contains zero");
  }
  const Precision p = max_prec(a, b);
  CertifiedReal r(p);
  mpfr_srcptr av[2] = {a.lower(), a.upper()};
  mpfr_srcptr bv[2] = {b.lower(), b.upper()};
  Scratch t(p);
  bool first = true;
  for (auto x : av) {
    for (auto y : bv) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, lo(r))) mpfr_set(lo(r), t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, hi(r))) mpfr_set(hi(r), t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

CertifiedReal operator+(const CertifiedReal& a, long b) {
  CertifiedReal r(a.precision());
  mpfr_add_si(lo(r), a.lower(), b, MPFR_RNDD);
  mpfr_add_si(hi(r), a.upper(), b, MPFR_RNDU);
  return r;
}

CertifiedReal operator-(const CertifiedReal& a, long b) {
  CertifiedReal r(a.precision());
  mpfr_sub_si(lo(r), a.lower(), b, MPFR_RNDD);
  mpfr_sub_si(hi(r), a.upper(), b, MPFR_RNDU);
  return r;
}

CertifiedReal operator+(long a, const CertifiedReal& b) { return b + a; }

CertifiedReal operator-(long a, const CertifiedReal& b) {
  CertifiedReal r(b.precision());
  mpfr_si_sub(lo(r), a, b.upper(), MPFR_RNDD);
  mpfr_si_sub(hi(r), a, b.lower(), MPFR_RNDU);
  return r;
}

CertifiedReal operator*(const CertifiedReal& a, long b) {
  CertifiedReal r(a.precision());
  if (b >= 0) {
    mpfr_mul_si(lo(r), a.lower(), b, MPFR_RNDD);
    mpfr_mul_si(hi(r), a.upper(), b, MPFR_RNDU);
  } else {
    mpfr_mul_si(lo(r), a.upper(), b, MPFR_RNDD);
    mpfr_mul_si(hi(r), a.lower(), b, MPFR_RNDU);
  }
  return r;
}

CertifiedReal operator*(long a, const CertifiedReal& b) { return b * a; }

CertifiedReal operator/(const CertifiedReal& a, long b) {
  if (b == 0) throw DomainError("division by zero");
  CertifiedReal r(a.precision());
  if (b > 0) {
    mpfr_div_si(lo(r), a.lower(), b, MPFR_RNDD);
    mpfr_div_si(hi(r), a.upper(), b, MPFR_RNDU);
  } else {
    mpfr_div_si(lo(r), a.upper(), b, MPFR_RNDD);
    mpfr_div_si(hi(r), a.lower(), b, MPFR_RNDU);
  }
  return r;
}

CertifiedReal operator/(long a, const CertifiedReal& b) {
  return CertifiedReal::from_long(a, b.precision()) / b;
}

CertifiedReal abs(const CertifiedReal& x) {
  if (mpfr_sgn(x.lower()) >= 0) return x;
  if (mpfr_sgn(x.upper()) <= 0) return -x;
  CertifiedReal r(x.precision());
  mpfr_set_zero(lo(r), 1);
  Scratch t(x.precision());
  mpfr_neg(t.v, x.lower(), MPFR_RNDU);
  mpfr_max(hi(r), t.v, x.upper(), MPFR_RNDU);
  return r;
}

CertifiedReal sqr(const CertifiedReal& x) { return pow(x, 2); }

CertifiedReal pow(const CertifiedReal& x, long n) {
  widen_exponent_range();
  const Precision p = x.precision();
  if (n == 0) return CertifiedReal::from_long(1, p);
  if (n < 0) {
    if (x.contains_zero()) {
      throw InsufficientPrecision("negative power of an interval that contains zero");
    }
  }
  CertifiedReal r(p);
  const bool even = (n % 2) == 0;
  if (mpfr_sgn(x.lower()) >= 0) {
    if (n > 0) {
      mpfr_pow_si(lo(r), x.lower(), n, MPFR_RNDD);
      mpfr_pow_si(hi(r), x.upper(), n, MPFR_RNDU);
    } else {
      mpfr_pow_si(lo(r), x.upper(), n, MPFR_RNDD);
      mpfr_pow_si(hi(r), x.lower(), n, MPFR_RNDU);
    }
    return r;
  }
  if (mpfr_sgn(x.upper()) <= 0) {
    CertifiedReal m = pow(-x, n);
    return even ? m : -m;
  }
  // Straddles zero and n > 0.
  if (!even) {
    mpfr_pow_si(lo(r), x.lower(), n, MPFR_RNDD);
    mpfr_pow_si(hi(r), x.upper(), n, MPFR_RNDU);
    return r;
  }
  Scratch a(p);
  Scratch b(p);
  mpfr_pow_si(a.v, x.lower(), n, MPFR_RNDU);
  mpfr_pow_si(b.v, x.upper(), n, MPFR_RNDU);
  mpfr_set_zero(lo(r), 1);
  mpfr_max(hi(r), a.v, b.v, MPFR_RNDU);
  return r;
}

CertifiedReal sqrt(const CertifiedReal& x) {
  if (mpfr_sgn(x.upper()) < 0) throw DomainError("sqrt of a negative number");
  if (mpfr_sgn(x.lower()) < 0) throw InsufficientPrecision("sqrt of an interval straddling zero");
  CertifiedReal r(x.precision());
  mpfr_sqrt(lo(r), x.lower(), MPFR_RNDD);
  mpfr_sqrt(hi(r), x.upper(), MPFR_RNDU);
  return r;
}

CertifiedReal exp(const CertifiedReal& x) {
  widen_exponent_range();
  CertifiedReal r(x.precision());
  mpfr_exp(lo(r), x.lower(), MPFR_RNDD);
  mpfr_exp(hi(r), x.upper(), MPFR_RNDU);
  return r;
}

CertifiedReal log(const CertifiedReal& x) {
  if (mpfr_sgn(x.upper()) <= 0) throw DomainError("log of a non-positive number");
  if (mpfr_sgn(x.lower()) <= 0) throw InsufficientPrecision("log of an interval reaching zero");
  CertifiedReal r(x.precision());
  mpfr_log(lo(r), x.lower(), MPFR_RNDD);
  mpfr_log(hi(r), x.upper(), MPFR_RNDU);
  return r;
}

CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b) {
  CertifiedReal r(max_prec(a, b));
  mpfr_min(lo(r), a.lower(), b.lower(), MPFR_RNDD);
  mpfr_max(hi(r), a.upper(), b.upper(), MPFR_RNDU);
  return r;
}

std::optional<CertifiedReal> intersect(const CertifiedReal& a, const CertifiedReal& b) {
  CertifiedReal r(max_prec(a, b));
  mpfr_max(lo(r), a.lower(), b.lower(), MPFR_RNDD);
  mpfr_min(hi(r), a.upper(), b.upper(), MPFR_RNDU);
  if (mpfr_greater_p(r.lower(), r.upper())) return std::nullopt;
  return r;
}

CertifiedReal midpoint(const CertifiedReal& x) {
  Scratch c(x.precision());
  mpfr_add(c.v, x.lower(), x.upper(), MPFR_RNDN);
  mpfr_div_2ui(c.v, c.v, 1, MPFR_RNDN);
  return CertifiedReal::from_point(c.v);
}

CertifiedReal golden_ratio(Precision prec) {
  CertifiedReal r(prec);
  mpfr_sqrt_ui(lo(r), 5, MPFR_RNDD);
  mpfr_sqrt_ui(hi(r), 5, MPFR_RNDU);
  mpfr_add_ui(lo(r), r.lower(), 1, MPFR_RNDD);
  mpfr_add_ui(hi(r), r.upper(), 1, MPFR_RNDU);
  mpfr_div_2ui(lo(r), r.lower(), 1, MPFR_RNDD);
  mpfr_div_2ui(hi(r), r.upper(), 1, MPFR_RNDU);
  return r;
}

CertifiedReal log_ten(Precision prec) {
  CertifiedReal r(prec);
  mpfr_log_ui(lo(r), 10, MPFR_RNDD);
  mpfr_log_ui(hi(r), 10, MPFR_RNDU);
  return r;
}

bool certainly_less(const CertifiedReal& a, const CertifiedReal& b) {
  return mpfr_less_p(a.upper(), b.lower()) != 0;
}

bool certainly_less_equal(const CertifiedReal& a, const CertifiedReal& b) {
  return mpfr_lessequal_p(a.upper(), b.lower()) != 0;
}

bool less(const CertifiedReal& a, const CertifiedReal& b) {
  if (certainly_less(a, b)) return true;
  if (certainly_less_equal(b, a)) return false;
  throw InsufficientPrecision("comparison of overlapping enclosures " + a.to_string(12) + " and " +
                              b.to_string(12));
}

mpz_class floor_certified(const CertifiedReal& x) {
  mpz_class a;
  mpz_class b;
  mpfr_get_z(a.get_mpz_t(), x.lower(), MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), x.upper(), MPFR_RNDD);
  if (a != b) throw InsufficientPrecision("floor is ambiguous for " + x.to_string(12));
  return a;
}

mpz_class floor_upper(const CertifiedReal& x) {
  mpz_class a;
  mpfr_get_z(a.get_mpz_t(), x.upper(), MPFR_RNDD);
  return a;
}

mpz_class ceil_upper(const CertifiedReal& x) {
  mpz_class a;
  mpfr_get_z(a.get_mpz_t(), x.upper(), MPFR_RNDU);
  return a;
}

mpq_class parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const std::string rest(text.substr(i));
    std::size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) {
      throw DomainError("malformed decimal literal '" + std::string(text) + "'");
    }
    i = text.size();
  }
  if (!any_digit || i != text.size()) {
    throw DomainError("malformed decimal literal '" + std::string(text) + "'");
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
  q.canonicalize();
  return q;
}

}  // namespace pellrep
