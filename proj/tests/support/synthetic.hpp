#pragma once

// Random inhomogeneous reduction instances with X0 <= 200 and a brute-force
// scan over every (x1, x2) in the box.

#include <cmath>
#include <random>
#include <string>

#include "pellrep/contfrac.hpp"
#include "pellrep/reduction.hpp"

namespace synthetic {

using namespace pellrep;

struct Instance {
  long root_theta = 2;   // theta = frac(sqrt(root_theta))
  long root_psi = 3;     // psi = frac(sqrt(root_psi)) / psi_den
  long psi_den = 1;
  long theta2_num = 1;   // theta2 = theta2_num / theta2_den
  long theta2_den = 1;
  double c = 1.0;
  double rho = 1.0;
  long x0 = 100;
};

inline CertifiedReal frac_sqrt(long r, Precision p) {
  const CertifiedReal s = sqrt(CertifiedReal::from_long(r, p));
  return s - CertifiedReal::from_integer(floor_certified(s), p);
}

inline ReductionProblem problem(const Instance& in) {
  ReductionProblem prob;
  prob.label = "synthetic";
  prob.c = CertifiedReal::from_decimal(std::to_string(in.c));
  prob.rho = CertifiedReal::from_decimal(std::to_string(in.rho));
  prob.theta = [r = in.root_theta](Precision p) { return frac_sqrt(r, p); };
  prob.psi = [r = in.root_psi, d = in.psi_den](Precision p) { return frac_sqrt(r, p) / d; };
  prob.theta2_abs = [n = in.theta2_num, d = in.theta2_den](Precision p) {
    return CertifiedReal::from_rational(mpq_class(n, d), p);
  };
  prob.x0 = in.x0;
  return prob;
}

inline Instance random_instance(std::mt19937_64& rng) {
  auto nonsquare = [&](long lo, long hi) {
    for (;;) {
      const long r = lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo));
      const long s = static_cast<long>(std::sqrt(static_cast<double>(r)));
      if (s * s != r && (s + 1) * (s + 1) != r) return r;
    }
  };
  Instance in;
  in.root_theta = nonsquare(2, 500);
  in.root_psi = nonsquare(2, 500);
  in.psi_den = 1 + static_cast<long>(rng() % 5);
  in.theta2_num = 1 + static_cast<long>(rng() % 9);
  in.theta2_den = 1 + static_cast<long>(rng() % 4);
  in.c = 0.5 + static_cast<double>(rng() % 450) / 100.0;
  in.rho = 0.3 + static_cast<double>(rng() % 170) / 100.0;
  in.x0 = 10 + static_cast<long>(rng() % 191);
  return in;
}

struct ScanResult {
  long violations = 0;
  double worst_margin = 1e300;  // min over hits of (bound - largest admissible Y)
};

/// Lambda = theta2 (psi - x1 theta + x2). A violation is a pair with
/// max(|x1|, |x2|) >= bound and |Lambda| < c exp(-rho bound), i.e. some
/// admissible Y at or above the bound. Long double with a relative guard
/// that only errs towards reporting a violation.
inline ScanResult scan(const Instance& in, double bound) {
  const long double theta = std::sqrt(static_cast<long double>(in.root_theta)) -
                            std::floor(std::sqrt(static_cast<long double>(in.root_theta)));
  const long double psi = (std::sqrt(static_cast<long double>(in.root_psi)) -
                           std::floor(std::sqrt(static_cast<long double>(in.root_psi)))) / in.psi_den;
  const long double t2 = static_cast<long double>(in.theta2_num) / in.theta2_den;
  ScanResult out;
  for (long x1 = -in.x0; x1 <= in.x0; ++x1) {
    for (long x2 = -in.x0; x2 <= in.x0; ++x2) {
      const long x = std::max(std::labs(x1), std::labs(x2));
      const long double lam = std::fabs(t2 * (psi - x1 * theta + x2));
      // largest Y with |Lambda| < c e^{-rho Y} and Y <= X
      const long double y_lam = std::log(in.c / lam) / in.rho;
      const long double y = std::min<long double>(x, y_lam);
      out.worst_margin = std::min(out.worst_margin, static_cast<double>(bound - y));
      if (y + 1e-9L >= bound) ++out.violations;
    }
  }
  return out;
}

}  // namespace synthetic
