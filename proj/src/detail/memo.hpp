#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "pellrep/certified_real.hpp"
#include "pellrep/reduction.hpp"

namespace pellrep::detail {

/// Caches a precision-indexed real; safe to share between workers.
class PrecisionMemo {
 public:
  explicit PrecisionMemo(std::function<CertifiedReal(Precision)> fn) : fn_(std::move(fn)) {}

  CertifiedReal get(Precision p) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(p); it != cache_.end()) return it->second;
    }
    CertifiedReal value = fn_(p);
    std::lock_guard lock(mutex_);
    return cache_.emplace(p, std::move(value)).first->second;
  }

 private:
  std::function<CertifiedReal(Precision)> fn_;
  std::mutex mutex_;
  std::map<Precision, CertifiedReal> cache_;
};

using SharedMemo = std::shared_ptr<PrecisionMemo>;

inline SharedMemo memo(std::function<CertifiedReal(Precision)> fn) {
  return std::make_shared<PrecisionMemo>(std::move(fn));
}

inline RealGenerator from_memo(SharedMemo m) {
  return [m](Precision p) { return m->get(p); };
}

/// "1.91e355"-style rendering of an integer.
inline std::string integer_sci(const mpz_class& q, int digits = 3) {
  return CertifiedReal::from_integer(q, 64 + static_cast<Precision>(mpz_sizeinbase(q.get_mpz_t(), 2)))
      .upper_sci(digits);
}

}  // namespace pellrep::detail
