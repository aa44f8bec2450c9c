#pragma once

#include <stdexcept>
#include <string>

namespace pellrep {

/// An argument lies outside the domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A certified decision could not be made at the working precision.
/// Callers normally respond by doubling the precision and retrying.
class InsufficientPrecision : public std::runtime_error {
 public:
  explicit InsufficientPrecision(const std::string& what, long index_reached = -1)
      : std::runtime_error(what), index_reached_(index_reached) {}

  /// For continued-fraction work: the number of certified terms obtained
  /// before the ambiguity, or -1 when not applicable.
  long index_reached() const noexcept { return index_reached_; }

 private:
  long index_reached_;
};

/// The de Weger inhomogeneous hypothesis failed on every convergent tried.
class ReductionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The large-k iteration did not reach a contradiction within its pass limit.
class CampaignFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pellrep
