#pragma once

#include <cstddef>
#include <filesystem>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "pellrep/certified_real.hpp"

namespace pellrep {

/// Dominant-root enclosures keyed by (k, precision) with atomic get-or-compute.
///
/// The on-disk form is a text file whose first line is kGammaCacheHeader,
/// followed by lines "k<TAB>precision<TAB>center_hex<TAB>radius_hex". Files
/// with any other header are ignored, and every entry is re-certified by a
/// sign check of the polynomial at its endpoints before it is accepted.
class GammaCache {
 public:
  static constexpr const char* kGammaCacheHeader = "# pellrep-gamma-cache v1 outward-rounding";
  static constexpr const char* kFileName = "gamma-cache.txt";

  GammaCache() = default;
  GammaCache(const GammaCache&) = delete;
  GammaCache& operator=(const GammaCache&) = delete;

  CertifiedReal get(int k, Precision precision);
  bool contains(int k, Precision precision) const;
  std::size_t size() const;

  /// Number of entries accepted from the file; 0 if absent or stale.
  std::size_t load(const std::filesystem::path& file);
  /// Writes all completed entries; throws std::runtime_error on I/O failure.
  void save(const std::filesystem::path& file) const;
  std::string serialize() const;

  /// Shared instance. When PELLREP_CACHE_DIR is set, entries are loaded from
  /// that directory on first use.
  static GammaCache& shared();
  /// Path of the persistent file, if the environment names a directory.
  static std::optional<std::filesystem::path> default_path();

 private:
  using Key = std::pair<int, Precision>;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_future<CertifiedReal>> entries_;
};

}  // namespace pellrep
