#include "pellrep/gamma_cache.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pellrep/realalg.hpp"

namespace pellrep {

namespace {

bool ready(const std::shared_future<CertifiedReal>& f) {
  return f.wait_for(std::chrono::seconds(0)) == std::future_status::ready;
}

// An entry is accepted only if the polynomial changes sign across it and it
// is as narrow as a freshly computed root would be.
bool entry_is_valid(int k, Precision precision, const CertifiedReal& x) {
  if (k < 2) return false;
  try {
    const auto lo = char_poly_eval(k, CertifiedReal::from_point(x.lower()));
    const auto hi = char_poly_eval(k, CertifiedReal::from_point(x.upper()));
    return lo.certainly_negative() && hi.certainly_positive() &&
           x.log2_width() < -static_cast<double>(precision) / 2.0;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

CertifiedReal GammaCache::get(int k, Precision precision) {
  std::promise<CertifiedReal> promise;
  std::shared_future<CertifiedReal> future;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find({k, precision});
    if (it != entries_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      entries_.emplace(Key{k, precision}, future);
      owner = true;
    }
  }
  if (owner) {
    try {
      promise.set_value(dominant_root(k, precision));
    } catch (...) {
      {
        std::lock_guard lock(mutex_);
        entries_.erase({k, precision});
      }
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

bool GammaCache::contains(int k, Precision precision) const {
  std::lock_guard lock(mutex_);
  return entries_.count({k, precision}) != 0;
}

std::size_t GammaCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::size_t GammaCache::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return 0;
  std::string line;
  if (!std::getline(in, line) || line != kGammaCacheHeader) return 0;
  std::size_t accepted = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    int k = 0;
    long precision = 0;
    std::string center;
    std::string radius;
    if (!(fields >> k >> precision >> center >> radius)) continue;
    if (precision < MPFR_PREC_MIN || precision > kPrecisionCap * 4) continue;
    try {
      const Precision working = root_working_precision(k, precision);
      CertifiedReal x = CertifiedReal::from_center_radius(center, radius, working);
      if (!entry_is_valid(k, precision, x)) continue;
      std::promise<CertifiedReal> p;
      p.set_value(std::move(x));
      std::lock_guard lock(mutex_);
      if (entries_.emplace(Key{k, precision}, p.get_future().share()).second) ++accepted;
    } catch (const std::exception&) {
      continue;
    }
  }
  return accepted;
}

std::string GammaCache::serialize() const {
  std::ostringstream out;
  out << kGammaCacheHeader << '\n';
  std::lock_guard lock(mutex_);
  for (const auto& [key, future] : entries_) {
    if (!ready(future)) continue;
    try {
      const CertifiedReal& x = future.get();
      out << key.first << '\t' << key.second << '\t' << x.center_hex() << '\t' << x.radius_hex()
          << '\n';
    } catch (const std::exception&) {
      continue;
    }
  }
  return out.str();
}

void GammaCache::save(const std::filesystem::path& file) const {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const std::string text = serialize();
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write gamma cache " + file.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write gamma cache " + file.string());
}

std::optional<std::filesystem::path> GammaCache::default_path() {
  const char* dir = std::getenv("PELLREP_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir) / kFileName;
}

GammaCache& GammaCache::shared() {
  static GammaCache cache;
  static std::once_flag loaded;
  std::call_once(loaded, [] {
    if (auto path = default_path()) cache.load(*path);
  });
  return cache;
}

}  // namespace pellrep
