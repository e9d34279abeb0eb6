#pragma once

#include <optional>
#include <string>

namespace bibasis {

// bump to invalidate every stored entry
inline constexpr int kCacheVersion = 1;

struct CacheConfig {
  std::string root;                // empty = cache_default_root()
  int version = kCacheVersion;
  long lock_timeout_ms = -1;       // -1 = $BIBASIS_CACHE_LOCK_MS, else 5000
};

// BIBASIS_CACHE_DIR if set, else $XDG_CACHE_HOME/bibasis, else
// $HOME/.cache/bibasis, else ./.bibasis-cache
std::string cache_default_root();

// stable 64-bit content hash, 16 hex digits
std::string content_hash(const std::string& bytes);

// Content-addressed store of strings under <root>/v<version>/.  Every write
// happens under an exclusive lock on <root>/lock; writes are atomic
// (temp file + rename).  A hit re-verifies the stored content hash, and any
// entry that fails to parse or to verify is evicted and reported as a miss.
class Cache {
 public:
  explicit Cache(CacheConfig cfg = {});

  const CacheConfig& config() const { return cfg_; }

  std::optional<std::string> get(const std::string& key);
  void put(const std::string& key, const std::string& value);

  // absolute path the entry for this key would live at
  std::string entry_path(const std::string& key) const;

 private:
  CacheConfig cfg_;
};

}  // namespace bibasis
