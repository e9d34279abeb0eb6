#include "bibasis/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace fs = std::filesystem;

namespace bibasis {

namespace {

// Holds flock(LOCK_EX) on <root>/lock for the lifetime of the object.
class FileLock {
 public:
  FileLock(const std::string& path, long timeout_ms) {
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw std::runtime_error("cache: cannot open lock file " + path);
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(timeout_ms);
    while (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      if (std::chrono::steady_clock::now() >= deadline) {
        ::close(fd_);
        fd_ = -1;
        throw std::runtime_error("cache: timed out waiting for the lock at " + path);
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    if (fd_ >= 0) ::close(fd_);  // releases the flock
  }

 private:
  int fd_ = -1;
};

std::string version_dir(const CacheConfig& cfg) {
  return cfg.root + "/v" + std::to_string(cfg.version);
}

}  // namespace

std::string cache_default_root() {
  if (const char* e = std::getenv("BIBASIS_CACHE_DIR")) return e;
  if (const char* x = std::getenv("XDG_CACHE_HOME"))
    return std::string(x) + "/bibasis";
  if (const char* h = std::getenv("HOME"))
    return std::string(h) + "/.cache/bibasis";
  return ".bibasis-cache";
}

std::string content_hash(const std::string& bytes) {
  // FNV-1a, 64 bit
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

Cache::Cache(CacheConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.root.empty()) cfg_.root = cache_default_root();
  if (cfg_.lock_timeout_ms < 0) {
    const char* e = std::getenv("BIBASIS_CACHE_LOCK_MS");
    cfg_.lock_timeout_ms = e ? std::atol(e) : 5000;
  }
}

std::string Cache::entry_path(const std::string& key) const {
  return version_dir(cfg_) + "/" + content_hash(key) + ".json";
}

std::optional<std::string> Cache::get(const std::string& key) {
  const std::string path = entry_path(key);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;

  FileLock lock(cfg_.root + "/lock", cfg_.lock_timeout_ms);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  in.close();

  try {
    nlohmann::json j = nlohmann::json::parse(buf.str());
    if (j.at("schema").get<std::string>() != "cache/1") throw std::runtime_error("schema");
    if (j.at("key").get<std::string>() != key) return std::nullopt;  // hash bucket reuse
    std::string value = j.at("value").get<std::string>();
    if (j.at("hash").get<std::string>() != content_hash(value))
      throw std::runtime_error("hash");
    return value;
  } catch (const std::exception&) {
    // corrupt or tampered entry: evict, never trust
    fs::remove(path, ec);
    return std::nullopt;
  }
}

void Cache::put(const std::string& key, const std::string& value) {
  std::error_code ec;
  fs::create_directories(version_dir(cfg_), ec);
  if (ec) throw std::runtime_error("cache: cannot create " + version_dir(cfg_));

  FileLock lock(cfg_.root + "/lock", cfg_.lock_timeout_ms);
  nlohmann::json j;
  j["schema"] = "cache/1";
  j["key"] = key;
  j["hash"] = content_hash(value);
  j["value"] = value;

  const std::string path = entry_path(key);
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump();
    if (!out) {
      fs::remove(tmp, ec);
      throw std::runtime_error("cache: cannot write " + tmp);
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cache: cannot publish " + path);
  }
}

}  // namespace bibasis
