#pragma once

// On-disk cache of generic triples. One JSON file per (kind, n, format
// version) holding the payload and its FNV-1a checksum; writes go to a
// temporary file that is renamed into place.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "mulnpoly/errors.hpp"
#include "mulnpoly/generic_fast.hpp"
#include "mulnpoly/projmul.hpp"

namespace mulnpoly {

inline constexpr int kCacheFormatVersion = 1;

inline std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class TripleCache {
 public:
  explicit TripleCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// $MULNPOLY_CACHE, else $XDG_CACHE_HOME/mulnpoly, else ~/.cache/mulnpoly.
  static std::filesystem::path default_dir() {
    if (const char* env = std::getenv("MULNPOLY_CACHE"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "mulnpoly";
    if (const char* home = std::getenv("HOME"); home && *home)
      return std::filesystem::path(home) / ".cache" / "mulnpoly";
    return std::filesystem::temp_directory_path() / "mulnpoly";
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path entry_path(long n) const {
    return dir_ / ("triple-n" + std::to_string(n) + "-v" + std::to_string(kCacheFormatVersion) + ".json");
  }

  /// The cached triple, nullopt when absent. Corrupt entries throw IntegrityError.
  std::optional<MulTriple> load(long n) const {
    auto path = entry_path(n);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    Json entry;
    try {
      entry = Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
      throw IntegrityError("cache entry " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!entry.is_object() || !entry.contains("key") || !entry.contains("payload") || !entry.contains("checksum") ||
        !entry.at("key").is_object())
      throw IntegrityError("cache entry " + path.string() + " is malformed");
    const Json& key = entry.at("key");
    if (key.value("kind", "") != "triple" || key.value("n", 0L) != n || key.value("format", 0) != kCacheFormatVersion)
      throw IntegrityError("cache entry " + path.string() + " has the wrong key");
    std::string payload = entry.at("payload").dump();
    if (entry.at("checksum") != "fnv1a64:" + fnv1a64(payload))
      throw IntegrityError("cache entry " + path.string() + " fails its checksum");
    MulTriple t = triple_from_json(entry.at("payload"));
    if (t.n != n) throw IntegrityError("cache entry " + path.string() + " holds n = " + std::to_string(t.n));
    return t;
  }

  void store(const MulTriple& t) const {
    std::filesystem::create_directories(dir_);
    Json payload = to_json(t);
    std::string body = payload.dump();
    Json entry{{"key", Json{{"kind", "triple"}, {"n", t.n}, {"format", kCacheFormatVersion}}},
               {"checksum", "fnv1a64:" + fnv1a64(body)},
               {"payload", std::move(payload)}};
    auto final_path = entry_path(t.n);
    std::random_device rd;
    auto tmp = final_path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rd());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
      out << entry.dump() << '\n';
      if (!out) throw std::runtime_error("short write to cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, final_path);
  }

  /// Loads the triple or builds and stores it.
  MulTriple get_or_build(long n) const {
    if (auto t = load(n)) return *t;
    MulTriple t = build_triple(n);
    store(t);
    return t;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace mulnpoly
