#pragma once

// Append-only JSON-lines result cache. One record per completed experiment:
//   {"key", "command", "params", "exit_code", "payload", "meta"}
// Only "meta" carries wall-clock data.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace newmod::cli {

inline constexpr const char* kCacheVersionTag = "newmod-cache-1";

/// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);

/// Content hash of (command, canonical params, version tag).
std::string cache_key(const std::string& command, const nlohmann::json& params);

struct CacheRecord {
  std::string key;
  std::string command;
  nlohmann::json params;
  int exit_code = 0;
  nlohmann::json payload;
  nlohmann::json meta;
};

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

  /// Latest record with this key. Unparseable lines are skipped and counted.
  std::optional<CacheRecord> lookup(const std::string& key);

  /// Throws std::runtime_error when the file cannot be written.
  void append(const CacheRecord& record);

  std::size_t corrupt_lines() const { return corrupt_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::size_t corrupt_ = 0;
};

}  // namespace newmod::cli
