#include "cache.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace newmod::cli {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string cache_key(const std::string& command, const nlohmann::json& params) {
  // nlohmann objects iterate in key order, so dump() is canonical.
  return fnv1a_hex(std::string(kCacheVersionTag) + "\n" + command + "\n" + params.dump());
}

std::optional<CacheRecord> ResultCache::lookup(const std::string& key) {
  corrupt_ = 0;
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::optional<CacheRecord> hit;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.at("key").get<std::string>() != key) continue;
      CacheRecord rec;
      rec.key = key;
      rec.command = j.at("command").get<std::string>();
      rec.params = j.at("params");
      rec.exit_code = j.at("exit_code").get<int>();
      rec.payload = j.at("payload");
      rec.meta = j.value("meta", nlohmann::json::object());
      hit = std::move(rec);
    } catch (const nlohmann::json::exception&) {
      ++corrupt_;
    }
  }
  return hit;
}

void ResultCache::append(const CacheRecord& record) {
  // A torn final line must not swallow the new record.
  bool needs_newline = false;
  {
    std::ifstream tail(path_, std::ios::binary | std::ios::ate);
    if (tail && tail.tellg() > 0) {
      tail.seekg(-1, std::ios::end);
      needs_newline = tail.get() != '\n';
    }
  }
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open cache file " + path_.string());
  const nlohmann::json j{{"key", record.key},         {"command", record.command},
                         {"params", record.params},   {"exit_code", record.exit_code},
                         {"payload", record.payload}, {"meta", record.meta}};
  if (needs_newline) out << '\n';
  out << j.dump() << '\n';
  if (!out) throw std::runtime_error("cannot write cache file " + path_.string());
}

}  // namespace newmod::cli
