#pragma once

// Append-only results cache: one JSON object per line with keys
// n, m, h, rho_hat, witness, nodes, status, tool_version. When a key appears
// more than once the last exact record wins; a non-exact record is kept only
// while no exact one exists.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "rsum/search.hpp"

#ifndef RSUM_VERSION
#define RSUM_VERSION "1.0.0"
#endif

namespace rsum {

inline constexpr const char* kToolVersion = RSUM_VERSION;

inline nlohmann::json to_json(const SearchRecord& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["h"] = r.h;
  j["rho_hat"] = r.rho_hat;
  j["witness"] = r.witness;
  j["nodes"] = r.nodes;
  j["status"] = to_string(r.status);
  j["tool_version"] = kToolVersion;
  return j;
}

inline SearchRecord record_from_json(const nlohmann::json& j) {
  SearchRecord r;
  r.n = j.at("n").get<std::int64_t>();
  r.m = j.at("m").get<std::int64_t>();
  r.h = j.at("h").get<std::int64_t>();
  r.rho_hat = j.at("rho_hat").get<std::int64_t>();
  r.witness = j.at("witness").get<std::vector<std::uint32_t>>();
  r.nodes = j.at("nodes").get<std::uint64_t>();
  const auto status = j.at("status").get<std::string>();
  if (status == "exact") {
    r.status = SearchStatus::exact;
  } else if (status == "budget_exhausted") {
    r.status = SearchStatus::budget_exhausted;
  } else {
    throw std::invalid_argument("unknown record status '" + status + "'");
  }
  return r;
}

/// Serialised form of one cache line (no trailing newline). Keys are sorted,
/// so the text is byte-deterministic.
inline std::string to_line(const SearchRecord& r) { return to_json(r).dump(); }

class ResultsCache {
 public:
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

  ResultsCache() = default;

  /// Opens (and loads) the cache at path; a missing file is an empty cache.
  explicit ResultsCache(std::string path) : path_(std::move(path)) { load(); }

  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] bool persistent() const { return !path_.empty(); }
  [[nodiscard]] std::size_t skipped_lines() const { return skipped_; }

  [[nodiscard]] std::optional<SearchRecord> find(std::int64_t n, std::int64_t m, std::int64_t h) const {
    auto it = records_.find({n, m, h});
    if (it == records_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::optional<SearchRecord> find_exact(std::int64_t n, std::int64_t m, std::int64_t h) const {
    auto r = find(n, m, h);
    if (r && r->status == SearchStatus::exact) return r;
    return std::nullopt;
  }

  [[nodiscard]] const std::map<Key, SearchRecord>& records() const { return records_; }

  /// Writes one line and flushes it before updating the in-memory view.
  void append(const SearchRecord& r) {
    if (persistent()) {
      std::ofstream out(path_, std::ios::app);
      if (!out) throw std::runtime_error("cannot open cache file '" + path_ + "' for appending");
      out << to_line(r) << '\n';
      out.flush();
      if (!out) throw std::runtime_error("write to cache file '" + path_ + "' failed");
    }
    remember(r);
  }

 private:
  void remember(const SearchRecord& r) {
    const Key key{r.n, r.m, r.h};
    auto it = records_.find(key);
    if (r.status == SearchStatus::exact || it == records_.end() || it->second.status != SearchStatus::exact) {
      records_[key] = r;
    }
  }

  void load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        remember(record_from_json(nlohmann::json::parse(line)));
      } catch (const std::exception&) {
        // A torn final line from an interrupted run; the cell is recomputed.
        ++skipped_;
      }
    }
    if (in.bad()) throw std::runtime_error("error reading cache file '" + path_ + "'");
  }

  std::string path_;
  std::map<Key, SearchRecord> records_;
  std::size_t skipped_ = 0;
};

}  // namespace rsum
