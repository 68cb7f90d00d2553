#pragma once

// Per-degree disk cache for restriction tables.
//
// One JSON file per (variety, ring, degree). Each file repeats the header
// {type, theta, domain, order_hash}; a file whose header differs from the
// one expected for the table being built is rejected with CacheError.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpchow/error.hpp"
#include "gpchow/gkm.hpp"
#include "gpchow/weyl.hpp"

namespace gpchow {

inline constexpr int kSchemaVersion = 1;

/// Value of GPCHOW_CACHE_DIR, empty if unset.
inline std::string default_cache_dir() {
  const char* s = std::getenv("GPCHOW_CACHE_DIR");
  return s ? std::string(s) : std::string();
}

inline std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

template <class Ring>
class TableCache {
 public:
  TableCache(std::filesystem::path root, const CosetSpace& space, const Ring& ring) {
    header_ = {{"type", space.root_system().name()},
               {"theta", space.theta()},
               {"domain", ring.descriptor()},
               {"order_hash", hex64(space.order_hash())}};
    std::string theta = space.theta().empty() ? "0" : "";
    for (int i : space.theta()) theta += std::to_string(i);
    std::string key = space.root_system().name() + "_P" + theta + "_" + ring.descriptor().value("ring", "ring") + "_" +
                      hex64(fnv1a(header_["domain"].dump()));
    dir_ = root / key;
  }

  const nlohmann::json& header() const { return header_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file(int m) const { return dir_ / ("degree_" + std::to_string(m) + ".json"); }

  void save(const RestrictionTable<Ring>& t, int m, const std::vector<std::vector<int>>& recipes) const {
    nlohmann::json rows = nlohmann::json::array();
    for (auto v : t.space().of_length(m))
      for (const auto& [w, e] : t.row(v)) rows.push_back({v, w, t.ring().to_json(e)});
    nlohmann::json j = {{"schema_version", kSchemaVersion}, {"header", header_}, {"degree", m},
                        {"recipes", recipes},               {"rows", std::move(rows)}};
    std::filesystem::create_directories(dir_);
    auto tmp = file(m);
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw ConfigError("cannot write cache file " + tmp.string());
      out << j.dump();
    }
    std::filesystem::rename(tmp, file(m));
  }

  /// Fills degree m from disk; false if there is no file for it.
  bool load(RestrictionTable<Ring>& t, int m, std::vector<std::vector<int>>& recipes) const {
    auto path = file(m);
    if (!std::filesystem::exists(path)) return false;
    nlohmann::json j;
    try {
      std::ifstream in(path);
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CacheError("unreadable cache file " + path.string() + ": " + e.what());
    }
    if (j.value("schema_version", -1) != kSchemaVersion) throw CacheError("cache schema version mismatch in " + path.string());
    if (j["header"] != header_) throw CacheError("stale cache file " + path.string() + " (header does not match)");
    if (j["degree"] != m) throw CacheError("cache file " + path.string() + " holds the wrong degree");
    const auto& space = t.space();
    std::map<std::size_t, typename RestrictionTable<Ring>::Row> rows;
    for (auto v : space.of_length(m)) rows[v];
    for (const auto& r : j["rows"]) {
      std::size_t v = r[0].get<std::size_t>(), w = r[1].get<std::size_t>();
      if (!rows.count(v) || w >= space.size()) throw CacheError("cache row index out of range in " + path.string());
      rows[v].emplace_back(static_cast<std::uint32_t>(w), t.ring().from_json(r[2]));
    }
    for (auto& [v, row] : rows) {
      if (row.empty() || row.front().first != v || !(row.front().second == t.diag(v)))
        throw CacheError("cached row of " + word_string(space.rep(v).word) + " has the wrong diagonal");
      t.set_row(v, std::move(row));
    }
    t.commit_degree(m);
    recipes = j["recipes"].get<std::vector<std::vector<int>>>();
    return true;
  }

  BuildHooks<Ring> hooks(std::function<void(const std::string&)> log = {}) const {
    BuildHooks<Ring> h;
    h.save = [this](const RestrictionTable<Ring>& t, int m, const std::vector<std::vector<int>>& r) { save(t, m, r); };
    h.load = [this](RestrictionTable<Ring>& t, int m, std::vector<std::vector<int>>& r) { return load(t, m, r); };
    h.log = std::move(log);
    return h;
  }

 private:
  nlohmann::json header_;
  std::filesystem::path dir_;
};

/// build_table with an optional cache directory (empty: no caching).
template <class Ring>
RestrictionTable<Ring> cached_table(std::shared_ptr<const CosetSpace> space, Ring ring, int max_degree,
                                    const std::string& cache_dir, std::function<void(const std::string&)> log = {}) {
  RestrictionTable<Ring> t(space, ring);
  if (cache_dir.empty()) {
    BuildHooks<Ring> h;
    h.log = std::move(log);
    extend_table(t, max_degree, std::move(h));
    return t;
  }
  TableCache<Ring> cache(cache_dir, *space, t.ring());
  extend_table(t, max_degree, cache.hooks(std::move(log)));
  return t;
}

}  // namespace gpchow
