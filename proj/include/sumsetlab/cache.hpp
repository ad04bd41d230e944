#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "sumsetlab/search.hpp"

namespace sumsetlab {

/// One JSON file per exact search result; entries are invalidated by a schema
/// bump or by any key field mismatch, and corrupt files are recomputed.
class ResultCache {
 public:
  static constexpr int kSchemaVersion = 1;

  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(const CacheKey& key) const {
    std::string name = key.kind + "_";
    for (std::size_t i = 0; i < key.factors.size(); ++i) {
      if (i) name += "-";
      name += std::to_string(key.factors[i]);
    }
    name += "_p" + std::to_string(key.param);
    name += key.normalize ? "_norm1" : "_norm0";
    name += key.deterministic ? "_det1" : "_det0";
    name += "_v" + std::to_string(kSchemaVersion) + ".json";
    return dir_ / name;
  }

  std::optional<ExactResult> load(const CacheKey& key) const {
    auto p = path_for(key);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
      in >> j;
      if (j.at("schema").get<int>() != kSchemaVersion) return std::nullopt;
      if (j.at("kind").get<std::string>() != key.kind ||
          j.at("factors").get<std::vector<long long>>() != key.factors ||
          j.at("param").get<long long>() != key.param)
        return std::nullopt;
      ExactResult r;
      r.value = j.at("value").get<long long>();
      GroupSpec g = make_group(key.factors);
      r.witness = ElementSet::of(g.order, j.at("witness").get<std::vector<long long>>());
      r.nodes_explored = j.at("nodes").get<long long>();
      r.status = j.at("status").get<std::string>() == "complete"
                     ? SearchStatus::complete
                     : SearchStatus::aborted_at_limit;
      if (r.witness.count() != r.value) return corrupt(p);
      return r;
    } catch (const std::exception&) {
      return corrupt(p);
    }
  }

  void store(const CacheKey& key, const ExactResult& r) const {
    nlohmann::json j{{"schema", kSchemaVersion},
                     {"kind", key.kind},
                     {"factors", key.factors},
                     {"param", key.param},
                     {"normalize", key.normalize},
                     {"deterministic", key.deterministic},
                     {"value", r.value},
                     {"witness", r.witness.to_indices()},
                     {"nodes", r.nodes_explored},
                     {"status", r.status == SearchStatus::complete ? "complete"
                                                                   : "aborted_at_limit"}};
    std::ofstream out(path_for(key), std::ios::trunc);
    out << j.dump() << "\n";
  }

 private:
  std::optional<ExactResult> corrupt(const std::filesystem::path& p) const {
    std::cerr << "warning: corrupt cache entry " << p << ", recomputing\n";
    return std::nullopt;
  }

  std::filesystem::path dir_;
};

}  // namespace sumsetlab
