#pragma once

#include <string>

#include <json.hpp>

#include "sumsetlab/constructions.hpp"
#include "sumsetlab/formulas.hpp"
#include "sumsetlab/search.hpp"

namespace sumsetlab {

inline nlohmann::json to_json(const PredictedValue& p) {
  nlohmann::json j;
  if (p.is_exact()) {
    j["kind"] = "exact";
    j["value"] = p.value;
  } else {
    j["kind"] = "bounds";
    j["lower"] = p.lower;
    j["upper"] = p.upper;
  }
  j["source"] = p.source;
  return j;
}

inline nlohmann::json to_json(const WitnessReport& w) {
  return nlohmann::json{{"group", format_group(w.group)},
                        {"set", w.set.to_indices()},
                        {"property", witness_property_name(w.property, w.fold)},
                        {"size", w.set.count()},
                        {"method", w.method},
                        {"verified", w.verified}};
}

inline nlohmann::json to_json(const ExactResult& r) {
  return nlohmann::json{{"value", r.value},
                        {"witness", r.witness.to_indices()},
                        {"nodes", r.nodes_explored},
                        {"status", r.status == SearchStatus::complete ? "complete"
                                                                      : "aborted_at_limit"}};
}

inline nlohmann::json to_json(const VerifyEntry& e) {
  return nlohmann::json{{"claim", e.claim},
                        {"group", e.group},
                        {"param", e.param},
                        {"expected", e.expected},
                        {"actual", e.actual},
                        {"pass", e.pass},
                        {"status", e.status == SearchStatus::complete ? "complete"
                                                                      : "aborted_at_limit"}};
}

/// One JSON object per line, one line per entry.
inline std::string report_jsonl(const VerificationReport& r) {
  std::string out;
  for (const auto& e : r.entries) {
    out += to_json(e).dump();
    out += "\n";
  }
  return out;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string report_csv(const VerificationReport& r) {
  std::string out = "claim,group,param,expected,actual,status,pass\n";
  for (const auto& e : r.entries) {
    out += csv_escape(e.claim) + "," + csv_escape(e.group) + "," + std::to_string(e.param) + "," +
           csv_escape(e.expected) + "," + csv_escape(e.actual) + "," +
           (e.status == SearchStatus::complete ? "complete" : "aborted_at_limit") + "," +
           (e.pass ? "yes" : "no") + "\n";
  }
  return out;
}

}  // namespace sumsetlab
