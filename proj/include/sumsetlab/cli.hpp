#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sumsetlab/cache.hpp"
#include "sumsetlab/serialize.hpp"

namespace sumsetlab {

namespace cli_detail {

struct CommonOpts {
  std::string group_text;
  std::string format = "text";
  std::string cache_dir;
  int threads = 1;
  long long node_limit = -1;
  bool deterministic = true;
  bool normalize = false;

  SearchOptions search() const {
    SearchOptions s;
    s.thread_count = threads;
    if (node_limit >= 0) s.node_limit = node_limit;
    s.deterministic = deterministic;
    s.normalize_translation = normalize;
    return s;
  }

  std::optional<std::string> cache_path() const {
    if (const char* env = std::getenv("SUMSETLAB_CACHE"); env && *env) return std::string(env);
    if (!cache_dir.empty()) return cache_dir;
    return std::nullopt;
  }
};

inline void add_common(CLI::App* cmd, CommonOpts& o, bool needs_group) {
  auto* g = cmd->add_option("--group", o.group_text, "group literal: Z8, Z2xZ4, Z2^3 or [2,4]");
  if (needs_group) g->required();
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--cache-dir", o.cache_dir, "directory for exact-search result files");
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--node-limit", o.node_limit, "abort searches after this many nodes");
  cmd->add_flag("--deterministic,!--no-deterministic", o.deterministic,
                "reproducible witnesses (lexicographically smallest)");
  cmd->add_flag("--normalize", o.normalize, "translation normalization for the C search");
}

inline std::pair<long long, long long> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    long long v = std::stoll(text);
    return {v, v};
  }
  return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

struct QuantityRow {
  std::string group;
  long long h;
  std::string predicted;
  std::string source;
  std::string exact;  // empty when not computed
  std::string match;  // yes/no, empty when not computed
};

inline QuantityRow make_row(const GroupSpec& g, const std::string& what, long long h,
                            const std::optional<ExactResult>& exact) {
  QuantityRow row;
  row.group = format_group(g);
  row.h = h;
  if (what == "c") {
    long long v = c_h_closed_form(g.order, h);
    row.predicted = std::to_string(v);
    row.source = "divisor-maximum formula";
    if (exact) {
      row.exact = std::to_string(exact->value);
      row.match = exact->value == v ? "yes" : "no";
    }
  } else {
    PredictedValue p = what == "C" ? predicted_C(g, h) : predicted_Z(g, h);
    if (p.is_exact()) {
      row.predicted = std::to_string(p.value);
      row.source = p.source;
    } else {
      row.predicted = std::to_string(p.lower) + ".." + std::to_string(p.upper);
      row.source = "bounds";
    }
    if (exact) {
      row.exact = std::to_string(exact->value);
      bool ok = p.is_exact() ? exact->value == p.value
                             : p.lower <= exact->value && exact->value <= p.upper;
      row.match = ok ? "yes" : "no";
    }
  }
  return row;
}

inline void emit_rows(const std::vector<QuantityRow>& rows, const std::string& what,
                      const std::string& format, std::ostream& out) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j{{"group", r.group}, {"h", r.h},       {"quantity", what},
                       {"predicted", r.predicted}, {"source", r.source}};
      if (!r.exact.empty()) {
        j["exact"] = std::stoll(r.exact);
        j["match"] = r.match == "yes";
      }
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
  } else if (format == "csv") {
    out << "group,h,predicted,source,exact,match\n";
    for (const auto& r : rows)
      out << r.group << "," << r.h << "," << r.predicted << "," << csv_escape(r.source) << ","
          << r.exact << "," << r.match << "\n";
  } else {
    for (const auto& r : rows) {
      out << r.group << "  h=" << r.h << "  " << what << "=" << r.predicted << "  (" << r.source
          << ")";
      if (!r.exact.empty()) out << "  exact=" << r.exact << "  match=" << r.match;
      out << "\n";
    }
  }
}

inline void emit_witness(const WitnessReport& w, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << to_json(w).dump(2) << "\n";
  } else if (format == "csv") {
    out << "group,property,size,method,verified,set\n";
    std::string set;
    for (long long i : w.set.to_indices()) {
      if (!set.empty()) set += " ";
      set += std::to_string(i);
    }
    out << format_group(w.group) << "," << witness_property_name(w.property, w.fold) << ","
        << w.set.count() << "," << w.method << "," << (w.verified ? "yes" : "no") << "," << set
        << "\n";
  } else {
    out << format_group(w.group) << "  " << witness_property_name(w.property, w.fold)
        << "  size=" << w.set.count() << "  method=" << w.method
        << "  verified=" << (w.verified ? "yes" : "no") << "\n  {";
    auto ix = w.set.to_indices();
    for (std::size_t i = 0; i < ix.size(); ++i) out << (i ? "," : "") << ix[i];
    out << "}\n";
  }
}

}  // namespace cli_detail

/// Command-line front end; returns the process exit code.
/// 0 success, 1 usage error, 2 not representable / no exact prediction,
/// 3 verification failure, 4 node-limit abort.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"exact and predicted extremal sumset quantities in finite abelian groups"};
  app.set_help_flag("--help", "print this help message and exit");  // keep --h free for the fold
  app.require_subcommand(1);

  // compute
  CommonOpts copt;
  std::string compute_what;
  long long compute_h = 0;
  bool compute_exact = false;
  auto* compute = app.add_subcommand("compute", "predicted (and optionally exact) C, Z or c");
  compute->add_option("what", compute_what, "C, Z or c")->required()
      ->check(CLI::IsMember({"C", "Z", "c"}));
  add_common(compute, copt, true);
  compute->add_option("--h,--fold", compute_h, "fold count h")->required();
  compute->add_flag("--exact", compute_exact, "also run the exact search");

  // construct
  CommonOpts nopt;
  std::string construct_what;
  long long construct_h = -1, construct_m = -1;
  auto* construct = app.add_subcommand("construct", "build and verify a witness set");
  construct->add_option("what", construct_what, "zsf, incomplete, zero-sum or avoid-sum")
      ->required()->check(CLI::IsMember({"zsf", "incomplete", "zero-sum", "avoid-sum"}));
  add_common(construct, nopt, true);
  construct->add_option("--h,--fold", construct_h, "fold count (zsf, incomplete)");
  construct->add_option("--m,--size", construct_m, "set size (zero-sum, avoid-sum)");

  // verify
  CommonOpts vopt;
  long long max_order = 0;
  std::string jsonl_path, csv_path;
  auto* verify = app.add_subcommand("verify", "run every claim against exact search");
  add_common(verify, vopt, false);
  verify->add_option("--max-order", max_order, "largest group order to verify")
      ->required()->check(CLI::Range(2LL, 1000000LL));
  verify->add_option("--jsonl", jsonl_path, "report path (JSON lines)");
  verify->add_option("--csv", csv_path, "report path (CSV)");

  // table
  CommonOpts topt;
  std::string table_what, h_range_text;
  bool table_exact = false;
  auto* table = app.add_subcommand("table", "value table over a fold range");
  table->add_option("what", table_what, "C or Z")->required()
      ->check(CLI::IsMember({"C", "Z"}));
  add_common(table, topt, true);
  table->add_option("--h-range", h_range_text, "fold range a..b")->required();
  table->add_flag("--exact", table_exact, "also run the exact search per row");

  // groups
  CommonOpts gopt;
  long long order = 0;
  auto* groups = app.add_subcommand("groups", "list abelian groups of a given order");
  add_common(groups, gopt, false);
  groups->add_option("--order", order, "group order")->required()
      ->check(CLI::Range(2LL, 1000000000LL));

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes the vector back to front
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (*compute) {
      GroupSpec g = parse_group(copt.group_text);
      std::optional<ExactResult> exact;
      if (compute_exact) {
        SearchOptions so = copt.search();
        std::unique_ptr<ResultCache> cache;
        if (auto dir = copt.cache_path()) cache = std::make_unique<ResultCache>(*dir);
        CacheKey key{compute_what, g.factors, compute_h, so.normalize_translation,
                     so.deterministic};
        if (cache) exact = cache->load(key);
        if (!exact) {
          if (compute_what == "C")
            exact = exact_C(g, compute_h, so);
          else if (compute_what == "Z")
            exact = exact_Z(g, compute_h, so);
          else
            exact = exact_c_unrestricted(g, compute_h, so);
          if (cache && exact->status == SearchStatus::complete) cache->store(key, *exact);
        }
      }
      auto row = make_row(g, compute_what, compute_h, exact);
      emit_rows({row}, compute_what, copt.format, out);
      if (exact && exact->status == SearchStatus::aborted_at_limit) {
        err << "search aborted at node limit; value is a lower bound\n";
        return 4;
      }
      return 0;
    }

    if (*construct) {
      GroupSpec g = parse_group(nopt.group_text);
      WitnessReport w;
      if (construct_what == "zsf") {
        if (construct_h < 0) { err << "--h is required for zsf\n"; return 1; }
        w = build_extremal_zsf(g, construct_h);
      } else if (construct_what == "incomplete") {
        if (construct_h < 0) { err << "--h is required for incomplete\n"; return 1; }
        w = build_extremal_incomplete(g, construct_h);
      } else if (construct_what == "zero-sum") {
        if (construct_m < 0) { err << "--m is required for zero-sum\n"; return 1; }
        w = build_zero_sum(g, construct_m);
      } else {
        if (construct_m < 0) { err << "--m is required for avoid-sum\n"; return 1; }
        w = build_avoiding_sum_set(g, construct_m);
      }
      emit_witness(w, nopt.format, out);
      return 0;
    }

    if (*verify) {
      VerifyOptions vo;
      vo.search = vopt.search();
      std::unique_ptr<ResultCache> cache;
      std::mutex cache_mutex;
      if (auto dir = vopt.cache_path()) cache = std::make_unique<ResultCache>(*dir);
      if (cache) {
        vo.cache_load = [&](const CacheKey& k) {
          std::lock_guard<std::mutex> lock(cache_mutex);
          return cache->load(k);
        };
        vo.cache_store = [&](const CacheKey& k, const ExactResult& r) {
          std::lock_guard<std::mutex> lock(cache_mutex);
          cache->store(k, r);
        };
      }
      VerificationReport rep = verify_range(max_order, vo);

      std::filesystem::path base = cache ? cache->dir() : std::filesystem::path(".");
      std::filesystem::path jp = jsonl_path.empty() ? base / "verify-report.jsonl"
                                                    : std::filesystem::path(jsonl_path);
      std::filesystem::path cp = csv_path.empty() ? base / "verify-report.csv"
                                                  : std::filesystem::path(csv_path);
      std::ofstream(jp, std::ios::trunc) << report_jsonl(rep);
      std::ofstream(cp, std::ios::trunc) << report_csv(rep);

      std::map<std::string, std::pair<long long, long long>> per_claim;  // pass, total
      for (const auto& e : rep.entries) {
        auto& [p, t] = per_claim[e.claim];
        ++t;
        if (e.pass) ++p;
      }
      for (const auto& [claim, pt] : per_claim)
        out << (pt.first == pt.second ? "PASS  " : "FAIL  ") << claim << ": " << pt.first << "/"
            << pt.second << "\n";
      for (const auto& e : rep.entries)
        if (!e.pass && e.status == SearchStatus::complete)
          err << "FAIL " << e.claim << " " << e.group << " param=" << e.param << " expected "
              << e.expected << " got " << e.actual << "\n";
      out << "entries: " << rep.entries.size() << "  pass: " << rep.pass_count
          << "  fail: " << rep.fail_count << "  aborted: " << rep.aborted_count << "\n";
      out << "report: " << jp.string() << ", " << cp.string() << "\n";
      if (rep.fail_count == 0 && rep.aborted_count == 0) out << "all claims pass\n";
      if (rep.fail_count > 0) return 3;
      if (rep.aborted_count > 0) return 4;
      return 0;
    }

    if (*table) {
      GroupSpec g = parse_group(topt.group_text);
      auto [lo, hi] = parse_range(h_range_text);
      if (lo < 1 || hi > g.order || lo > hi) {
        err << "fold range must lie within [1, " << g.order << "]\n";
        return 1;
      }
      bool aborted = false;
      std::vector<QuantityRow> rows;
      for (long long h = lo; h <= hi; ++h) {
        std::optional<ExactResult> exact;
        if (table_exact) {
          SearchOptions so = topt.search();
          exact = table_what == "C" ? exact_C(g, h, so) : exact_Z(g, h, so);
          aborted = aborted || exact->status == SearchStatus::aborted_at_limit;
        }
        rows.push_back(make_row(g, table_what, h, exact));
      }
      emit_rows(rows, table_what, topt.format, out);
      return aborted ? 4 : 0;
    }

    if (*groups) {
      auto list = enumerate_groups_of_order(order);
      if (gopt.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& g : list)
          arr.push_back({{"name", format_group(g)},
                         {"factors", g.factors},
                         {"order", g.order},
                         {"exponent", g.exponent},
                         {"rank", g.rank},
                         {"involutions", g.involutions}});
        out << arr.dump(2) << "\n";
      } else if (gopt.format == "csv") {
        out << "name,factors,order,exponent,rank,involutions\n";
        for (const auto& g : list) {
          std::string f;
          for (long long d : g.factors) f += (f.empty() ? "" : " ") + std::to_string(d);
          out << format_group(g) << "," << f << "," << g.order << "," << g.exponent << ","
              << g.rank << "," << g.involutions << "\n";
        }
      } else {
        for (const auto& g : list)
          out << format_group(g) << "  order=" << g.order << " exponent=" << g.exponent
              << " rank=" << g.rank << " involutions=" << g.involutions << "\n";
      }
      return 0;
    }
  } catch (const error& e) {
    err << e.what() << "\n";
    if (e.code() == errc::not_representable || e.code() == errc::no_exact_prediction) return 2;
    return 1;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace sumsetlab
