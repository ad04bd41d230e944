#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sumsetlab/constructions.hpp"
#include "sumsetlab/formulas.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/sumset.hpp"

namespace sumsetlab {

struct SearchOptions {
  /// Restrict the C search to sets containing index 0 (sound because
  /// h^(A+t) = h^A + h*t preserves incompleteness).  Rejected for Z.
  bool normalize_translation = false;
  /// A value known to be achievable (some witness of this size exists);
  /// the search starts just below it so a witness is always rediscovered.
  std::optional<long long> initial_lower_bound;
  std::optional<long long> node_limit;
  int thread_count = 1;
  /// When true, parallel jobs do not share the pruning bound, so the merged
  /// result (max value, lexicographically smallest witness) matches the
  /// sequential search exactly.
  bool deterministic = true;
};

enum class SearchStatus { complete, aborted_at_limit };

struct ExactResult {
  long long value = 0;
  ElementSet witness;
  long long nodes_explored = 0;
  SearchStatus status = SearchStatus::complete;
};

namespace detail {

struct SharedSearchState {
  std::atomic<long long> best{-1};
  std::atomic<long long> nodes{0};
  std::atomic<bool> aborted{false};
  long long node_limit = -1;
  bool share_bound = true;

  bool count_node() {
    long long seen = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (node_limit >= 0 && seen > node_limit) {
      aborted.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }
  void offer(long long v) {
    long long cur = best.load(std::memory_order_relaxed);
    while (cur < v && !best.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }
};

struct JobOutcome {
  long long best = -1;
  ElementSet witness;
};

/// Unrestricted analogue of LayeredSumState: layer j holds the j-fold
/// unrestricted sumset of the inserted elements (ascending update allows an
/// element to repeat within a sum).
class UnrestrictedLayeredState {
 public:
  UnrestrictedLayeredState(const GroupSpec& g, long long fold)
      : group_(g), fold_(fold), table_(g), layers_(fold + 1, ElementSet(g.order)) {
    layers_[0].set(0);
  }

  // Flat-buffer undo trail over layers 1..fold (layer 0 never changes).
  void insert(long long x) {
    std::size_t w = layers_[0].word_count();
    std::size_t base = trail_.size();
    trail_.resize(base + fold_ * w);
    for (long long j = 1; j <= fold_; ++j)
      std::copy_n(layers_[j].word_data(), w, trail_.data() + base + (j - 1) * w);
    for (long long j = 1; j <= fold_; ++j)
      translate_into(group_, &table_, layers_[j - 1], x, layers_[j]);
  }
  void undo() {
    std::size_t w = layers_[0].word_count();
    std::size_t base = trail_.size() - fold_ * w;
    for (long long j = 1; j <= fold_; ++j)
      std::copy_n(trail_.data() + base + (j - 1) * w, w, layers_[j].word_data());
    trail_.resize(base);
  }
  bool top_layer_full() const { return layers_[fold_].count() == group_.order; }

 private:
  GroupSpec group_;
  long long fold_;
  AddTable table_;
  std::vector<ElementSet> layers_;
  std::vector<std::uint64_t> trail_;
};

/// Depth-first maximization of |A| over a hereditary property.  `State` must
/// provide insert/undo; `violated(state)` must be monotone under insertion.
template <typename State, typename Violated>
class MaxSubsetDfs {
 public:
  MaxSubsetDfs(const GroupSpec& g, State& state, Violated violated, SharedSearchState& shared,
               long long bound_floor)
      : group_(g), state_(state), violated_(violated), shared_(shared),
        bound_floor_(bound_floor), cur_(g.order) {}

  /// Returns false when the node limit was hit inside this job.
  bool run(const std::vector<long long>& forced, long long first_candidate, JobOutcome& out) {
    for (long long x : forced) {
      if (!shared_.count_node()) return false;
      state_.insert(x);
      cur_.set(x);
      if (violated_(state_)) return true;  // nothing to explore in this job
    }
    record(out);
    return descend(first_candidate, out);
  }

 private:
  void record(JobOutcome& out) {
    long long v = cur_.count();
    if (v > out.best) {
      out.best = v;
      out.witness = cur_;
    }
    if (shared_.share_bound) shared_.offer(v);
  }

  long long bound(const JobOutcome& out) const {
    long long b = std::max(out.best, bound_floor_);
    if (shared_.share_bound) b = std::max(b, shared_.best.load(std::memory_order_relaxed));
    return b;
  }

  bool descend(long long from, JobOutcome& out) {
    long long n = group_.order;
    for (long long x = from; x < n; ++x) {
      if (cur_.count() + (n - x) <= bound(out)) return true;  // later x only shrink the slack
      if (!shared_.count_node()) return false;
      state_.insert(x);
      cur_.set(x);
      if (violated_(state_)) {
        state_.undo();
        cur_.reset(x);
        continue;
      }
      record(out);
      bool ok = descend(x + 1, out);
      state_.undo();
      cur_.reset(x);
      if (!ok) return false;
    }
    return true;
  }

  const GroupSpec& group_;
  State& state_;
  Violated violated_;
  SharedSearchState& shared_;
  long long bound_floor_;
  ElementSet cur_;
};

template <typename MakeState, typename Violated>
ExactResult run_max_subset_search(const GroupSpec& g, const SearchOptions& opts,
                                  bool force_zero, MakeState make_state, Violated violated) {
  SharedSearchState shared;
  shared.node_limit = opts.node_limit.value_or(-1);
  shared.share_bound = !opts.deterministic;
  long long seed = opts.initial_lower_bound.value_or(0);
  if (shared.share_bound) shared.best.store(seed - 1);

  // Jobs partition the tree by the first freely chosen element.
  struct Job {
    std::vector<long long> forced;
    long long first_candidate;
  };
  std::vector<Job> jobs;
  std::vector<long long> base;
  if (force_zero) base.push_back(0);
  long long start = force_zero ? 1 : 0;
  int threads = std::max(1, opts.thread_count);
  if (threads == 1) {
    jobs.push_back({base, start});
  } else {
    jobs.push_back({base, g.order});  // the bare prefix
    for (long long x = start; x < g.order; ++x) {
      Job j{base, x + 1};
      j.forced.push_back(x);
      jobs.push_back(std::move(j));
    }
  }

  std::vector<JobOutcome> outcomes(jobs.size());
  auto run_job = [&](std::size_t ji) {
    auto state = make_state();
    MaxSubsetDfs dfs(g, state, violated, shared, seed - 1);
    dfs.run(jobs[ji].forced, jobs[ji].first_candidate, outcomes[ji]);
  };

  if (threads == 1) {
    run_job(0);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t ji = next.fetch_add(1); ji < jobs.size(); ji = next.fetch_add(1))
          run_job(ji);
      });
    for (auto& th : pool) th.join();
  }

  ExactResult result;
  result.nodes_explored = shared.nodes.load();
  result.status = shared.aborted.load() ? SearchStatus::aborted_at_limit : SearchStatus::complete;
  result.value = -1;
  for (const auto& o : outcomes) {
    if (o.best > result.value) {
      result.value = o.best;
      result.witness = o.witness;
    } else if (o.best == result.value && o.witness.universe() != 0 &&
               (result.witness.universe() == 0 || ElementSet::lex_less(o.witness, result.witness))) {
      result.witness = o.witness;
    }
  }
  if (result.witness.universe() == 0) result.witness = ElementSet(g.order);
  return result;
}

inline void validate_common(const GroupSpec& g, long long h, const SearchOptions&) {
  if (h < 1 || h > g.order) fail(errc::fold_out_of_range, "need 1 <= h <= n");
}

}  // namespace detail

/// Exact C_h(G) = max{|A| : h^A != G}, by pruned DFS with witness.
inline ExactResult exact_C(const GroupSpec& g, long long h, const SearchOptions& opts = {}) {
  detail::validate_common(g, h, opts);
  auto result = detail::run_max_subset_search(
      g, opts, opts.normalize_translation,
      [&] { return LayeredSumState(g, static_cast<int>(h)); },
      [](const LayeredSumState& s) { return s.top_layer_full(); });
  internal_check(result.witness.count() == result.value &&
                     classify_set(g, result.witness, h).weakly_h_incomplete,
                 "search witness failed re-verification");
  return result;
}

/// Exact Z_h(G) = max{|A| : 0 not in h^A}.
inline ExactResult exact_Z(const GroupSpec& g, long long h, const SearchOptions& opts = {}) {
  detail::validate_common(g, h, opts);
  if (opts.normalize_translation)
    fail(errc::invalid_options, "translation normalization is unsound for the Z search");
  auto result = detail::run_max_subset_search(
      g, opts, false, [&] { return LayeredSumState(g, static_cast<int>(h)); },
      [](const LayeredSumState& s) { return s.top_layer_has_zero(); });
  internal_check(result.witness.count() == result.value &&
                     classify_set(g, result.witness, h).weakly_h_zero_sum_free,
                 "search witness failed re-verification");
  return result;
}

/// Exact c_h(G) = max{|A| : hA != G} for the unrestricted sumset.
inline ExactResult exact_c_unrestricted(const GroupSpec& g, long long h,
                                        const SearchOptions& opts = {}) {
  if (h < 1) fail(errc::fold_out_of_range, "h must be positive");
  if (opts.normalize_translation)
    fail(errc::invalid_options, "translation normalization is limited to the C search");
  auto result = detail::run_max_subset_search(
      g, opts, false, [&] { return detail::UnrestrictedLayeredState(g, h); },
      [](const detail::UnrestrictedLayeredState& s) { return s.top_layer_full(); });
  internal_check(result.witness.count() == result.value, "search witness has the wrong size");
  if (result.value > 0)
    internal_check(unrestricted_sumset(g, result.witness, h).count() != g.order,
                   "search witness failed re-verification");
  return result;
}

/// Exact existence of a zero-sum m-subset of G (or of G \ {0}), via the
/// layered reachability table over (count, group element).
inline bool zero_sum_subset_oracle(const GroupSpec& g, long long m, bool exclude_zero) {
  if (m < 0 || m > g.order) fail(errc::size_out_of_range, "need 0 <= m <= n");
  ElementSet allowed = ElementSet::full(g.order);
  if (exclude_zero) allowed.reset(0);
  return restricted_sumset(g, allowed, m).test(0);
}

/// Maximum-size weak Sidon set, with the binomial cutoff m(m-1)/2 <= n.
inline ExactResult max_weak_sidon(const GroupSpec& g, const SearchOptions& opts = {}) {
  const long long n = g.order;
  long long cap = 1;
  while ((cap + 1) * cap / 2 <= n) ++cap;

  detail::SharedSearchState shared;
  shared.node_limit = opts.node_limit.value_or(-1);
  shared.share_bound = false;

  ExactResult result;
  std::vector<long long> chosen;
  ElementSet used_sums(n);
  ElementSet cur(n);
  result.value = 0;
  result.witness = cur;

  std::vector<ElementSet> sum_trail;
  auto try_insert = [&](long long x) {
    for (long long a : chosen)
      if (used_sums.test(add_indices(g, a, x))) return false;
    sum_trail.push_back(used_sums);
    for (long long a : chosen) used_sums.set(add_indices(g, a, x));
    chosen.push_back(x);
    cur.set(x);
    return true;
  };
  auto undo = [&] {
    cur.reset(chosen.back());
    chosen.pop_back();
    used_sums = std::move(sum_trail.back());
    sum_trail.pop_back();
  };

  std::function<bool(long long)> dfs = [&](long long from) -> bool {
    if (static_cast<long long>(chosen.size()) > result.value) {
      result.value = chosen.size();
      result.witness = cur;
    }
    if (static_cast<long long>(chosen.size()) == cap) return true;
    for (long long x = from; x < n; ++x) {
      if (static_cast<long long>(chosen.size()) + (n - x) <= result.value) return true;
      if (!shared.count_node()) return false;
      if (!try_insert(x)) continue;
      bool ok = dfs(x + 1);
      undo();
      if (!ok) return false;
    }
    return true;
  };
  dfs(0);

  result.nodes_explored = shared.nodes.load();
  result.status = shared.aborted.load() ? SearchStatus::aborted_at_limit : SearchStatus::complete;
  if (result.value >= 2)
    internal_check(is_weak_sidon(g, result.witness), "weak Sidon witness failed re-verification");
  return result;
}

/// exists[m] = G has an m-subset A with s(A) not in A, by full enumeration.
inline std::vector<char> sum_avoiding_profile(const GroupSpec& g) {
  const long long n = g.order;
  internal_check(n <= 24, "sum-avoiding enumeration is limited to order 24");
  std::vector<char> exists(n + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long long sum = 0;
    int size = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      long long i = std::countr_zero(rest);
      sum = add_indices(g, sum, i);
      ++size;
    }
    if (!((mask >> sum) & 1)) exists[size] = 1;
  }
  return exists;
}

// ---------------------------------------------------------------------------
// Verification harness.
// ---------------------------------------------------------------------------

struct CacheKey {
  std::string kind;  // "C", "Z" or "c"
  std::vector<long long> factors;
  long long param = 0;
  bool normalize = false;
  bool deterministic = true;
};

struct VerifyEntry {
  std::string claim;
  std::string group;
  long long param = 0;
  std::string expected;
  std::string actual;
  bool pass = false;
  SearchStatus status = SearchStatus::complete;
};

struct VerificationReport {
  std::vector<VerifyEntry> entries;
  long long pass_count = 0;
  long long fail_count = 0;
  long long aborted_count = 0;

  void tally() {
    pass_count = fail_count = aborted_count = 0;
    for (const auto& e : entries) {
      if (e.status == SearchStatus::aborted_at_limit)
        ++aborted_count;
      else if (e.pass)
        ++pass_count;
      else
        ++fail_count;
    }
  }
  bool all_pass() const { return fail_count == 0 && aborted_count == 0; }
};

struct VerifyOptions {
  SearchOptions search;
  std::function<std::optional<ExactResult>(const CacheKey&)> cache_load;
  std::function<void(const CacheKey&, const ExactResult&)> cache_store;
};

namespace detail {

inline std::string render_predicted(const PredictedValue& p) {
  if (p.is_exact()) return std::to_string(p.value);
  return std::to_string(p.lower) + ".." + std::to_string(p.upper);
}

inline ExactResult cached_search(const GroupSpec& g, const std::string& kind, long long param,
                                 const VerifyOptions& vopts, const SearchOptions& sopts,
                                 const std::function<ExactResult()>& compute) {
  CacheKey key{kind, g.factors, param, sopts.normalize_translation, sopts.deterministic};
  if (vopts.cache_load) {
    if (auto hit = vopts.cache_load(key)) return *hit;
  }
  ExactResult r = compute();
  if (vopts.cache_store && r.status == SearchStatus::complete) vopts.cache_store(key, r);
  return r;
}

}  // namespace detail

/// Runs every claim against exact search for all groups of order <= max_order.
/// Exact predictions must match exactly; bounds must bracket the exact value;
/// builders must succeed exactly where the predicates say so.
inline VerificationReport verify_range(long long max_order, const VerifyOptions& vopts = {}) {
  if (max_order < 2) fail(errc::order_below_two, "max_order");
  VerificationReport report;

  struct Task {
    GroupSpec group;
    std::string kind;  // "fold", "size", "group"
    long long param;
    std::vector<VerifyEntry> entries;
    std::vector<char> avoid_profile;  // shared per group, filled for "size"
  };
  std::vector<Task> tasks;
  for (long long n = 2; n <= max_order; ++n) {
    for (const auto& g : enumerate_groups_of_order(n)) {
      auto avoid = sum_avoiding_profile(g);
      for (long long h = 1; h <= n; ++h) tasks.push_back({g, "fold", h, {}, {}});
      for (long long m = 1; m <= n; ++m) tasks.push_back({g, "size", m, {}, avoid});
      tasks.push_back({g, "group", 0, {}, {}});
    }
  }

  SearchOptions sopts = vopts.search;
  sopts.thread_count = 1;

  auto run_task = [&](Task& task) {
    const GroupSpec& g = task.group;
    const long long n = g.order;
    const std::string gname = format_group(g);
    auto add = [&](const std::string& claim, long long param, const std::string& expected,
                   const std::string& actual, bool pass,
                   SearchStatus status = SearchStatus::complete) {
      task.entries.push_back({claim, gname, param, expected, actual, pass, status});
    };

    if (task.kind == "fold") {
      const long long h = task.param;
      PredictedValue pc = predicted_C(g, h);
      SearchOptions so = sopts;
      so.initial_lower_bound = pc.is_exact() ? pc.value : pc.lower;
      ExactResult rc = detail::cached_search(g, "C", h, vopts, so,
                                             [&] { return exact_C(g, h, so); });
      bool ok_c = rc.status == SearchStatus::complete &&
                  (pc.is_exact() ? rc.value == pc.value
                                 : pc.lower <= rc.value && rc.value <= pc.upper);
      add("C-prediction", h, detail::render_predicted(pc), std::to_string(rc.value), ok_c,
          rc.status);

      PredictedValue pz = predicted_Z(g, h);
      so.initial_lower_bound = pz.is_exact() ? pz.value : pz.lower;
      ExactResult rz = detail::cached_search(g, "Z", h, vopts, so,
                                             [&] { return exact_Z(g, h, so); });
      bool ok_z = rz.status == SearchStatus::complete &&
                  (pz.is_exact() ? rz.value == pz.value
                                 : pz.lower <= rz.value && rz.value <= pz.upper);
      add("Z-prediction", h, detail::render_predicted(pz), std::to_string(rz.value), ok_z,
          rz.status);

      if (rc.status == SearchStatus::complete && rz.status == SearchStatus::complete)
        add("Z<=C", h, "Z <= C", std::to_string(rz.value) + "," + std::to_string(rc.value),
            rz.value <= rc.value);

      long long cf = c_h_closed_form(n, h);
      so.initial_lower_bound = cf;
      ExactResult ru = detail::cached_search(g, "c", h, vopts, so,
                                             [&] { return exact_c_unrestricted(g, h, so); });
      add("c-formula", h, std::to_string(cf), std::to_string(ru.value),
          ru.status == SearchStatus::complete && ru.value == cf, ru.status);

      if (pc.is_exact()) {
        auto w = build_extremal_incomplete(g, h);
        add("C-witness", h, std::to_string(pc.value), std::to_string(w.set.count()),
            w.verified && w.set.count() == pc.value);
      }
      if (pz.is_exact()) {
        auto w = build_extremal_zsf(g, h);
        add("Z-witness", h, std::to_string(pz.value), std::to_string(w.set.count()),
            w.verified && w.set.count() == pz.value);
      }
    } else if (task.kind == "size") {
      const long long m = task.param;
      if (m <= n - 1) {
        bool f = zero_sum_nonzero_exists(g, m);
        bool o = zero_sum_subset_oracle(g, m, true);
        bool built = false, built_ok = false;
        try {
          auto w = build_zero_sum_nonzero(g, m);
          built = true;
          built_ok = w.verified && w.set.count() == m && !w.set.test(0);
        } catch (const error& e) {
          if (e.code() != errc::not_representable) throw;
        }
        add("zero-sum-nonzero", m, f ? "exists" : "none", o ? "exists" : "none",
            f == o && built == f && (!built || built_ok));
      }
      {
        bool f = zero_sum_exists(g, m);
        bool o = zero_sum_subset_oracle(g, m, false);
        bool built = false, built_ok = false;
        try {
          auto w = build_zero_sum(g, m);
          built = true;
          built_ok = w.verified && w.set.count() == m;
        } catch (const error& e) {
          if (e.code() != errc::not_representable) throw;
        }
        add("zero-sum", m, f ? "exists" : "none", o ? "exists" : "none",
            f == o && built == f && (!built || built_ok));
      }
      {
        bool f = avoiding_sum_exists(g, m);
        bool o = task.avoid_profile[m];
        bool built = false, built_ok = false;
        try {
          auto w = build_avoiding_sum_set(g, m);
          built = true;
          built_ok = w.verified && w.set.count() == m;
        } catch (const error& e) {
          if (e.code() != errc::not_representable) throw;
        }
        add("sum-avoiding", m, f ? "exists" : "none", o ? "exists" : "none",
            f == o && built == f && (!built || built_ok));
      }
    } else {
      ExactResult ws = max_weak_sidon(g, sopts);
      long long cap = 1;
      while ((cap + 1) * cap / 2 <= n) ++cap;
      bool ok = ws.status == SearchStatus::complete && ws.value <= cap &&
                (ws.value < 2 || is_weak_sidon(g, ws.witness));
      add("weak-sidon-max", 0, "<=" + std::to_string(cap), std::to_string(ws.value), ok,
          ws.status);

      auto w2 = build_weakly_2zsf(g);
      add("2zsf-size", 0, std::to_string((n + g.involutions) / 2),
          std::to_string(w2.set.count()), w2.verified && w2.set.count() == (n + g.involutions) / 2);
    }
  };

  auto run_task_guarded = [&](Task& task) {
    try {
      run_task(task);
    } catch (const std::exception& e) {
      task.entries.push_back({"exception", format_group(task.group), task.param, "no exception",
                              e.what(), false, SearchStatus::complete});
    }
  };

  int threads = std::max(1, vopts.search.thread_count);
  if (threads == 1) {
    for (auto& t : tasks) run_task_guarded(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t ti = next.fetch_add(1); ti < tasks.size(); ti = next.fetch_add(1))
          run_task_guarded(tasks[ti]);
      });
    for (auto& th : pool) th.join();
  }

  for (auto& t : tasks)
    report.entries.insert(report.entries.end(), t.entries.begin(), t.entries.end());
  report.tally();
  return report;
}

}  // namespace sumsetlab
