#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sumsetlab/group.hpp"

namespace sumsetlab {

namespace detail {

/// Flat n*n table of index sums; worth building whenever a set of elements
/// will be translated many times (search, layered DP).
class AddTable {
 public:
  static constexpr long long kMaxTabledOrder = 1024;

  explicit AddTable(const GroupSpec& g) : n_(g.order) {
    if (n_ <= kMaxTabledOrder) {
      sums_.resize(static_cast<std::size_t>(n_) * n_);
      for (long long a = 0; a < n_; ++a)
        for (long long b = 0; b < n_; ++b)
          sums_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::int32_t>(add_indices(g, a, b));
    }
  }

  bool tabled() const { return !sums_.empty(); }

  long long add(long long a, long long b) const {
    return sums_[static_cast<std::size_t>(a) * n_ + b];
  }

 private:
  long long n_;
  std::vector<std::int32_t> sums_;
};

inline void translate_into(const GroupSpec& g, const AddTable* table, const ElementSet& src,
                           long long x, ElementSet& dst) {
  if (table && table->tabled()) {
    src.for_each([&](long long i) { dst.set(table->add(i, x)); });
  } else {
    src.for_each([&](long long i) { dst.set(add_indices(g, i, x)); });
  }
}

}  // namespace detail

/// Incremental h-fold restricted sumset of a growing element set.
///
/// layers[j] is the set of sums of exactly j distinct inserted elements
/// (layers[0] = {0}).  Inserting x updates layers in descending order so x is
/// used at most once; undo() restores the snapshot taken by the last insert.
class LayeredSumState {
 public:
  LayeredSumState(const GroupSpec& g, int fold)
      : group_(g), fold_(fold), table_(std::make_shared<detail::AddTable>(g)),
        layers_(fold + 1, ElementSet(g.order)) {
    layers_[0].set(0);
  }

  const GroupSpec& group() const { return group_; }
  int fold() const { return fold_; }
  int inserted() const { return inserted_; }
  const ElementSet& layer(int j) const { return layers_[j]; }
  const ElementSet& top_layer() const { return layers_[fold_]; }

  void insert(long long x) {
    snapshot();
    int limit = std::min(fold_, inserted_ + 1);
    for (int j = limit; j >= 1; --j)
      detail::translate_into(group_, table_.get(), layers_[j - 1], x, layers_[j]);
    ++inserted_;
  }

  void undo() {
    restore();
    --inserted_;
  }

  bool top_layer_full() const { return layers_[fold_].count() == group_.order; }
  bool top_layer_has_zero() const { return layers_[fold_].test(0); }

 private:
  // The undo trail is one flat buffer: each insert appends a raw copy of the
  // layers it may touch (1..min(fold, inserted+1); layer 0 never changes and
  // higher layers are still empty), so backtracking is a memcpy, not
  // allocations.  The dirty range is recomputed from inserted_ on undo.
  void snapshot() {
    std::size_t w = layers_[0].word_count();
    std::size_t dirty = std::min(fold_, inserted_ + 1);
    std::size_t base = trail_.size();
    trail_.resize(base + dirty * w);
    for (std::size_t j = 1; j <= dirty; ++j)
      std::copy_n(layers_[j].word_data(), w, trail_.data() + base + (j - 1) * w);
  }
  void restore() {
    std::size_t w = layers_[0].word_count();
    std::size_t dirty = std::min(fold_, inserted_);  // inserted_ is one past the snapshot
    std::size_t base = trail_.size() - dirty * w;
    for (std::size_t j = 1; j <= dirty; ++j)
      std::copy_n(trail_.data() + base + (j - 1) * w, w, layers_[j].word_data());
    trail_.resize(base);
  }

  GroupSpec group_;
  int fold_;
  int inserted_ = 0;
  std::shared_ptr<detail::AddTable> table_;
  std::vector<ElementSet> layers_;
  std::vector<std::uint64_t> trail_;
};

/// h-fold restricted sumset: sums of h pairwise-distinct elements of A.
/// h = 0 yields {0} (empty sum); h > |A| yields the empty set.
inline ElementSet restricted_sumset(const GroupSpec& g, const ElementSet& a, long long h) {
  if (h < 0) fail(errc::fold_out_of_range, "negative fold");
  std::vector<ElementSet> layers(h + 1, ElementSet(g.order));
  layers[0].set(0);
  long long inserted = 0;
  a.for_each([&](long long x) {
    long long limit = std::min<long long>(h, inserted + 1);
    for (long long j = limit; j >= 1; --j)
      detail::translate_into(g, nullptr, layers[j - 1], x, layers[j]);
    ++inserted;
  });
  return layers[h];
}

/// h-fold unrestricted sumset: sums of h not-necessarily-distinct elements.
inline ElementSet unrestricted_sumset(const GroupSpec& g, const ElementSet& a, long long h) {
  if (h < 0) fail(errc::fold_out_of_range, "negative fold");
  if (h == 0) {
    ElementSet out(g.order);
    out.set(0);
    return out;
  }
  if (a.none()) fail(errc::empty_set_positive_fold, "h-fold sumset of the empty set, h >= 1");
  ElementSet result = a;
  for (long long j = 2; j <= h; ++j) {
    ElementSet next(g.order);
    a.for_each([&](long long x) { detail::translate_into(g, nullptr, result, x, next); });
    result = std::move(next);
  }
  return result;
}

struct SetClassification {
  bool weakly_h_incomplete = false;     // h^A != G
  bool weakly_h_zero_sum_free = false;  // 0 not in h^A
};

inline SetClassification classify_set(const GroupSpec& g, const ElementSet& a, long long h) {
  if (h < 1) fail(errc::fold_out_of_range, "classification needs h >= 1");
  ElementSet s = restricted_sumset(g, a, h);
  SetClassification out;
  out.weakly_h_incomplete = s.count() != g.order;
  out.weakly_h_zero_sum_free = !s.test(0);
  return out;
}

/// True iff the 2-fold restricted sumset has the full size m(m-1)/2.
inline bool is_weak_sidon(const GroupSpec& g, const ElementSet& a) {
  long long m = a.count();
  if (m < 2) fail(errc::set_too_small, "weak Sidon test needs at least 2 elements");
  return restricted_sumset(g, a, 2).count() == m * (m - 1) / 2;
}

/// min(p, h*m - h^2 + 1): the guaranteed size of h^A for A of size m in Z_p.
inline long long erdos_heilbronn_bound(long long p, long long m, long long h) {
  if (h < 1 || h > m) fail(errc::fold_exceeds_size, "need 1 <= h <= |A|");
  return std::min(p, h * m - h * h + 1);
}

}  // namespace sumsetlab
