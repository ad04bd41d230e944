#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <random>
#include <vector>

#include "sumsetlab/formulas.hpp"
#include "sumsetlab/sumset.hpp"

using namespace sumsetlab;

namespace {

// Independent oracle: enumerate every h-subset and collect its sum.
void enumerate_subset_sums(const GroupSpec& g, const std::vector<long long>& pool,
                           std::size_t from, long long remaining, long long partial,
                           ElementSet& out) {
  if (remaining == 0) {
    out.set(partial);
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i)
    enumerate_subset_sums(g, pool, i + 1, remaining - 1, add_indices(g, partial, pool[i]), out);
}

ElementSet brute_restricted(const GroupSpec& g, const ElementSet& a, long long h) {
  ElementSet out(g.order);
  auto pool = a.to_indices();
  if (h <= static_cast<long long>(pool.size())) enumerate_subset_sums(g, pool, 0, h, 0, out);
  return out;
}

void enumerate_multiset_sums(const GroupSpec& g, const std::vector<long long>& pool,
                             std::size_t from, long long remaining, long long partial,
                             ElementSet& out) {
  if (remaining == 0) {
    out.set(partial);
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i)
    enumerate_multiset_sums(g, pool, i, remaining - 1, add_indices(g, partial, pool[i]), out);
}

ElementSet brute_unrestricted(const GroupSpec& g, const ElementSet& a, long long h) {
  ElementSet out(g.order);
  auto pool = a.to_indices();
  enumerate_multiset_sums(g, pool, 0, h, 0, out);
  return out;
}

ElementSet random_subset(const GroupSpec& g, std::mt19937_64& rng) {
  ElementSet a(g.order);
  for (long long i = 0; i < g.order; ++i)
    if (rng() & 1) a.set(i);
  return a;
}

}  // namespace

TEST_CASE("restricted sumset matches the values pinned by hand") {
  auto z7 = make_group({7});
  CHECK(restricted_sumset(z7, ElementSet::of(7, {1, 2, 4}), 3).to_indices() ==
        std::vector<long long>{0});

  auto z5 = make_group({5});
  CHECK(restricted_sumset(z5, ElementSet::of(5, {0, 1, 2, 3}), 2).count() == 5);

  auto a = ElementSet::of(7, {1, 2, 5});
  CHECK(restricted_sumset(z7, a, 3).to_indices() == std::vector<long long>{set_sum(z7, a)});
  CHECK(restricted_sumset(z7, a, 4).none());
  CHECK(restricted_sumset(z7, a, 0).to_indices() == std::vector<long long>{0});
}

TEST_CASE("restricted sumset agrees with subset enumeration") {
  auto z7 = make_group({7});
  for (std::uint32_t mask = 0; mask < (1u << 7); ++mask) {
    ElementSet a(7);
    for (int i = 0; i < 7; ++i)
      if ((mask >> i) & 1) a.set(i);
    for (long long h = 0; h <= 7; ++h) CHECK(restricted_sumset(z7, a, h) == brute_restricted(z7, a, h));
  }

  auto g = make_group({2, 4});
  for (std::uint32_t mask = 0; mask < (1u << 8); ++mask) {
    ElementSet a(8);
    for (int i = 0; i < 8; ++i)
      if ((mask >> i) & 1) a.set(i);
    for (long long h = 0; h <= 4; ++h) CHECK(restricted_sumset(g, a, h) == brute_restricted(g, a, h));
  }

  std::mt19937_64 rng(11);
  auto g9 = make_group({3, 3});
  for (int trial = 0; trial < 100; ++trial) {
    ElementSet a = random_subset(g9, rng);
    long long h = rng() % 6;
    CHECK(restricted_sumset(g9, a, h) == brute_restricted(g9, a, h));
  }
}

TEST_CASE("unrestricted sumset folds correctly") {
  auto z5 = make_group({5});
  CHECK(unrestricted_sumset(z5, ElementSet::of(5, {0, 1}), 3).to_indices() ==
        std::vector<long long>{0, 1, 2, 3});
  auto z7 = make_group({7});
  CHECK(unrestricted_sumset(z7, ElementSet::of(7, {1}), 3).to_indices() ==
        std::vector<long long>{3});

  auto z6 = make_group({6});
  auto subgroup = ElementSet::of(6, {0, 2, 4});
  for (long long h = 1; h <= 5; ++h) CHECK(unrestricted_sumset(z6, subgroup, h) == subgroup);

  CHECK(unrestricted_sumset(z5, ElementSet(5), 0).to_indices() == std::vector<long long>{0});
  CHECK_THROWS_MATCHES(unrestricted_sumset(z5, ElementSet(5), 2), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == errc::empty_set_positive_fold;
                       }));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    ElementSet a = random_subset(z7, rng);
    if (a.none()) a.set(rng() % 7);
    long long h = 1 + rng() % 4;
    CHECK(unrestricted_sumset(z7, a, h) == brute_unrestricted(z7, a, h));
  }
}

TEST_CASE("classify_set reads both flags off the h-fold sumset") {
  auto z7 = make_group({7});
  auto c = classify_set(z7, ElementSet::of(7, {1, 2, 4}), 3);
  CHECK(c.weakly_h_incomplete);
  CHECK_FALSE(c.weakly_h_zero_sum_free);

  // An index-2 subgroup of Z_2^3 plus one outside element: 3-incomplete, but
  // the subgroup already contains a triple {a, b, a+b} summing to zero.
  auto g8 = make_group({2, 2, 2});
  auto a = ElementSet::of(8, {0, 2, 4, 6, 1});
  auto c8 = classify_set(g8, a, 3);
  CHECK(c8.weakly_h_incomplete);
  CHECK_FALSE(c8.weakly_h_zero_sum_free);

  for (const auto& g : {make_group({6}), make_group({2, 4}), make_group({9})}) {
    auto full = ElementSet::full(g.order);
    CHECK_FALSE(classify_set(g, full, g.order - 1).weakly_h_incomplete);
  }
}

TEST_CASE("weak Sidon detection counts pairwise sums") {
  auto g8 = make_group({2, 2, 2});
  CHECK(is_weak_sidon(g8, ElementSet::of(8, {0, 1, 2, 4})));
  auto z7 = make_group({7});
  CHECK(is_weak_sidon(z7, ElementSet::of(7, {0, 1, 3})));
  CHECK_FALSE(is_weak_sidon(z7, ElementSet::of(7, {0, 1, 2, 3})));
  CHECK_THROWS_MATCHES(is_weak_sidon(z7, ElementSet::of(7, {3})), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::set_too_small; }));
}

TEST_CASE("weak Sidon coincides with weak 4-zero-sum-freeness in 2-groups") {
  for (int r = 2; r <= 3; ++r) {
    auto g = make_group(std::vector<long long>(r, 2));
    long long n = g.order;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) < 2) continue;
      ElementSet a(n);
      for (long long i = 0; i < n; ++i)
        if ((mask >> i) & 1) a.set(i);
      CHECK(is_weak_sidon(g, a) == !restricted_sumset(g, a, 4).test(0));
    }
  }
}

TEST_CASE("Erdos-Heilbronn lower bound formula") {
  CHECK(erdos_heilbronn_bound(7, 4, 2) == 5);
  CHECK(erdos_heilbronn_bound(7, 7, 3) == 7);
  CHECK(erdos_heilbronn_bound(13, 5, 1) == 5);
  CHECK_THROWS_MATCHES(erdos_heilbronn_bound(7, 3, 4), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::fold_exceeds_size; }));
}

TEST_CASE("restricted sumsets satisfy the Erdos-Heilbronn bound in small primes") {
  for (long long p : {3, 5, 7}) {
    auto g = make_group({p});
    for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
      ElementSet a(p);
      for (long long i = 0; i < p; ++i)
        if ((mask >> i) & 1) a.set(i);
      long long m = a.count();
      for (long long h = 1; h <= m; ++h)
        CHECK(restricted_sumset(g, a, h).count() >= erdos_heilbronn_bound(p, m, h));
    }
    // Intervals attain the bound whenever the sumset is proper.
    for (long long c = 0; c < p; ++c)
      for (long long m = 1; m <= p; ++m) {
        ElementSet a(p);
        for (long long i = 0; i < m; ++i) a.set((c + i) % p);
        for (long long h = 1; h <= m; ++h) {
          auto s = restricted_sumset(g, a, h);
          CHECK(s.count() == erdos_heilbronn_bound(p, m, h));
        }
      }
  }
}

TEST_CASE("monotonicity, translation covariance and complement duality") {
  std::mt19937_64 rng(17);
  std::vector<GroupSpec> groups;
  for (long long n = 2; n <= 24; ++n)
    for (const auto& g : enumerate_groups_of_order(n)) groups.push_back(g);

  for (int trial = 0; trial < 300; ++trial) {
    const auto& g = groups[rng() % groups.size()];
    ElementSet a = random_subset(g, rng);
    long long h = rng() % (g.order + 1);

    ElementSet b(g.order);  // random subset of a
    a.for_each([&](long long i) {
      if (rng() & 1) b.set(i);
    });
    CHECK(restricted_sumset(g, a, h).contains(restricted_sumset(g, b, h)));

    long long t = rng() % g.order;
    ElementSet at = translate_set(g, a, t);
    ElementSet lhs = restricted_sumset(g, at, h);
    ElementSet rhs = translate_set(g, restricted_sumset(g, a, h), scale_index(g, h, t));
    CHECK(lhs == rhs);
  }

  // Duality h^A = s(A) - (m-h)^A, exhaustively on Z_7.
  auto z7 = make_group({7});
  for (std::uint32_t mask = 0; mask < (1u << 7); ++mask) {
    ElementSet a(7);
    for (int i = 0; i < 7; ++i)
      if ((mask >> i) & 1) a.set(i);
    long long m = a.count();
    long long s = set_sum(z7, a);
    for (long long h = 0; h <= m; ++h) {
      ElementSet lhs = restricted_sumset(z7, a, h);
      ElementSet rhs = translate_set(z7, negate_set(z7, restricted_sumset(z7, a, m - h)), s);
      CHECK(lhs == rhs);
      CHECK(lhs.count() == restricted_sumset(z7, a, m - h).count());
    }
  }
}

TEST_CASE("layered state insert/undo matches fresh computation") {
  std::mt19937_64 rng(19);
  auto g = make_group({2, 6});
  for (int trial = 0; trial < 40; ++trial) {
    int h = 1 + rng() % 5;
    LayeredSumState state(g, h);
    ElementSet current(g.order);
    std::vector<long long> stack;
    for (int step = 0; step < 60; ++step) {
      bool push = stack.empty() || (state.inserted() < g.order && rng() % 3);
      if (push) {
        long long x = rng() % g.order;
        while (current.test(x)) x = (x + 1) % g.order;
        state.insert(x);
        current.set(x);
        stack.push_back(x);
      } else {
        state.undo();
        current.reset(stack.back());
        stack.pop_back();
      }
      CHECK(state.layer(h) == restricted_sumset(g, current, h));
    }
  }
}
