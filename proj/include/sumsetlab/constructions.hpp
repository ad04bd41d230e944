#pragma once

#include <string>
#include <vector>

#include "sumsetlab/formulas.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/sumset.hpp"

namespace sumsetlab {

enum class WitnessProperty { h_incomplete, h_zero_sum_free, zero_sum, sum_avoiding, weak_sidon };

inline std::string witness_property_name(WitnessProperty p, long long fold) {
  switch (p) {
    case WitnessProperty::h_incomplete: return std::to_string(fold) + "-incomplete";
    case WitnessProperty::h_zero_sum_free: return std::to_string(fold) + "-zero-sum-free";
    case WitnessProperty::zero_sum: return "zero-sum";
    case WitnessProperty::sum_avoiding: return "sum-avoiding";
    case WitnessProperty::weak_sidon: return "weak-sidon";
  }
  return "?";
}

/// An explicit set together with the property it certifies.  `verified` is
/// set by re-checking the property through the sumset module, never assumed.
struct WitnessReport {
  GroupSpec group;
  ElementSet set;
  WitnessProperty property = WitnessProperty::zero_sum;
  long long fold = 0;  // h for the fold-indexed properties
  bool verified = false;
  std::string method;
};

namespace detail {

inline bool check_property(const GroupSpec& g, const ElementSet& a, WitnessProperty p,
                           long long fold) {
  switch (p) {
    case WitnessProperty::h_incomplete:
      return classify_set(g, a, fold).weakly_h_incomplete;
    case WitnessProperty::h_zero_sum_free:
      return classify_set(g, a, fold).weakly_h_zero_sum_free;
    case WitnessProperty::zero_sum:
      return set_sum(g, a) == 0;
    case WitnessProperty::sum_avoiding:
      return !a.test(set_sum(g, a));
    case WitnessProperty::weak_sidon:
      return is_weak_sidon(g, a);
  }
  return false;
}

inline WitnessReport certify(const GroupSpec& g, ElementSet a, WitnessProperty p, long long fold,
                             std::string method) {
  WitnessReport r{g, std::move(a), p, fold, false, std::move(method)};
  internal_check(check_property(g, r.set, p, fold),
                 "construction failed its own re-verification");
  r.verified = true;
  return r;
}

// --- zero-sum subsets of Z_2^k \ {0} (indices in [1, 2^k)) -----------------

inline std::vector<long long> two_group_zero_sum(int k, long long m) {
  const long long n = 1LL << k;
  internal_check(((3 <= m && m <= n - 4) || m == n - 1) && k >= 2,
                 "two-group zero-sum size out of the representable range");
  auto all_nonzero = [&] {
    std::vector<long long> v(n - 1);
    for (long long i = 1; i < n; ++i) v[i - 1] = i;
    return v;
  };
  auto complement_in_nonzero = [&](const std::vector<long long>& a) {
    std::vector<char> in(n, 0);
    for (long long x : a) in[x] = 1;
    std::vector<long long> v;
    for (long long i = 1; i < n; ++i)
      if (!in[i]) v.push_back(i);
    return v;
  };

  if (m == n - 1) return all_nonzero();
  if (k == 3) {
    if (m == 3) return {1, 2, 3};
    return complement_in_nonzero({1, 2, 3});  // m == 4
  }
  if (k == 4) {
    switch (m) {
      case 3: return {1, 2, 3};
      case 4: return {1, 2, 4, 7};
      case 5: return {1, 2, 4, 8, 15};
      case 6: return {1, 2, 3, 4, 8, 12};
      case 7: return {1, 2, 3, 4, 5, 6, 7};
      default: return complement_in_nonzero(two_group_zero_sum(4, n - 1 - m));
    }
  }
  const long long half = n / 2;
  if (m <= half - 4) return two_group_zero_sum(k - 1, m);
  if (m <= half - 1) {
    // Adjoin the coset {e_k} + span{e_1, e_2} of size 4 to a rank-(k-1) set.
    auto a = two_group_zero_sum(k - 1, m - 4);
    for (long long j = 0; j < 4; ++j) a.push_back(half + j);
    return a;
  }
  return complement_in_nonzero(two_group_zero_sum(k, n - 1 - m));
}

/// Canonical isomorphism from Z_2^lambda onto the involution subgroup of G:
/// bit j maps to d/2 in the j-th even invariant factor.
inline std::vector<long long> involution_basis(const GroupSpec& g) {
  std::vector<long long> basis;
  long long radix = 1;
  for (long long d : g.factors) {
    if (d % 2 == 0) basis.push_back(d / 2 * radix);
    radix *= d;
  }
  return basis;
}

inline std::vector<long long> map_to_involutions(const GroupSpec& g,
                                                 const std::vector<long long>& bit_indices) {
  auto basis = involution_basis(g);
  std::vector<long long> out;
  out.reserve(bit_indices.size());
  for (long long b : bit_indices) {
    long long idx = 0;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if ((b >> j) & 1) idx += basis[j];
    out.push_back(idx);
  }
  return out;
}

/// {g1, g2, -(g1+g2)} plus (m-3)/2 inverse pairs from the rest of K.
/// g1 is the minimum of K; g2 is the first element of K after g1 making
/// +-g1, +-g2, +-(g1+g2) six pairwise distinct elements.
inline std::vector<long long> odd_zero_sum_from_pairs(const GroupSpec& g,
                                                      const std::vector<long long>& k_reps,
                                                      long long m) {
  internal_check(k_reps.size() >= 4 && m % 2 == 1 && m >= 3, "triple construction needs |K| >= 4");
  long long g1 = k_reps[0];
  long long g2 = -1, w = -1;
  for (std::size_t i = 1; i < k_reps.size() && g2 < 0; ++i) {
    long long cand = k_reps[i];
    long long s = add_indices(g, g1, cand);
    std::vector<long long> six = {g1, negate_index(g, g1), cand, negate_index(g, cand),
                                  s,  negate_index(g, s)};
    std::sort(six.begin(), six.end());
    if (std::adjacent_find(six.begin(), six.end()) == six.end()) {
      g2 = cand;
      w = negate_index(g, s);
    }
  }
  internal_check(g2 >= 0, "no second generator with six distinct signed elements");

  std::vector<char> used(g.order, 0);
  for (long long x : {g1, g2, w}) {
    used[x] = 1;
    used[negate_index(g, x)] = 1;
  }
  std::vector<long long> out = {g1, g2, w};
  long long need = (m - 3) / 2;
  for (long long x : k_reps) {
    if (need == 0) break;
    if (used[x]) continue;
    out.push_back(x);
    out.push_back(negate_index(g, x));
    --need;
  }
  internal_check(need == 0, "not enough free inverse pairs");
  return out;
}

inline std::vector<long long> inverse_pairs(const GroupSpec& g,
                                            const std::vector<long long>& k_reps,
                                            long long pair_count) {
  internal_check(pair_count <= static_cast<long long>(k_reps.size()), "not enough inverse pairs");
  std::vector<long long> out;
  for (long long i = 0; i < pair_count; ++i) {
    out.push_back(k_reps[i]);
    out.push_back(negate_index(g, k_reps[i]));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Builders.  Every builder re-verifies its output before returning.
// ---------------------------------------------------------------------------

/// Interval A of size floor((p-2)/h) + h in Z_p whose h-fold restricted
/// sumset (an interval of size h|A| - h^2 + 1) avoids zero.
inline WitnessReport build_interval_witness_zp(long long p, long long h) {
  if (!is_prime(p)) fail(errc::invalid_options, "interval witness needs a prime modulus");
  if (h < 1 || h > p - 2) fail(errc::fold_out_of_range, "need 1 <= h <= p-2");
  GroupSpec g = make_group({p});
  long long m = zp_extremal_value(p, h);
  long long span = h * m - h * h + 1;
  long long start_offset = h * (h - 1) / 2;
  long long c = -1;
  for (long long cand = 0; cand < p; ++cand) {
    long long start = (h * cand + start_offset) % p;
    if (start >= 1 && start + span - 1 <= p - 1) {
      c = cand;
      break;
    }
  }
  internal_check(c >= 0, "no interval position avoids zero");
  ElementSet a(p);
  for (long long i = 0; i < m; ++i) a.set((c + i) % p);
  return detail::certify(g, a, WitnessProperty::h_zero_sum_free, h, "interval");
}

/// A = L u K: the involutions plus one representative of each inverse pair;
/// no two distinct members sum to zero.
inline WitnessReport build_weakly_2zsf(const GroupSpec& g) {
  auto [l, k] = half_decomposition(g);
  return detail::certify(g, l | k, WitnessProperty::h_zero_sum_free, 2, "involution-half");
}

/// H u {g} where H is the index-2 subgroup killing the first coordinate;
/// g stays outside the 3-fold restricted sumset.
inline WitnessReport build_c3_witness_2group(const GroupSpec& g) {
  if (!is_elementary_abelian_2(g))
    fail(errc::not_elementary_abelian_2_group, format_group(g));
  if (g.order < 4) fail(errc::fold_out_of_range, "fold 3 exceeds the group order");
  ElementSet a(g.order);
  for (long long i = 0; i < g.order; i += 2) a.set(i);  // first coordinate zero
  a.set(1);
  return detail::certify(g, a, WitnessProperty::h_incomplete, 3, "index2-subgroup");
}

/// Zero-sum m-subset of G \ {0}, built case by case over the involution
/// structure; fails with NotRepresentable exactly when the predicate is false.
inline WitnessReport build_zero_sum_nonzero(const GroupSpec& g, long long m) {
  if (!zero_sum_nonzero_exists(g, m))
    fail(errc::not_representable, "no zero-sum subset of the nonzero elements has size " +
                                      std::to_string(m));
  const long long n = g.order, l = g.involutions;
  std::vector<long long> indices;
  std::string method;

  if (is_elementary_abelian_2(g)) {
    indices = detail::two_group_zero_sum(g.rank, m);
    method = "two-group-recursive";
  } else {
    auto [lset, kset] = half_decomposition(g);
    std::vector<long long> k_reps = kset.to_indices();
    if (m % 2 == 0 && m / 2 <= static_cast<long long>(k_reps.size())) {
      indices = detail::inverse_pairs(g, k_reps, m / 2);
      method = "inverse-pairs";
    } else if (l <= 2) {
      if (n == 7 && m == 3) {
        indices = {1, 2, 4};
        method = "order-7-base";
      } else if (n == 8 && m == 3) {
        indices = {1, 3, 4};
        method = "order-8-base";
      } else if (l == 2 && m == n - 3) {
        // Drop 0, an order-q element, and its partner summing to e with it.
        long long e = -1;
        for (long long i = 1; i < n && e < 0; ++i)
          if (add_indices(g, i, i) == 0) e = i;
        long long g1 = -1;
        for (long long i = 1; i < n && g1 < 0; ++i)
          if (element_order(g, i) == g.exponent) g1 = i;
        long long g2 = add_indices(g, e, negate_index(g, g1));
        internal_check(g1 != g2 && g2 != 0, "order-q partner collision");
        for (long long i = 1; i < n; ++i)
          if (i != g1 && i != g2) indices.push_back(i);
        method = "drop-order-q-pair";
      } else {
        indices = detail::odd_zero_sum_from_pairs(g, k_reps, m);
        method = "triple-plus-pairs";
      }
    } else if (l == 4) {
      // The three involutions sum to zero; extend with inverse pairs.
      indices = lset.to_indices();
      indices.erase(std::find(indices.begin(), indices.end(), 0));
      auto pairs = detail::inverse_pairs(g, k_reps, (m - 3) / 2);
      indices.insert(indices.end(), pairs.begin(), pairs.end());
      method = "involution-triple-plus-pairs";
    } else {
      // l >= 8: compose a zero-sum set of involutions with inverse pairs.
      int lambda = 0;
      while ((1LL << (lambda + 1)) <= l) ++lambda;
      if (m == n - 1) {
        for (long long i = 1; i < n; ++i) indices.push_back(i);
        method = "all-nonzero";
      } else if (m == n - 3) {
        indices = lset.to_indices();
        indices.erase(std::find(indices.begin(), indices.end(), 0));
        auto pairs = detail::inverse_pairs(g, k_reps, static_cast<long long>(k_reps.size()) - 1);
        indices.insert(indices.end(), pairs.begin(), pairs.end());
        method = "involutions-plus-pairs";
      } else if (m <= l - 4) {
        indices = detail::map_to_involutions(g, detail::two_group_zero_sum(lambda, m));
        method = "involution-subgroup-recursive";
      } else {
        long long m1 = (m % 2 == 0) ? l - 4 : l - 5;
        indices = detail::map_to_involutions(g, detail::two_group_zero_sum(lambda, m1));
        auto pairs = detail::inverse_pairs(g, k_reps, (m - m1) / 2);
        indices.insert(indices.end(), pairs.begin(), pairs.end());
        method = "involution-set-plus-pairs";
      }
    }
  }

  ElementSet a = ElementSet::of(n, indices);
  internal_check(a.count() == m && !a.test(0), "zero-sum construction has wrong shape");
  return detail::certify(g, a, WitnessProperty::zero_sum, 0, method);
}

/// Zero-sum m-subset of G (zero allowed as a member).
inline WitnessReport build_zero_sum(const GroupSpec& g, long long m) {
  if (!zero_sum_exists(g, m))
    fail(errc::not_representable, "no zero-sum subset has size " + std::to_string(m));
  if (m == 1) {
    ElementSet a(g.order);
    a.set(0);
    return detail::certify(g, a, WitnessProperty::zero_sum, 0, "zero-singleton");
  }
  if (m <= g.order - 1 && zero_sum_nonzero_exists(g, m)) return build_zero_sum_nonzero(g, m);
  internal_check(zero_sum_nonzero_exists(g, m - 1), "zero-sum reduction has no nonzero core");
  auto core = build_zero_sum_nonzero(g, m - 1);
  ElementSet a = core.set;
  a.set(0);
  return detail::certify(g, a, WitnessProperty::zero_sum, 0, core.method + "+zero");
}

/// m-subset A with s(A) not in A.
inline WitnessReport build_avoiding_sum_set(const GroupSpec& g, long long m) {
  if (!avoiding_sum_exists(g, m))
    fail(errc::not_representable, "no sum-avoiding subset has size " + std::to_string(m));
  const long long n = g.order;
  if (m <= n - 1 && zero_sum_nonzero_exists(g, m)) {
    auto core = build_zero_sum_nonzero(g, m);  // s(A) = 0 and 0 is not a member
    return detail::certify(g, core.set, WitnessProperty::sum_avoiding, 0, core.method);
  }
  if (is_elementary_abelian_2(g) && m == 2) {
    return detail::certify(g, ElementSet::of(n, {1, 2}), WitnessProperty::sum_avoiding, 0,
                           "distinct-involutions");
  }
  if (m == n - 2) {
    // s(G) = 0 here; dropping a1 and -2*a1 leaves sum a1 outside the set.
    long long a1 = -1;
    for (long long i = 1; i < n && a1 < 0; ++i)
      if (scale_index(g, 3, i) != 0) a1 = i;
    internal_check(a1 > 0, "every element has order dividing 3");
    long long a2 = negate_index(g, scale_index(g, 2, a1));
    internal_check(a1 != a2, "drop pair collision");
    ElementSet a = ElementSet::full(n);
    a.reset(a1);
    a.reset(a2);
    return detail::certify(g, a, WitnessProperty::sum_avoiding, 0, "drop-pair");
  }
  if (m == n - 1) {
    // l = 2 and 4 | q: drop an element with 2a = e.
    long long e = -1;
    for (long long i = 1; i < n && e < 0; ++i)
      if (add_indices(g, i, i) == 0) e = i;
    internal_check(e > 0, "no involution");
    ElementSet halves = doubling_preimages(g, e);
    internal_check(!halves.none(), "no square root of the involution");
    long long drop = halves.to_indices().front();
    ElementSet a = ElementSet::full(n);
    a.reset(drop);
    return detail::certify(g, a, WitnessProperty::sum_avoiding, 0, "drop-half-involution");
  }
  internal_check(false, "sum-avoiding dispatch fell through");
  return {};
}

/// B of size h with s(B) != 0 (hence weakly h-zero-sum-free, as h^B = {s(B)}):
/// the first h indices, with a single swap when their sum happens to vanish.
inline WitnessReport build_nonzero_sum_set(const GroupSpec& g, long long h) {
  if (h < 1 || h > g.order - 1) fail(errc::fold_out_of_range, "need 1 <= h <= n-1");
  ElementSet a(g.order);
  for (long long i = 0; i < h; ++i) a.set(i);
  if (set_sum(g, a) == 0) {
    a.reset(h - 1);
    a.set(h);
  }
  internal_check(a.count() == h && set_sum(g, a) != 0, "nonzero-sum construction failed");
  return detail::certify(g, a, WitnessProperty::h_zero_sum_free, h, "prefix-with-swap");
}

/// Verified weakly h-zero-sum-free set of size predicted_Z(G, h).
inline WitnessReport build_extremal_zsf(const GroupSpec& g, long long h) {
  PredictedValue p = predicted_Z(g, h);
  if (!p.is_exact()) fail(errc::no_exact_prediction, "Z_" + std::to_string(h) + " is not pinned");
  const long long n = g.order, v = p.value;
  auto finish = [&](ElementSet a, std::string method) {
    internal_check(a.count() == v, "extremal zero-sum-free witness has the wrong size");
    return detail::certify(g, std::move(a), WitnessProperty::h_zero_sum_free, h,
                           std::move(method));
  };

  if (h == 1) {
    ElementSet a = ElementSet::full(n);
    a.reset(0);
    return finish(std::move(a), "all-nonzero");
  }
  if (h == n) {
    if (g.involutions == 2) return finish(ElementSet::full(n), "whole-group");
    ElementSet a = ElementSet::full(n);
    a.reset(0);
    return finish(std::move(a), "all-nonzero");
  }
  if (h == n - 1) {
    long long s = group_sum(g);
    ElementSet a = ElementSet::full(n);
    a.reset(s == 0 ? 1 : 0);
    return finish(std::move(a), "drop-non-sum");
  }
  if (h == 2) {
    auto r = build_weakly_2zsf(g);
    return finish(r.set, r.method);
  }
  if (is_elementary_abelian_2(g) && v == h + 2)
    return finish(build_zero_sum(g, h + 2).set, "zero-sum-superset");
  if (v == h) return finish(build_nonzero_sum_set(g, h).set, "prefix-with-swap");
  if (v == h + 1) return finish(build_avoiding_sum_set(g, h + 1).set, "sum-avoiding-superset");
  if (g.rank == 1 && is_prime(n)) {
    auto r = build_interval_witness_zp(n, h);
    return finish(r.set, r.method);
  }
  internal_check(false, "no construction for this exact Z prediction");
  return {};
}

/// Verified weakly h-incomplete set of size predicted_C(G, h).
inline WitnessReport build_extremal_incomplete(const GroupSpec& g, long long h) {
  PredictedValue p = predicted_C(g, h);
  if (!p.is_exact()) fail(errc::no_exact_prediction, "C_" + std::to_string(h) + " is not pinned");
  const long long n = g.order, v = p.value;
  auto finish = [&](ElementSet a, std::string method) {
    internal_check(a.count() == v, "extremal incomplete witness has the wrong size");
    return detail::certify(g, std::move(a), WitnessProperty::h_incomplete, h, std::move(method));
  };

  if (h == n) return finish(ElementSet::full(n), "whole-group");
  if (h == 1 || h == n - 1) {
    ElementSet a = ElementSet::full(n);
    a.reset(0);
    return finish(std::move(a), "all-nonzero");
  }
  if (h == 2) {
    auto r = build_weakly_2zsf(g);
    return finish(r.set, r.method);
  }
  if (h == 3 && is_elementary_abelian_2(g)) {
    auto r = build_c3_witness_2group(g);
    return finish(r.set, r.method);
  }
  auto prefix = [&](long long size) {
    ElementSet a(n);
    for (long long i = 0; i < size; ++i) a.set(i);
    return a;
  };
  if (is_elementary_abelian_2(g) && v == h + 2) return finish(prefix(h + 2), "any-h+2-set");
  if (v == h + 1) return finish(prefix(h + 1), "any-h+1-set");
  if (g.rank == 1 && is_prime(n)) {
    auto r = build_interval_witness_zp(n, h);
    return finish(r.set, r.method);
  }
  internal_check(false, "no construction for this exact C prediction");
  return {};
}

}  // namespace sumsetlab
