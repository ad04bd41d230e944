#pragma once

#include <string>
#include <vector>

#include "sumsetlab/group.hpp"

namespace sumsetlab {

/// A value predicted by a closed form: exact, or a lower/upper bracket.
/// `source` names the rule that produced it.
struct PredictedValue {
  enum class Kind { exact, bounds };

  Kind kind = Kind::bounds;
  long long value = 0;  // meaningful when exact
  long long lower = 0;
  long long upper = 0;
  std::string source;

  static PredictedValue exact(long long v, std::string src) {
    return PredictedValue{Kind::exact, v, v, v, std::move(src)};
  }
  static PredictedValue bounds(long long lo, long long hi, std::string src) {
    return PredictedValue{Kind::bounds, 0, lo, hi, std::move(src)};
  }
  bool is_exact() const { return kind == Kind::exact; }
};

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

/// Largest size of a set whose h-fold unrestricted sumset misses something:
/// max over divisors d of n of (floor((d-2)/h) + 1) * n/d.  Depends only on n.
inline long long c_h_closed_form(long long n, long long h) {
  if (n < 2) fail(errc::order_below_two, "order " + std::to_string(n));
  if (h < 1) fail(errc::fold_out_of_range, "h must be positive");
  long long best = 0;  // d = 1 contributes 0
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    for (long long div : {d, n / d})
      best = std::max(best, ((div - 2) / h + 1) * (n / div));
  }
  best = std::max(best, (n - 2) / h + 1);  // d = n
  return best;
}

/// floor((p-2)/h) + h: the shared value of C_h and Z_h in prime order p.
inline long long zp_extremal_value(long long p, long long h) {
  if (h < 1 || h > p - 1) fail(errc::fold_out_of_range, "need 1 <= h <= p-1");
  return (p - 2) / h + h;
}

namespace detail {

struct Clause {
  long long value;
  std::string source;
};

inline PredictedValue resolve(std::vector<Clause>& clauses, PredictedValue fallback) {
  if (clauses.empty()) return fallback;
  for (const auto& c : clauses)
    internal_check(c.value == clauses.front().value,
                   "two applicable prediction clauses disagree");
  return PredictedValue::exact(clauses.front().value, clauses.front().source);
}

}  // namespace detail

/// Prediction for C_h(G), the largest weakly h-incomplete set size.
inline PredictedValue predicted_C(const GroupSpec& g, long long h) {
  const long long n = g.order, q = g.exponent, l = g.involutions;
  if (h < 1 || h > n) fail(errc::fold_out_of_range, "need 1 <= h <= n");

  std::vector<detail::Clause> clauses;
  if (h == 1) clauses.push_back({n - 1, "single-fold rule"});
  if (h == n) clauses.push_back({n, "full-fold rule"});
  if (h == n - 1) clauses.push_back({n - 1, "near-full-fold rule"});
  if (h == 2) clauses.push_back({(n + l) / 2, "pair rule (n+l)/2"});
  if (h == 3 && q == 2 && n >= 4) clauses.push_back({n / 2 + 1, "two-group triple rule"});
  if (g.rank == 1 && is_prime(n) && h <= n - 1)
    clauses.push_back({zp_extremal_value(n, h), "prime-order interval rule"});
  if (q == 2 && n / 2 - 1 <= h && h <= n - 2)
    clauses.push_back({h + 2, "two-group large-fold rule"});
  if ((n + l) / 2 - 1 <= h && h <= n - 2) clauses.push_back({h + 1, "large-fold rule"});

  long long lower = std::max(h <= n - 2 ? h + 1 : 1, c_h_closed_form(n, h));
  long long upper = (q == 2 && 4 <= h && h <= n / 2 - 2) ? n / 2 + h - 2 : n;
  return detail::resolve(clauses, PredictedValue::bounds(lower, upper, "bounds"));
}

/// Prediction for Z_h(G), the largest weakly h-zero-sum-free set size.
inline PredictedValue predicted_Z(const GroupSpec& g, long long h) {
  const long long n = g.order, q = g.exponent, l = g.involutions;
  if (h < 1 || h > n) fail(errc::fold_out_of_range, "need 1 <= h <= n");

  std::vector<detail::Clause> clauses;
  if (h == 1) clauses.push_back({n - 1, "single-fold rule"});
  if (h == 2) clauses.push_back({(n + l) / 2, "pair rule (n+l)/2"});
  if (h == n - 1) clauses.push_back({n - 1, "near-full-fold rule"});
  if (h == n) clauses.push_back({l == 2 ? n : n - 1, "full-fold rule"});
  if (g.rank == 1 && is_prime(n) && h <= n - 1)
    clauses.push_back({zp_extremal_value(n, h), "prime-order interval rule"});
  if (q == 2 && n / 2 - 1 <= h && h <= n - 2)
    clauses.push_back({h == n - 4 ? h : h + 2,
                       h == n - 4 ? "two-group large-fold rule (n-4 exception)"
                                  : "two-group large-fold rule"});
  if (q > 2 && (n + l) / 2 - 1 <= h && h <= n - 2) {
    bool exceptional = (h == n - 3 && q == 3) || (h == n - 2 && l == 2 && q % 4 == 2);
    clauses.push_back({exceptional ? h : h + 1,
                       exceptional ? "large-fold rule (exceptional case)" : "large-fold rule"});
  }

  PredictedValue c = predicted_C(g, h);  // zero-sum-free implies incomplete
  return detail::resolve(clauses, PredictedValue::bounds(h, c.upper, "bounds"));
}

/// Does G \ {0} contain a zero-sum subset of size m?
inline bool zero_sum_nonzero_exists(const GroupSpec& g, long long m) {
  const long long n = g.order, l = g.involutions;
  if (m < 1 || m > n - 1) fail(errc::size_out_of_range, "need 1 <= m <= n-1");
  if (is_elementary_abelian_2(g)) {
    // Rank 1 has no such set at all: s({1}) != 0.
    return (3 <= m && m <= n - 4) || (m == n - 1 && n >= 4);
  }
  if (2 <= m && m <= n - 3) return true;
  if (m == n - 2 && l == 2) return true;
  if (m == n - 1 && l != 2) return true;
  return false;
}

/// Does G contain a zero-sum subset of size m (zero allowed as a member)?
inline bool zero_sum_exists(const GroupSpec& g, long long m) {
  const long long n = g.order, l = g.involutions;
  if (m < 1 || m > n) fail(errc::size_out_of_range, "need 1 <= m <= n");
  if (is_elementary_abelian_2(g) && (m == 2 || m == n - 2)) return false;
  if (l == 2 && m == n) return false;
  return true;
}

/// Does G contain an m-subset A with s(A) not in A?
inline bool avoiding_sum_exists(const GroupSpec& g, long long m) {
  const long long n = g.order, q = g.exponent, l = g.involutions;
  if (m < 1 || m > n) fail(errc::size_out_of_range, "need 1 <= m <= n");
  if (m == 1) return false;  // s(A) is the single element
  if (m == n) return false;  // s(G) is an element of G
  if (2 <= m && m <= n - 4) return true;
  if (m == n - 3) return !is_elementary_abelian_2(g);
  if (m == n - 2) return !(q == 3);  // q = 3 means elementary abelian 3-group
  if (m == n - 1) return l != 2 || q % 4 == 0;
  return false;
}

}  // namespace sumsetlab
