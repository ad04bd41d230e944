#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

/// A finite abelian group in invariant-factor form: Z_{d_1} x ... x Z_{d_r}
/// with d_i | d_{i+1}.  Derived quantities are cached at construction.
struct GroupSpec {
  std::vector<long long> factors;  // invariant factor chain, each >= 2
  long long order = 0;             // n = product of factors
  long long exponent = 0;          // q = last factor
  int rank = 0;                    // r = number of factors
  long long involutions = 0;       // l = 2^(number of even factors)

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.factors == b.factors;
  }
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }
};

/// Element as a residue vector, coords[i] in [0, d_i).
using GroupElement = std::vector<long long>;

inline GroupSpec make_group(const std::vector<long long>& factors) {
  if (factors.empty()) fail(errc::empty_factor_list, "a group needs at least one cyclic factor");
  GroupSpec g;
  g.factors = factors;
  g.order = 1;
  g.involutions = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    long long d = factors[i];
    if (d < 2) fail(errc::factor_below_two, "factor " + std::to_string(d));
    if (i > 0 && factors[i] % factors[i - 1] != 0)
      fail(errc::broken_divisibility_chain,
           std::to_string(factors[i - 1]) + " does not divide " + std::to_string(factors[i]));
    g.order *= d;
    if (d % 2 == 0) g.involutions *= 2;
  }
  g.exponent = factors.back();
  g.rank = static_cast<int>(factors.size());
  return g;
}

inline bool is_elementary_abelian_2(const GroupSpec& g) { return g.exponent == 2; }

// ---------------------------------------------------------------------------
// Element codec: index(g) = sum coords[i] * prod_{j<i} d_j, a bijection [0,n).
// ---------------------------------------------------------------------------

inline GroupElement element_at(const GroupSpec& g, long long index) {
  if (index < 0 || index >= g.order)
    fail(errc::index_out_of_range, "index " + std::to_string(index) + " in group of order " +
                                       std::to_string(g.order));
  GroupElement coords(g.factors.size());
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    coords[i] = index % g.factors[i];
    index /= g.factors[i];
  }
  return coords;
}

inline long long index_of(const GroupSpec& g, const GroupElement& coords) {
  if (coords.size() != g.factors.size()) fail(errc::group_mismatch, "coordinate count mismatch");
  long long index = 0;
  long long radix = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= g.factors[i])
      fail(errc::coord_out_of_range, "coordinate " + std::to_string(coords[i]) + " at position " +
                                         std::to_string(i));
    index += coords[i] * radix;
    radix *= g.factors[i];
  }
  return index;
}

inline GroupElement add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  if (a.size() != g.factors.size() || b.size() != g.factors.size())
    fail(errc::group_mismatch, "element does not belong to this group");
  GroupElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % g.factors[i];
  return out;
}

inline GroupElement negate(const GroupSpec& g, const GroupElement& a) {
  if (a.size() != g.factors.size()) fail(errc::group_mismatch, "element does not belong to this group");
  GroupElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] == 0 ? 0 : g.factors[i] - a[i];
  return out;
}

/// Index-level arithmetic (hot path; skips coordinate materialization).
inline long long add_indices(const GroupSpec& g, long long a, long long b) {
  long long out = 0;
  long long radix = 1;
  for (long long d : g.factors) {
    out += (a % d + b % d) % d * radix;
    a /= d;
    b /= d;
    radix *= d;
  }
  return out;
}

inline long long negate_index(const GroupSpec& g, long long a) {
  long long out = 0;
  long long radix = 1;
  for (long long d : g.factors) {
    long long c = a % d;
    out += (c == 0 ? 0 : d - c) * radix;
    a /= d;
    radix *= d;
  }
  return out;
}

inline long long scale_index(const GroupSpec& g, long long k, long long a) {
  long long out = 0;
  long long radix = 1;
  for (long long d : g.factors) {
    long long c = a % d;
    out += (c * (k % d)) % d * radix;
    a /= d;
    radix *= d;
  }
  return out;
}

inline long long element_order(const GroupSpec& g, long long a) {
  long long ord = 1;
  for (long long d : g.factors) {
    long long c = a % d;
    long long o = d / std::gcd(d, c == 0 ? d : c);
    ord = std::lcm(ord, o);
    a /= d;
  }
  return ord;
}

// ---------------------------------------------------------------------------
// ElementSet: n-bit membership vector over element indices.
// ---------------------------------------------------------------------------

class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(long long universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet full(long long universe) {
    ElementSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.mask_tail();
    return s;
  }

  long long universe() const { return universe_; }

  bool test(long long i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(long long i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(long long i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  long long count() const {
    long long c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool none() const {
    for (auto w : words_) if (w) return false;
    return true;
  }

  bool is_full() const { return count() == universe_; }

  /// True when every member of other is a member of this.
  bool contains(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (other.words_[i] & ~words_[i]) return false;
    return true;
  }

  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference: this \ o.
  ElementSet& operator-=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  ElementSet complement() const {
    ElementSet out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    out.mask_tail();
    return out;
  }

  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend bool operator!=(const ElementSet& a, const ElementSet& b) { return !(a == b); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        int bit = std::countr_zero(w);
        f(static_cast<long long>(wi * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<long long> to_indices() const {
    std::vector<long long> out;
    out.reserve(count());
    for_each([&](long long i) { out.push_back(i); });
    return out;
  }

  static ElementSet of(long long universe, std::initializer_list<long long> indices) {
    ElementSet s(universe);
    for (long long i : indices) s.set(i);
    return s;
  }
  static ElementSet of(long long universe, const std::vector<long long>& indices) {
    ElementSet s(universe);
    for (long long i : indices) s.set(i);
    return s;
  }

  /// Lexicographic comparison of the sorted index sequences.
  static bool lex_less(const ElementSet& a, const ElementSet& b) {
    auto ia = a.to_indices();
    auto ib = b.to_indices();
    return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
  }

  std::size_t word_count() const { return words_.size(); }
  const std::uint64_t* word_data() const { return words_.data(); }
  std::uint64_t* word_data() { return words_.data(); }

 private:
  void mask_tail() {
    int tail = static_cast<int>(universe_ & 63);
    if (tail && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  long long universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// {s + x : s in set}.
inline ElementSet translate_set(const GroupSpec& g, const ElementSet& s, long long x) {
  ElementSet out(g.order);
  s.for_each([&](long long i) { out.set(add_indices(g, i, x)); });
  return out;
}

inline ElementSet negate_set(const GroupSpec& g, const ElementSet& s) {
  ElementSet out(g.order);
  s.for_each([&](long long i) { out.set(negate_index(g, i)); });
  return out;
}

/// Sum of the elements of a set, as an index.
inline long long set_sum(const GroupSpec& g, const ElementSet& s) {
  long long acc = 0;
  s.for_each([&](long long i) { acc = add_indices(g, acc, i); });
  return acc;
}

// ---------------------------------------------------------------------------
// Structural queries.
// ---------------------------------------------------------------------------

/// L = {x : 2x = 0}; |L| = involutions.
inline ElementSet involution_subgroup(const GroupSpec& g) {
  ElementSet out(g.order);
  for (long long i = 0; i < g.order; ++i)
    if (add_indices(g, i, i) == 0) out.set(i);
  return out;
}

/// s(G): the unique involution when l = 2, zero otherwise.
inline long long group_sum(const GroupSpec& g) {
  long long acc = 0;
  for (long long i = 0; i < g.order; ++i) acc = add_indices(g, acc, i);
  return acc;
}

/// All x with 2x = g; size is 0 or exactly l.
inline ElementSet doubling_preimages(const GroupSpec& g, long long target) {
  ElementSet out(g.order);
  for (long long i = 0; i < g.order; ++i)
    if (add_indices(g, i, i) == target) out.set(i);
  return out;
}

struct HalfDecomposition {
  ElementSet involutions;  // L
  ElementSet half;         // K: smaller index of each {x, -x} pair
};

/// G = L u K u (-K), pairwise disjoint; |K| = (n - l) / 2.
inline HalfDecomposition half_decomposition(const GroupSpec& g) {
  HalfDecomposition out{ElementSet(g.order), ElementSet(g.order)};
  for (long long i = 0; i < g.order; ++i) {
    long long ni = negate_index(g, i);
    if (ni == i)
      out.involutions.set(i);
    else if (i < ni)
      out.half.set(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of all abelian groups of a given order.
// ---------------------------------------------------------------------------

namespace detail {

inline void partitions_desc(long long k, long long max_part, std::vector<long long>& cur,
                            std::vector<std::vector<long long>>& out) {
  if (k == 0) {
    out.push_back(cur);
    return;
  }
  for (long long p = std::min(k, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_desc(k - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<long long>> partitions(long long k) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur;
  partitions_desc(k, k, cur, out);
  return out;
}

inline std::map<long long, long long> prime_factorization(long long n) {
  std::map<long long, long long> out;
  for (long long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

}  // namespace detail

/// One GroupSpec per isomorphism class, ordered by rank then factor chain.
inline std::vector<GroupSpec> enumerate_groups_of_order(long long n) {
  if (n < 2) fail(errc::order_below_two, "order " + std::to_string(n));
  auto pf = detail::prime_factorization(n);
  std::vector<std::vector<std::vector<long long>>> per_prime;  // partitions of each exponent
  std::vector<long long> primes;
  for (auto& [p, k] : pf) {
    primes.push_back(p);
    per_prime.push_back(detail::partitions(k));
  }

  std::vector<std::vector<long long>> chains;
  std::vector<std::size_t> pick(per_prime.size(), 0);
  while (true) {
    // Align each prime's partition at the largest invariant factor.
    std::size_t rank = 0;
    for (std::size_t i = 0; i < per_prime.size(); ++i)
      rank = std::max(rank, per_prime[i][pick[i]].size());
    std::vector<long long> chain(rank, 1);
    for (std::size_t i = 0; i < per_prime.size(); ++i) {
      const auto& parts = per_prime[i][pick[i]];  // descending
      for (std::size_t j = 0; j < parts.size(); ++j) {
        long long pw = 1;
        for (long long e = 0; e < parts[j]; ++e) pw *= primes[i];
        chain[rank - 1 - j] *= pw;
      }
    }
    chains.push_back(std::move(chain));

    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == per_prime[pos].size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }

  std::sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<GroupSpec> out;
  out.reserve(chains.size());
  for (auto& c : chains) out.push_back(make_group(c));
  return out;
}

// ---------------------------------------------------------------------------
// Text form: "Z8", "Z2xZ4", "Z2^3", or a raw factor list "[2,4]".
// ---------------------------------------------------------------------------

inline GroupSpec parse_group(const std::string& text) {
  auto bad = [&](const std::string& why) {
    fail(errc::bad_group_literal, "'" + text + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) bad("empty literal");

  std::vector<long long> factors;
  if (s.front() == '[') {
    if (s.back() != ']') bad("unterminated factor list");
    std::string body = s.substr(1, s.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t end = body.find(',', pos);
      if (end == std::string::npos) end = body.size();
      std::string tok = body.substr(pos, end - pos);
      if (tok.empty()) bad("empty factor entry");
      try {
        factors.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        bad("not an integer: '" + tok + "'");
      }
      pos = end + 1;
    }
  } else {
    std::size_t pos = 0;
    while (pos < s.size()) {
      if (s[pos] != 'Z' && s[pos] != 'z') bad("expected 'Z' at position " + std::to_string(pos));
      ++pos;
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) bad("missing modulus after 'Z'");
      long long d = std::stoll(s.substr(start, pos - start));
      long long reps = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) bad("missing exponent after '^'");
        reps = std::stoll(s.substr(start, pos - start));
        if (reps < 1) bad("exponent must be positive");
      }
      for (long long i = 0; i < reps; ++i) factors.push_back(d);
      if (pos < s.size()) {
        if (s[pos] != 'x' && s[pos] != 'X') bad("expected 'x' between terms");
        ++pos;
        if (pos == s.size()) bad("trailing 'x'");
      }
    }
  }
  return make_group(factors);
}

/// Caret form for homocyclic groups, 'x'-joined terms otherwise.
inline std::string format_group(const GroupSpec& g) {
  bool homocyclic = std::all_of(g.factors.begin(), g.factors.end(),
                                [&](long long d) { return d == g.factors.front(); });
  if (homocyclic && g.rank > 1)
    return "Z" + std::to_string(g.factors.front()) + "^" + std::to_string(g.rank);
  std::string out;
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    if (i) out += "x";
    out += "Z" + std::to_string(g.factors[i]);
  }
  return out;
}

}  // namespace sumsetlab
