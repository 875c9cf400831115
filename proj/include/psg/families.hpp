#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "psg/core.hpp"
#include "psg/dynamics.hpp"

namespace psg {

namespace detail {

// "{1,3}" for the index set whose bit k stands for k+1.
inline std::string index_set_name(std::uint64_t bits) {
  std::string s = "{";
  bool first = true;
  for (int k = 0; k < 64; ++k)
    if ((bits >> k) & 1U) {
      if (!first) s += ',';
      s += std::to_string(k + 1);
      first = false;
    }
  return s + "}";
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

}  // namespace detail

/// Nonempty subsets of {1..n} under union of disjoint sets. Element i is the
/// subset with bit pattern i+1.
inline PartialSemigroup pf_disjoint_union(std::size_t n) {
  detail::require(n >= 1 && n <= 10, "pf-disjoint-union: n must be in 1..10");
  const std::size_t m = (std::size_t{1} << n) - 1;
  std::vector<Elem> t(m * m, kUndefined);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(detail::index_set_name(i + 1));
    for (std::size_t j = 0; j < m; ++j)
      if (((i + 1) & (j + 1)) == 0) t[i * m + j] = static_cast<Elem>(((i + 1) | (j + 1)) - 1);
  }
  return PartialSemigroup(m, std::move(t), std::move(names));
}

/// Formal finite products x_F, F a nonempty subset of {1..cap}; x_F * x_G is
/// x_{F u G}, defined iff max F < min G. Element i is F with bit pattern i+1.
inline PartialSemigroup fp_sequence(std::size_t cap) {
  detail::require(cap >= 1 && cap <= 10, "fp-sequence: cap must be in 1..10");
  const std::size_t m = (std::size_t{1} << cap) - 1;
  std::vector<Elem> t(m * m, kUndefined);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t f = i + 1;
    std::string nm = "x";
    for (std::size_t k = 0; k < cap; ++k)
      if ((f >> k) & 1U) nm += std::to_string(k + 1);
    names.push_back(nm);
    const int max_f = 63 - std::countl_zero(f);
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t g = j + 1;
      if (max_f < std::countr_zero(g)) t[i * m + j] = static_cast<Elem>((f | g) - 1);
    }
  }
  return PartialSemigroup(m, std::move(t), std::move(names));
}

/// Binary words of length 1..k in order of length then lexicographic order.
inline std::vector<std::string> binary_words(std::size_t k) {
  std::vector<std::string> w;
  for (std::size_t len = 1; len <= k; ++len)
    for (std::size_t b = 0; b < (std::size_t{1} << len); ++b) {
      std::string s(len, '0');
      for (std::size_t p = 0; p < len; ++p)
        if ((b >> (len - 1 - p)) & 1U) s[p] = '1';
      w.push_back(s);
    }
  return w;
}

// Concatenation of words over {0,1}, defined iff the result has length at most k.
inline PartialSemigroup bounded_words(std::size_t k) {
  detail::require(k >= 1 && k <= 5, "bounded-words: k must be in 1..5");
  const auto words = binary_words(k);
  std::map<std::string, Elem> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<Elem>(i);
  const std::size_t m = words.size();
  std::vector<Elem> t(m * m, kUndefined);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (words[i].size() + words[j].size() <= k) t[i * m + j] = index.at(words[i] + words[j]);
  return PartialSemigroup(m, std::move(t), words);
}

// {1..k-1} under addition, defined iff the sum is at most k-1. Element i is i+1.
inline PartialSemigroup bounded_addition(std::size_t k) {
  detail::require(k >= 2, "bounded addition needs k >= 2");
  const std::size_t m = k - 1;
  std::vector<Elem> t(m * m, kUndefined);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(std::to_string(i + 1));
    for (std::size_t j = 0; j < m; ++j)
      if (i + j + 2 <= m) t[i * m + j] = static_cast<Elem>(i + j + 1);
  }
  return PartialSemigroup(m, std::move(t), std::move(names));
}

/// Words of length 1..k acted on by j -> sigma^j (delete the first j letters),
/// defined on words longer than j.
inline PartialDynSystem bounded_words_shift_system(std::size_t k) {
  detail::require(k >= 2 && k <= 6, "bounded-words-shift-system: k must be in 2..6");
  const auto words = binary_words(k);
  std::map<std::string, Point> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<Point>(i);
  PartialSemigroup s = bounded_addition(k);
  std::vector<PartialMap> maps;
  for (std::size_t j = 1; j < k; ++j) {
    PartialMap m(words.size());
    for (std::size_t x = 0; x < words.size(); ++x)
      if (words[x].size() > j) m.set(x, index.at(words[x].substr(j)));
    maps.push_back(std::move(m));
  }
  return PartialDynSystem(std::move(s), words.size(), std::move(maps), words);
}

inline PartialSemigroup right_zero(std::size_t n) {
  detail::require(n >= 1, "right-zero: n must be positive");
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = static_cast<Elem>(y);
  return PartialSemigroup(n, std::move(t));
}

inline PartialSemigroup cyclic_group(std::size_t n) {
  detail::require(n >= 1, "cyclic-group: n must be positive");
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = static_cast<Elem>((x + y) % n);
  return PartialSemigroup(n, std::move(t));
}

// Null semigroup: every product is 0.
inline PartialSemigroup zero_semigroup(std::size_t n) {
  detail::require(n >= 1, "zero-semigroup: n must be positive");
  return PartialSemigroup(n, std::vector<Elem>(n * n, 0));
}

/// Z_g x (right zero on r): (a, y)(b, z) = (a+b, z). Element a*r + y.
inline PartialSemigroup left_group(std::size_t g, std::size_t r) {
  detail::require(g >= 1 && r >= 1, "left-group: orders must be positive");
  const std::size_t n = g * r;
  std::vector<Elem> t(n * n);
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x) {
    names.push_back("(" + std::to_string(x / r) + "," + std::string(1, static_cast<char>('a' + x % r)) + ")");
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = static_cast<Elem>(((x / r + y / r) % g) * r + y % r);
  }
  return PartialSemigroup(n, std::move(t), std::move(names));
}

/// P_f({1..n}) acting on Z_m by T_F(x) = x + sum of f(i) over i in F.
inline PartialDynSystem pf_translation_system(std::size_t n, std::size_t m, const std::vector<std::int64_t>& f) {
  detail::require(m >= 1, "pf-translation-system: modulus must be positive");
  detail::require(f.size() == n, "pf-translation-system: need one shift per index");
  PartialSemigroup s = pf_disjoint_union(n);
  std::vector<PartialMap> maps;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::int64_t shift = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (((i + 1) >> k) & 1U) shift += f[k];
    const std::int64_t mm = static_cast<std::int64_t>(m);
    shift = ((shift % mm) + mm) % mm;
    PartialMap map(m);
    for (std::size_t x = 0; x < m; ++x) map.set(x, static_cast<Point>((static_cast<std::int64_t>(x) + shift) % mm));
    maps.push_back(std::move(map));
  }
  return PartialDynSystem(std::move(s), m, std::move(maps));
}

/// Deterministic draws from mt19937_64. The standard distributions are not
/// portable across library implementations, so bounded integers and unit
/// doubles are derived here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(gen_() % bound); }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

namespace detail {

// Closure of transformations of {0..k-1}; x*y applies x then y. Empty if more than `limit` elements.
inline std::vector<std::vector<int>> transformation_closure(const std::vector<std::vector<int>>& gens, std::size_t limit) {
  std::vector<std::vector<int>> elems;
  std::map<std::vector<int>, std::size_t> seen;
  for (const auto& g : gens)
    if (!seen.count(g)) {
      seen[g] = elems.size();
      elems.push_back(g);
    }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      std::vector<int> c(g.size());
      for (std::size_t p = 0; p < g.size(); ++p) c[p] = g[static_cast<std::size_t>(elems[i][p])];
      if (seen.count(c)) continue;
      if (elems.size() >= limit) return {};
      seen[c] = elems.size();
      elems.push_back(c);
    }
  return elems;
}

// Undefines one of the products involved in each associativity violation until none remain.
inline void repair(std::size_t n, std::vector<Elem>& t, Rng& rng) {
  while (true) {
    PartialSemigroup s(n, t);
    auto rep = validate(s, 1);
    if (rep.ok) return;
    const auto [x, y, z, kind] = rep.violations.front();
    std::vector<std::pair<std::size_t, std::size_t>> cands;
    const Elem xy = t[x * n + y];
    const Elem yz = t[y * n + z];
    if (xy != kUndefined) {
      cands.emplace_back(x, y);
      if (t[static_cast<std::size_t>(xy) * n + z] != kUndefined) cands.emplace_back(static_cast<std::size_t>(xy), z);
    }
    if (yz != kUndefined) {
      cands.emplace_back(y, z);
      if (t[x * n + static_cast<std::size_t>(yz)] != kUndefined) cands.emplace_back(x, static_cast<std::size_t>(yz));
    }
    auto [a, b] = cands[rng.below(cands.size())];
    t[a * n + b] = kUndefined;
  }
}

}  // namespace detail

/// Random valid partial semigroup on n elements.
///
/// Half the draws start from a random total transformation semigroup of order
/// n (when one turns up within a few tries), the rest from a uniform random
/// table. Each entry is then kept with probability `density`, and associativity
/// violations are removed by undefining one product per violation.
inline PartialSemigroup random_partial(std::size_t n, double density, std::uint64_t seed) {
  detail::require(n >= 1 && n <= 12, "random-partial: n must be in 1..12");
  detail::require(density >= 0.0 && density <= 1.0, "random-partial: density must be in [0,1]");
  Rng rng(seed);
  std::vector<Elem> t;
  if (rng.below(2) == 0) {
    for (int attempt = 0; attempt < 200 && t.empty(); ++attempt) {
      const std::size_t k = 2 + rng.below(2);
      const std::size_t ng = 1 + rng.below(2);
      std::vector<std::vector<int>> gens(ng, std::vector<int>(k));
      for (auto& g : gens)
        for (auto& v : g) v = static_cast<int>(rng.below(k));
      auto elems = detail::transformation_closure(gens, n);
      if (elems.size() != n) continue;
      std::map<std::vector<int>, Elem> idx;
      for (std::size_t i = 0; i < n; ++i) idx[elems[i]] = static_cast<Elem>(i);
      t.assign(n * n, kUndefined);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          std::vector<int> c(k);
          for (std::size_t p = 0; p < k; ++p) c[p] = elems[y][static_cast<std::size_t>(elems[x][p])];
          t[x * n + y] = idx.at(c);
        }
    }
  }
  if (t.empty()) {
    t.assign(n * n, kUndefined);
    for (auto& v : t) v = static_cast<Elem>(rng.below(n));
  }
  for (auto& v : t)
    if (rng.unit() >= density) v = kUndefined;
  detail::repair(n, t, rng);
  return PartialSemigroup(n, std::move(t));
}

struct NamedSemigroup {
  std::string name;
  PartialSemigroup S;
};

struct NamedSystem {
  std::string name;
  PartialDynSystem D;
};

/// Fixed small members of the named families, all of order at most 6.
inline std::vector<NamedSemigroup> named_instances() {
  std::vector<NamedSemigroup> v;
  for (std::size_t n = 1; n <= 3; ++n) v.push_back({"right-zero(" + std::to_string(n) + ")", right_zero(n)});
  for (std::size_t n = 1; n <= 6; ++n) v.push_back({"cyclic-group(" + std::to_string(n) + ")", cyclic_group(n)});
  for (std::size_t n = 2; n <= 4; ++n) v.push_back({"zero-semigroup(" + std::to_string(n) + ")", zero_semigroup(n)});
  v.push_back({"pf-disjoint-union(1)", pf_disjoint_union(1)});
  v.push_back({"pf-disjoint-union(2)", pf_disjoint_union(2)});
  v.push_back({"fp-sequence(2)", fp_sequence(2)});
  v.push_back({"bounded-words(1)", bounded_words(1)});
  v.push_back({"bounded-words(2)", bounded_words(2)});
  v.push_back({"bounded-addition(4)", bounded_addition(4)});
  const std::pair<std::size_t, std::size_t> lg[] = {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};
  for (auto [g, r] : lg) v.push_back({"left-group(" + std::to_string(g) + "," + std::to_string(r) + ")", left_group(g, r)});
  return v;
}

/// Named instances followed by `budget` random ones of order 1..6, all
/// determined by `seed`.
inline std::vector<NamedSemigroup> corpus(std::uint64_t seed, std::size_t budget) {
  std::vector<NamedSemigroup> v = named_instances();
  Rng rng(seed);
  for (std::size_t i = 0; i < budget; ++i) {
    const std::size_t n = 1 + rng.below(6);
    const double density = 0.2 + 0.8 * rng.unit();
    const std::uint64_t s = rng.next();
    v.push_back({"random-partial(" + std::to_string(n) + ",#" + std::to_string(i) + ")", random_partial(n, density, s)});
  }
  return v;
}

/// The three reference dynamical systems.
inline std::vector<NamedSystem> dynamical_fixtures() {
  return {
      {"bounded-words-shift-system(3)", bounded_words_shift_system(3)},
      {"pf-translation-system(2,3,[1,1])", pf_translation_system(2, 3, {1, 1})},
      {"translation(right-zero(3))", translation_system(right_zero(3))},
  };
}

}  // namespace psg
