#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "psg/error.hpp"
#include "psg/partial_semigroup.hpp"
#include "psg/subset_mask.hpp"

namespace psg {

/// Size limits for exhaustive work.
struct Limits {
  // Largest carrier on which all-subsets sweeps are attempted.
  std::size_t cap = 16;
  // Largest enveloping semigroup the closure will build.
  std::size_t enveloping_cap = 20000;

  // Defaults, with the subset cap overridden by PSG_CAP when it parses.
  static Limits from_env() {
    Limits l;
    if (const char* v = std::getenv("PSG_CAP")) {
      char* end = nullptr;
      unsigned long c = std::strtoul(v, &end, 10);
      if (end != v && *end == '\0' && c > 0) l.cap = c;
    }
    return l;
  }
};

inline void require_cap(std::size_t n, const Limits& lim, const char* what) {
  if (n > lim.cap) throw CapExceeded(std::string(what) + ": size " + std::to_string(n) + " exceeds cap " + std::to_string(lim.cap));
}

inline SubsetMask right_set(const PartialSemigroup& s, std::size_t x) { return s.right(x); }
inline SubsetMask left_set(const PartialSemigroup& s, std::size_t x) { return s.left(x); }

// R(H): elements composable on the right of every member of H.
inline SubsetMask right_set_family(const PartialSemigroup& s, const SubsetMask& h) {
  if (h.width() != s.size()) throw StructuralError("right_set_family: mask width mismatch");
  if (h.empty()) throw PreconditionError("right_set_family: H must be nonempty");
  SubsetMask r = s.full_mask();
  h.for_each([&](std::size_t x) { r &= s.right(x); });
  return r;
}

inline SubsetMask left_set_family(const PartialSemigroup& s, const SubsetMask& h) {
  if (h.width() != s.size()) throw StructuralError("left_set_family: mask width mismatch");
  if (h.empty()) throw PreconditionError("left_set_family: H must be nonempty");
  SubsetMask r = s.full_mask();
  h.for_each([&](std::size_t x) { r &= s.left(x); });
  return r;
}

// R(H) is antitone in H, so every R(H) is nonempty iff R(S) is.
inline bool is_right_adequate(const PartialSemigroup& s) { return right_set_family(s, s.full_mask()).any(); }
inline bool is_left_adequate(const PartialSemigroup& s) { return left_set_family(s, s.full_mask()).any(); }
inline bool is_adequate(const PartialSemigroup& s) { return is_right_adequate(s) && is_left_adequate(s); }

// Finite model of delta_R S: the closure is the identity, leaving R(S).
inline SubsetMask delta_r_finite(const PartialSemigroup& s) { return right_set_family(s, s.full_mask()); }

// s^{-1}A = { t in R(s) : s*t in A }.
inline SubsetMask quotient_set(const PartialSemigroup& s, std::size_t x, const SubsetMask& a) {
  SubsetMask out(s.size());
  s.right(x).for_each([&](std::size_t t) {
    if (a.test(static_cast<std::size_t>(s.product(x, t)))) out.set(t);
  });
  return out;
}

// Union of t^{-1}A over t in H.
inline SubsetMask quotient_union(const PartialSemigroup& s, const SubsetMask& h, const SubsetMask& a) {
  SubsetMask out(s.size());
  h.for_each([&](std::size_t t) { out |= quotient_set(s, t, a); });
  return out;
}

// Product of principal ultrafilters: plain table lookup.
inline std::optional<std::size_t> principal_product(const PartialSemigroup& s, std::size_t a, std::size_t b) {
  Elem v = s.product(a, b);
  if (v == kUndefined) return std::nullopt;
  return static_cast<std::size_t>(v);
}

// A*B over defined compositions only.
inline SubsetMask set_product(const PartialSemigroup& s, const SubsetMask& a, const SubsetMask& b) {
  SubsetMask out(s.size());
  a.for_each([&](std::size_t x) {
    (s.right(x) & b).for_each([&](std::size_t y) { out.set(static_cast<std::size_t>(s.product(x, y))); });
  });
  return out;
}

inline SubsetMask singleton(const PartialSemigroup& s, std::size_t x) {
  SubsetMask m(s.size());
  m.set(x);
  return m;
}

inline SubsetMask idempotents(const PartialSemigroup& s) {
  SubsetMask e(s.size());
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s.product(x, x) == static_cast<Elem>(x)) e.set(x);
  return e;
}

inline bool is_left_ideal(const PartialSemigroup& s, const SubsetMask& i) {
  if (i.empty()) throw PreconditionError("ideal predicates require a nonempty set");
  return set_product(s, s.full_mask(), i).is_subset_of(i);
}
inline bool is_right_ideal(const PartialSemigroup& s, const SubsetMask& i) {
  if (i.empty()) throw PreconditionError("ideal predicates require a nonempty set");
  return set_product(s, i, s.full_mask()).is_subset_of(i);
}
inline bool is_ideal(const PartialSemigroup& s, const SubsetMask& i) { return is_left_ideal(s, i) && is_right_ideal(s, i); }

struct PrincipalIdeals {
  SubsetMask left;       // L(x)*x
  SubsetMask right;      // x*R(x)
  SubsetMask two_sided;  // S*x*S closed under defined products
};

// Closes `seed` under left multiplication, right multiplication, or both.
inline SubsetMask close_under_products(const PartialSemigroup& s, SubsetMask seed, bool left, bool right) {
  const SubsetMask all = s.full_mask();
  while (true) {
    SubsetMask next = seed;
    if (left) next |= set_product(s, all, seed);
    if (right) next |= set_product(s, seed, all);
    if (next == seed) return seed;
    seed = std::move(next);
  }
}

inline PrincipalIdeals principal_ideals(const PartialSemigroup& s, std::size_t x) {
  const SubsetMask sx = singleton(s, x);
  const SubsetMask all = s.full_mask();
  PrincipalIdeals p;
  p.left = set_product(s, s.left(x), sx);
  p.right = set_product(s, sx, s.right(x));
  p.two_sided = close_under_products(s, set_product(s, set_product(s, all, sx), all), true, true);
  return p;
}

// Smallest left ideal containing x: {x} together with L(x)*x.
inline SubsetMask left_ideal_generated(const PartialSemigroup& s, std::size_t x) {
  SubsetMask g = set_product(s, s.left(x), singleton(s, x));
  g.set(x);
  return g;
}

// Smallest two-sided ideal containing x.
inline SubsetMask ideal_generated(const PartialSemigroup& s, std::size_t x) {
  return close_under_products(s, singleton(s, x), true, true);
}

/// All minimal left ideals, sorted by mask value.
///
/// Every left ideal contains the left ideal generated by any of its members, so
/// a minimal one is generated by each of its elements, and conversely.
inline std::vector<SubsetMask> minimal_left_ideals(const PartialSemigroup& s) {
  const std::size_t n = s.size();
  std::vector<SubsetMask> gen;
  gen.reserve(n);
  for (std::size_t x = 0; x < n; ++x) gen.push_back(left_ideal_generated(s, x));
  std::vector<SubsetMask> out;
  for (std::size_t x = 0; x < n; ++x) {
    bool minimal = true;
    gen[x].for_each([&](std::size_t y) {
      if (gen[y] != gen[x]) minimal = false;
    });
    if (minimal && std::find(out.begin(), out.end(), gen[x]) == out.end()) out.push_back(gen[x]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline SubsetMask union_of_minimal_left_ideals(const PartialSemigroup& s) {
  SubsetMask u(s.size());
  for (const auto& l : minimal_left_ideals(s)) u |= l;
  return u;
}

/// The smallest two-sided ideal K(S), when one exists.
///
/// It is the intersection of the principal ideals generated by single
/// elements; it exists iff that intersection is nonempty. In a partial
/// semigroup this can be absent even when minimal left ideals exist, so it is
/// computed directly rather than as their union.
inline std::optional<SubsetMask> smallest_ideal(const PartialSemigroup& s) {
  SubsetMask k = s.full_mask();
  for (std::size_t x = 0; x < s.size() && k.any(); ++x) k &= ideal_generated(s, x);
  if (k.empty()) return std::nullopt;
  return k;
}

// E(S) intersected with K(S); empty when K(S) is absent.
inline SubsetMask minimal_idempotents(const PartialSemigroup& s) {
  auto k = smallest_ideal(s);
  if (!k) return s.empty_mask();
  return idempotents(s) & *k;
}

enum class IdealSide { Left, Right, TwoSided };

// Every nonempty ideal of the given side, by exhaustive sweep.
inline std::vector<SubsetMask> enumerate_ideals(const PartialSemigroup& s, IdealSide side, const Limits& lim = {}) {
  require_cap(s.size(), lim, "enumerate_ideals");
  std::vector<SubsetMask> out;
  for_each_subset(s.size(), lim.cap, [&](const SubsetMask& m) {
    if (m.empty()) return;
    bool ok = side == IdealSide::Left ? is_left_ideal(s, m) : side == IdealSide::Right ? is_right_ideal(s, m) : is_ideal(s, m);
    if (ok) out.push_back(m);
  });
  return out;
}

}  // namespace psg
