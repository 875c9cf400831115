#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psg/core.hpp"

namespace psg {

/// Sub-structure on the members of `m`, renumbered in increasing order.
/// Every defined product of members must land back in `m`.
struct Restriction {
  PartialSemigroup sub;
  std::vector<std::size_t> to_parent;  // sub index -> parent index
};

inline Restriction restrict_to(const PartialSemigroup& s, const SubsetMask& m) {
  if (m.empty()) throw PreconditionError("restrict_to: empty carrier");
  Restriction r;
  r.to_parent = m.members();
  std::vector<Elem> local(s.size(), kUndefined);
  for (std::size_t i = 0; i < r.to_parent.size(); ++i) local[r.to_parent[i]] = static_cast<Elem>(i);
  const std::size_t k = r.to_parent.size();
  std::vector<Elem> t(k * k, kUndefined);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    if (s.has_names()) names.push_back(s.name(r.to_parent[i]));
    for (std::size_t j = 0; j < k; ++j) {
      Elem v = s.product(r.to_parent[i], r.to_parent[j]);
      if (v == kUndefined) continue;
      if (local[static_cast<std::size_t>(v)] == kUndefined) throw PreconditionError("restrict_to: set is not closed under defined products");
      t[i * k + j] = local[static_cast<std::size_t>(v)];
    }
  }
  r.sub = PartialSemigroup(k, std::move(t), std::move(names));
  return r;
}

inline bool is_closed(const PartialSemigroup& s, const SubsetMask& m) { return set_product(s, m, m).is_subset_of(m); }

// e is a left identity: e idempotent and e*s = s for all s.
inline bool is_left_identity(const PartialSemigroup& s, std::size_t e) {
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s.product(e, x) != static_cast<Elem>(x)) return false;
  return true;
}
inline bool is_right_identity(const PartialSemigroup& s, std::size_t e) {
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s.product(x, e) != static_cast<Elem>(x)) return false;
  return true;
}

// Some y in L(x) with y*x = e.
inline std::optional<std::size_t> left_inverse(const PartialSemigroup& s, std::size_t x, std::size_t e) {
  for (std::size_t y = s.left(x).first(); y < s.size(); y = s.left(x).next(y + 1))
    if (s.product(y, x) == static_cast<Elem>(e)) return y;
  return std::nullopt;
}
// Some y in R(x) with x*y = e.
inline std::optional<std::size_t> right_inverse(const PartialSemigroup& s, std::size_t x, std::size_t e) {
  for (std::size_t y = s.right(x).first(); y < s.size(); y = s.right(x).next(y + 1))
    if (s.product(x, y) == static_cast<Elem>(e)) return y;
  return std::nullopt;
}
// Some y in R(x) n L(x) with x*y = y*x = e.
inline std::optional<std::size_t> two_sided_inverse(const PartialSemigroup& s, std::size_t x, std::size_t e) {
  SubsetMask c = s.right(x) & s.left(x);
  for (std::size_t y = c.first(); y < s.size(); y = c.next(y + 1))
    if (s.product(x, y) == static_cast<Elem>(e) && s.product(y, x) == static_cast<Elem>(e)) return y;
  return std::nullopt;
}

enum class PartialGroupKind { TwoSided, LeftIdentityLeftInverse, RightIdentityRightInverse, NotAPartialGroup };

inline const char* to_string(PartialGroupKind k) {
  switch (k) {
    case PartialGroupKind::TwoSided: return "two-sided";
    case PartialGroupKind::LeftIdentityLeftInverse: return "left-identity-left-inverse";
    case PartialGroupKind::RightIdentityRightInverse: return "right-identity-right-inverse";
    case PartialGroupKind::NotAPartialGroup: return "not-a-partial-group";
  }
  return "?";
}

struct PartialGroupCertificate {
  PartialGroupKind kind = PartialGroupKind::NotAPartialGroup;
  std::optional<std::size_t> identity;
  std::vector<std::optional<std::size_t>> inverse_map;
  std::optional<std::size_t> failure_witness;
};

// Left identity e such that every element has a left e-inverse.
inline std::optional<std::size_t> find_left_group_identity(const PartialSemigroup& s) {
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (!is_left_identity(s, e)) continue;
    bool all = true;
    for (std::size_t x = 0; x < s.size() && all; ++x) all = left_inverse(s, x, e).has_value();
    if (all) return e;
  }
  return std::nullopt;
}

/// Checks the partial-group axioms and returns a replayable certificate.
///
/// A two-sided certificate carries two-sided inverses; the weaker kinds are
/// only returned if the two-sided form fails, which the equivalence lemma rules
/// out.
inline PartialGroupCertificate partial_group_check(const PartialSemigroup& s) {
  PartialGroupCertificate c;
  const std::size_t n = s.size();
  for (std::size_t e = 0; e < n; ++e) {
    if (!is_left_identity(s, e) || !is_right_identity(s, e)) continue;
    std::vector<std::optional<std::size_t>> inv(n);
    bool all = true;
    for (std::size_t x = 0; x < n && all; ++x) all = (inv[x] = two_sided_inverse(s, x, e)).has_value();
    if (all) {
      c.kind = PartialGroupKind::TwoSided;
      c.identity = e;
      c.inverse_map = std::move(inv);
      return c;
    }
  }
  if (auto e = find_left_group_identity(s)) {
    c.kind = PartialGroupKind::LeftIdentityLeftInverse;
    c.identity = e;
    for (std::size_t x = 0; x < n; ++x) c.inverse_map.push_back(left_inverse(s, x, *e));
    return c;
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (!is_right_identity(s, e)) continue;
    std::vector<std::optional<std::size_t>> inv(n);
    bool all = true;
    for (std::size_t x = 0; x < n && all; ++x) all = (inv[x] = right_inverse(s, x, e)).has_value();
    if (all) {
      c.kind = PartialGroupKind::RightIdentityRightInverse;
      c.identity = e;
      c.inverse_map = std::move(inv);
      return c;
    }
  }
  // Failure witness: the first element without a left inverse for the first left identity.
  for (std::size_t e = 0; e < n; ++e) {
    if (!is_left_identity(s, e)) continue;
    c.identity = e;
    for (std::size_t x = 0; x < n; ++x)
      if (!left_inverse(s, x, e)) {
        c.failure_witness = x;
        break;
      }
    break;
  }
  return c;
}

// Replays a certificate against the table.
inline bool replay_certificate(const PartialSemigroup& s, const PartialGroupCertificate& c) {
  if (c.kind == PartialGroupKind::NotAPartialGroup) return !find_left_group_identity(s).has_value();
  if (!c.identity || c.inverse_map.size() != s.size()) return false;
  const std::size_t e = *c.identity;
  const Elem ee = static_cast<Elem>(e);
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (!c.inverse_map[x]) return false;
    const std::size_t y = *c.inverse_map[x];
    switch (c.kind) {
      case PartialGroupKind::TwoSided:
        if (s.product(e, x) != static_cast<Elem>(x) || s.product(x, e) != static_cast<Elem>(x)) return false;
        if (s.product(x, y) != ee || s.product(y, x) != ee) return false;
        break;
      case PartialGroupKind::LeftIdentityLeftInverse:
        if (s.product(e, x) != static_cast<Elem>(x) || s.product(y, x) != ee) return false;
        break;
      case PartialGroupKind::RightIdentityRightInverse:
        if (s.product(x, e) != static_cast<Elem>(x) || s.product(x, y) != ee) return false;
        break;
      default: return false;
    }
  }
  return s.product(e, e) == ee;
}

inline bool is_partial_group(const PartialSemigroup& s) { return find_left_group_identity(s).has_value(); }

struct Lemma29Clauses {
  bool a = false;  // partial group: left identity with left inverses
  bool b = false;  // two-sided identity with two-sided inverses in R(x) n L(x)
  bool c = false;  // a left identity exists, and every left identity admits left inverses
  bool agree() const { return a == b && b == c; }
};

inline Lemma29Clauses lemma_2_9_clauses(const PartialSemigroup& s) {
  Lemma29Clauses r;
  const std::size_t n = s.size();
  r.a = find_left_group_identity(s).has_value();
  for (std::size_t e = 0; e < n && !r.b; ++e) {
    if (!is_left_identity(s, e) || !is_right_identity(s, e)) continue;
    bool all = true;
    for (std::size_t x = 0; x < n && all; ++x) all = two_sided_inverse(s, x, e).has_value();
    r.b = all;
  }
  bool some_left_identity = false;
  bool every_one_works = true;
  for (std::size_t e = 0; e < n; ++e) {
    if (!is_left_identity(s, e)) continue;
    some_left_identity = true;
    for (std::size_t x = 0; x < n && every_one_works; ++x) every_one_works = left_inverse(s, x, e).has_value();
  }
  r.c = some_left_identity && every_one_works;
  return r;
}

inline bool lemma_2_9_equivalence(const PartialSemigroup& s) { return lemma_2_9_clauses(s).agree(); }

// The right-handed clauses are the left-handed clauses of the transposed
// table; they must agree with each other and with partial-group status.
inline bool lemma_2_10_equivalence(const PartialSemigroup& s) {
  Lemma29Clauses t = lemma_2_9_clauses(s.transposed());
  return t.agree() && t.a == is_partial_group(s);
}

struct Decomposition140 {
  std::size_t e = 0;
  SubsetMask G;  // S*e
  SubsetMask Y;  // E(S)
  std::vector<std::pair<std::size_t, std::size_t>> phi_domain;  // (g, y) with g*y defined
  std::vector<std::size_t> phi;                                 // phi[k] = g*y for phi_domain[k]
  bool y_right_zero = false;
  bool g_partial_group = false;
  bool phi_injective = false;
  bool phi_surjective = false;
  bool phi_homomorphism = false;
  bool verified() const { return y_right_zero && g_partial_group && phi_injective && phi_surjective && phi_homomorphism; }
};

struct Decomposition140Result {
  bool hypothesis_ok = false;
  std::string failure_reason;
  std::optional<std::size_t> failure_element;
  Decomposition140 d;
};

// Left identity e with a right e-inverse for every element, or the element that blocks it.
inline std::pair<std::optional<std::size_t>, std::optional<std::size_t>> find_1_40_identity(const PartialSemigroup& s) {
  std::optional<std::size_t> blocker;
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (!is_left_identity(s, e)) continue;
    std::optional<std::size_t> bad;
    for (std::size_t x = 0; x < s.size() && !bad; ++x)
      if (!right_inverse(s, x, e)) bad = x;
    if (!bad) return {e, std::nullopt};
    if (!blocker) blocker = bad;
  }
  return {std::nullopt, blocker};
}

/// Splits S as G x Y with G = S*e a partial group and Y = E(S) partial right
/// zero, when S has a left identity with right inverses.
///
/// Throws InternalError if the hypothesis holds but the checks fail.
inline Decomposition140Result decompose_1_40(const PartialSemigroup& s) {
  Decomposition140Result res;
  auto [e, blocker] = find_1_40_identity(s);
  if (!e) {
    res.failure_element = blocker;
    res.failure_reason = blocker ? "element " + s.name(*blocker) + " has no right inverse for any left identity" : "no left identity";
    return res;
  }
  res.hypothesis_ok = true;
  Decomposition140& d = res.d;
  d.e = *e;
  d.G = set_product(s, s.full_mask(), singleton(s, *e));
  d.Y = idempotents(s);

  d.y_right_zero = true;
  d.Y.for_each([&](std::size_t x) {
    (s.right(x) & d.Y).for_each([&](std::size_t y) {
      if (s.product(x, y) != static_cast<Elem>(y)) d.y_right_zero = false;
    });
  });

  d.g_partial_group = false;
  if (is_closed(s, d.G)) {
    Restriction r = restrict_to(s, d.G);
    d.g_partial_group = is_partial_group(r.sub);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> phi_of;
  SubsetMask image(s.size());
  d.phi_injective = true;
  d.G.for_each([&](std::size_t g) {
    d.Y.for_each([&](std::size_t y) {
      Elem v = s.product(g, y);
      if (v == kUndefined) return;
      if (image.test(static_cast<std::size_t>(v))) d.phi_injective = false;
      image.set(static_cast<std::size_t>(v));
      d.phi_domain.emplace_back(g, y);
      d.phi.push_back(static_cast<std::size_t>(v));
      phi_of[{g, y}] = static_cast<std::size_t>(v);
    });
  });
  d.phi_surjective = image == s.full_mask();

  d.phi_homomorphism = true;
  for (std::size_t i = 0; i < d.phi_domain.size(); ++i)
    for (std::size_t j = 0; j < d.phi_domain.size(); ++j) {
      auto [g1, y1] = d.phi_domain[i];
      auto [g2, y2] = d.phi_domain[j];
      Elem lhs = s.product(d.phi[i], d.phi[j]);
      Elem gg = s.product(g1, g2);
      Elem yy = s.product(y1, y2);
      if (lhs == kUndefined || gg == kUndefined || yy == kUndefined) continue;
      auto it = phi_of.find({static_cast<std::size_t>(gg), static_cast<std::size_t>(yy)});
      if (it == phi_of.end()) continue;
      if (static_cast<std::size_t>(lhs) != it->second) d.phi_homomorphism = false;
    }

  if (!d.verified()) throw InternalError("decompose_1_40: verification failed under a satisfied hypothesis");
  return res;
}

inline bool is_minimal_left_ideal(const PartialSemigroup& s, const SubsetMask& l) {
  auto mins = minimal_left_ideals(s);
  return std::find(mins.begin(), mins.end(), l) != mins.end();
}

struct CornerGroupResult {
  SubsetMask corner;  // e*L*e
  SubsetMask e_l;     // e*L
  bool corner_is_partial_group = false;
  bool e_l_equals_corner = false;
};

// e is a left identity on `m` with a left e-inverse inside `m` for each member.
inline bool is_partial_group_on(const PartialSemigroup& s, const SubsetMask& m, std::size_t e) {
  if (!m.test(e) || !is_closed(s, m)) return false;
  bool ok = true;
  m.for_each([&](std::size_t x) {
    if (s.product(e, x) != static_cast<Elem>(x)) ok = false;
    bool inv = false;
    (s.left(x) & m).for_each([&](std::size_t y) {
      if (s.product(y, x) == static_cast<Elem>(e)) inv = true;
    });
    if (!inv) ok = false;
  });
  return ok;
}

inline CornerGroupResult corner_group(const PartialSemigroup& s, const SubsetMask& l, std::size_t e) {
  if (l.width() != s.size() || l.empty() || !is_minimal_left_ideal(s, l)) throw PreconditionError("corner_group: L is not a minimal left ideal");
  if (!l.test(e) || s.product(e, e) != static_cast<Elem>(e)) throw PreconditionError("corner_group: e must be an idempotent in L");
  CornerGroupResult r;
  const SubsetMask se = singleton(s, e);
  r.e_l = set_product(s, se, l);
  r.corner = set_product(s, r.e_l, se);
  r.corner_is_partial_group = is_partial_group_on(s, r.corner, e);
  r.e_l_equals_corner = r.e_l == r.corner;
  return r;
}

struct FactorizationResult {
  SubsetMask X;  // E(S) n L
  SubsetMask G;  // e*L*e
  bool x_left_zero = false;
  std::size_t elements = 0;
  std::size_t uniquely_factored = 0;
  bool ok() const { return x_left_zero && uniquely_factored == elements; }
};

// Every s in L is x*g for exactly one pair (x, g) in X x G.
inline FactorizationResult factor_through_idempotents(const PartialSemigroup& s, const SubsetMask& l, std::size_t e) {
  CornerGroupResult cg = corner_group(s, l, e);
  FactorizationResult r;
  r.X = idempotents(s) & l;
  r.G = cg.corner;
  r.x_left_zero = true;
  r.X.for_each([&](std::size_t x) {
    (s.right(x) & r.X).for_each([&](std::size_t y) {
      if (s.product(x, y) != static_cast<Elem>(x)) r.x_left_zero = false;
    });
  });
  std::vector<std::size_t> hits(s.size(), 0);
  r.X.for_each([&](std::size_t x) {
    (s.right(x) & r.G).for_each([&](std::size_t g) { ++hits[static_cast<std::size_t>(s.product(x, g))]; });
  });
  l.for_each([&](std::size_t u) {
    ++r.elements;
    if (hits[u] == 1) ++r.uniquely_factored;
  });
  return r;
}

// Elements a with s*a defined for every s in L.
inline SubsetMask right_of_all(const PartialSemigroup& s, const SubsetMask& l) { return right_set_family(s, l); }

struct TranslateResult {
  SubsetMask translate;  // L*a
  bool minimal = false;
};

inline TranslateResult translate_minimal_left_ideal(const PartialSemigroup& s, const SubsetMask& l, std::size_t a) {
  if (l.width() != s.size() || l.empty() || !is_minimal_left_ideal(s, l)) throw PreconditionError("translate_minimal_left_ideal: L is not a minimal left ideal");
  if (a >= s.size() || !right_of_all(s, l).test(a)) throw PreconditionError("translate_minimal_left_ideal: a is not composable with every member of L");
  TranslateResult r;
  r.translate = set_product(s, l, singleton(s, a));
  r.minimal = is_minimal_left_ideal(s, r.translate);
  return r;
}

struct Theorem146Report {
  std::size_t forward_checked = 0;
  std::size_t forward_failures = 0;
  std::size_t converse_checked = 0;
  std::size_t converse_failures = 0;
  bool ok() const { return forward_failures == 0 && converse_failures == 0; }
};

/// Both directions over all minimal left ideals L and T: every admissible
/// translate L*a is minimal, and every minimal T meeting R(L) is such a
/// translate with a taken from R(L) n T.
inline Theorem146Report theorem_1_46_check(const PartialSemigroup& s) {
  Theorem146Report rep;
  auto mins = minimal_left_ideals(s);
  for (const auto& l : mins) {
    const SubsetMask ra = right_of_all(s, l);
    ra.for_each([&](std::size_t a) {
      ++rep.forward_checked;
      if (!translate_minimal_left_ideal(s, l, a).minimal) ++rep.forward_failures;
    });
    for (const auto& t : mins) {
      const SubsetMask cand = ra & t;
      if (cand.empty()) continue;
      ++rep.converse_checked;
      bool found = false;
      cand.for_each([&](std::size_t a) {
        if (set_product(s, l, singleton(s, a)) == t) found = true;
      });
      if (!found) ++rep.converse_failures;
    }
  }
  return rep;
}

}  // namespace psg
