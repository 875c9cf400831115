#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psg/core.hpp"
#include "psg/largeness.hpp"

namespace psg {

using Point = std::int32_t;
inline constexpr Point kNoPoint = -1;

/// Partial self-map of {0..n-1}. image[x] is kNoPoint off the domain.
class PartialMap {
 public:
  PartialMap() = default;
  explicit PartialMap(std::size_t n) : image_(n, kNoPoint) {}
  explicit PartialMap(std::vector<Point> image) : image_(std::move(image)) {
    for (auto v : image_)
      if (v != kNoPoint && (v < 0 || static_cast<std::size_t>(v) >= image_.size())) throw StructuralError("partial map value out of range");
  }

  static PartialMap identity(std::size_t n) {
    PartialMap m(n);
    for (std::size_t i = 0; i < n; ++i) m.image_[i] = static_cast<Point>(i);
    return m;
  }

  std::size_t carrier_size() const { return image_.size(); }
  bool defined(std::size_t x) const { return image_[x] != kNoPoint; }
  Point operator()(std::size_t x) const { return image_[x]; }
  void set(std::size_t x, Point y) {
    if (y != kNoPoint && (y < 0 || static_cast<std::size_t>(y) >= image_.size())) throw StructuralError("partial map value out of range");
    image_[x] = y;
  }
  const std::vector<Point>& image() const { return image_; }

  SubsetMask domain() const {
    SubsetMask d(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != kNoPoint) d.set(i);
    return d;
  }

  friend bool operator==(const PartialMap&, const PartialMap&) = default;

 private:
  std::vector<Point> image_;
};

/// Total self-map of X u {inf}, with inf encoded as index n.
class TotalMapInf {
 public:
  TotalMapInf() = default;
  explicit TotalMapInf(std::vector<Point> v) : v_(std::move(v)) {
    if (v_.empty()) throw StructuralError("TotalMapInf needs the infinity point");
    for (auto x : v_)
      if (x < 0 || static_cast<std::size_t>(x) >= v_.size()) throw StructuralError("TotalMapInf value out of range");
  }
  std::size_t carrier_size() const { return v_.size() - 1; }
  Point infinity() const { return static_cast<Point>(v_.size() - 1); }
  Point operator()(std::size_t x) const { return v_[x]; }
  const std::vector<Point>& values() const { return v_; }
  bool fixes_infinity() const { return v_.back() == infinity(); }

  friend bool operator==(const TotalMapInf&, const TotalMapInf&) = default;
  friend auto operator<=>(const TotalMapInf&, const TotalMapInf&) = default;

 private:
  std::vector<Point> v_;
};

// f_inf: agrees with f on its domain and sends everything else to inf.
inline TotalMapInf infinity_extend(const PartialMap& f) {
  const std::size_t n = f.carrier_size();
  std::vector<Point> v(n + 1, static_cast<Point>(n));
  for (std::size_t x = 0; x < n; ++x)
    if (f.defined(x)) v[x] = f(x);
  return TotalMapInf(std::move(v));
}

inline PartialMap restrict(const TotalMapInf& g) {
  if (!g.fixes_infinity()) throw PreconditionError("restrict: map does not fix infinity");
  const std::size_t n = g.carrier_size();
  PartialMap f(n);
  for (std::size_t x = 0; x < n; ++x)
    if (g(x) != g.infinity()) f.set(x, g(x));
  return f;
}

// f o g, defined at x when g(x) is defined and lies in the domain of f.
inline PartialMap compose_partial(const PartialMap& f, const PartialMap& g) {
  if (f.carrier_size() != g.carrier_size()) throw StructuralError("compose_partial: carrier mismatch");
  PartialMap h(f.carrier_size());
  for (std::size_t x = 0; x < g.carrier_size(); ++x)
    if (g.defined(x) && f.defined(static_cast<std::size_t>(g(x)))) h.set(x, f(static_cast<std::size_t>(g(x))));
  return h;
}

inline TotalMapInf compose(const TotalMapInf& f, const TotalMapInf& g) {
  if (f.values().size() != g.values().size()) throw StructuralError("compose: carrier mismatch");
  std::vector<Point> v(g.values().size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = f(static_cast<std::size_t>(g(x)));
  return TotalMapInf(std::move(v));
}

/// A finite partial semigroup acting on points {0..points-1} by partial maps,
/// one per element. Axioms are checked by validate_pspds, not on construction.
struct PartialDynSystem {
  PartialSemigroup S;
  std::size_t points = 0;
  std::vector<PartialMap> action;
  std::vector<std::string> point_names;

  PartialDynSystem() = default;
  PartialDynSystem(PartialSemigroup s, std::size_t pts, std::vector<PartialMap> act, std::vector<std::string> names = {})
      : S(std::move(s)), points(pts), action(std::move(act)), point_names(std::move(names)) {
    if (points == 0) throw StructuralError("dynamical system needs at least one point");
    if (action.size() != S.size()) throw StructuralError("need one map per semigroup element");
    for (const auto& m : action)
      if (m.carrier_size() != points) throw StructuralError("map carrier does not match point count");
    if (!point_names.empty() && point_names.size() != points) throw StructuralError("point names length mismatch");
  }

  std::string point_name(std::size_t x) const { return point_names.empty() ? std::to_string(x) : point_names[x]; }

  Point T(std::size_t s, std::size_t x) const { return action[s](x); }

  // L(x) = { s : x in Dom(T_s) }.
  SubsetMask acting_on(std::size_t x) const {
    SubsetMask l(S.size());
    for (std::size_t s = 0; s < S.size(); ++s)
      if (action[s].defined(x)) l.set(s);
    return l;
  }
};

// X = S, T_s = left multiplication by s, defined on R(s).
inline PartialDynSystem translation_system(const PartialSemigroup& s) {
  std::vector<PartialMap> maps;
  for (std::size_t a = 0; a < s.size(); ++a) {
    PartialMap m(s.size());
    for (std::size_t x = 0; x < s.size(); ++x)
      if (s.defined(a, x)) m.set(x, s.product(a, x));
    maps.push_back(std::move(m));
  }
  return PartialDynSystem(s, s.size(), std::move(maps), s.names());
}

inline bool is_translation_system(const PartialDynSystem& d) {
  if (d.points != d.S.size()) return false;
  for (std::size_t a = 0; a < d.S.size(); ++a)
    for (std::size_t x = 0; x < d.points; ++x)
      if (d.T(a, x) != d.S.product(a, x)) return false;
  return true;
}

struct CompositionViolation {
  std::size_t s, t, x;
  // "undefined-composite": T_s(T_t(x)) defined but T_{s*t}(x) not, or the reverse;
  // "unequal": both defined and different.
  std::string kind;
};

struct PspdsReport {
  // Composition compatibility, in both definedness directions.
  bool composition_ok = true;
  // Every Dom(T_s) nonempty.
  bool domains_nonempty = true;
  // Every point is acted on by some element: L(x) nonempty.
  bool points_acted_on = true;
  // The strong finite reading of the intersection property: some element acts on every point.
  bool strong_fip = true;
  std::vector<CompositionViolation> violations;
  std::vector<std::size_t> empty_domains;
  std::vector<std::size_t> idle_points;

  // Acceptance gate: composition and nonempty domains. Point coverage and the
  // strong intersection reading are reported but do not gate.
  bool ok() const { return composition_ok && domains_nonempty; }
  bool all_axioms() const { return ok() && points_acted_on && strong_fip; }
};

inline PspdsReport validate_pspds(const PartialDynSystem& d) {
  PspdsReport r;
  const std::size_t m = d.S.size();
  SubsetMask common = d.S.full_mask();
  for (std::size_t x = 0; x < d.points; ++x) {
    SubsetMask l = d.acting_on(x);
    if (l.empty()) {
      r.points_acted_on = false;
      r.idle_points.push_back(x);
    }
    common &= l;
  }
  r.strong_fip = common.any();
  for (std::size_t s = 0; s < m; ++s)
    if (d.action[s].domain().empty()) {
      r.domains_nonempty = false;
      r.empty_domains.push_back(s);
    }
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) {
      const Elem st = d.S.product(s, t);
      if (st == kUndefined) continue;
      for (std::size_t x = 0; x < d.points; ++x) {
        Point lhs = kNoPoint;
        if (d.action[t].defined(x)) lhs = d.T(s, static_cast<std::size_t>(d.T(t, x)));
        Point rhs = d.T(static_cast<std::size_t>(st), x);
        if (lhs == rhs) continue;
        r.composition_ok = false;
        r.violations.push_back({s, t, x, (lhs == kNoPoint || rhs == kNoPoint) ? "undefined-composite" : "unequal"});
      }
    }
  return r;
}

// Orb(x) = { T_s(x) : s in L(x) }.
inline SubsetMask orbit(const PartialDynSystem& d, std::size_t x) {
  SubsetMask o(d.points);
  for (std::size_t s = 0; s < d.S.size(); ++s)
    if (d.action[s].defined(x)) o.set(static_cast<std::size_t>(d.T(s, x)));
  return o;
}

// T_s(Y n Dom(T_s)) inside Y for every s.
inline bool is_invariant(const PartialDynSystem& d, const SubsetMask& y) {
  for (std::size_t s = 0; s < d.S.size(); ++s) {
    bool ok = true;
    y.for_each([&](std::size_t x) {
      if (d.action[s].defined(x) && !y.test(static_cast<std::size_t>(d.T(s, x)))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// Smallest invariant set containing `seed`.
inline SubsetMask invariant_closure(const PartialDynSystem& d, SubsetMask seed) {
  while (true) {
    SubsetMask next = seed;
    seed.for_each([&](std::size_t x) { next |= orbit(d, x); });
    if (next == seed) return seed;
    seed = std::move(next);
  }
}

struct InvariantSets {
  std::vector<SubsetMask> sets;
  // False when the point count exceeded the cap and only closures of single points were listed.
  bool exhaustive = true;
};

inline InvariantSets invariant_sets(const PartialDynSystem& d, const Limits& lim = {}) {
  InvariantSets r;
  if (d.points <= lim.cap) {
    for_each_subset(d.points, lim.cap, [&](const SubsetMask& y) {
      if (y.any() && is_invariant(d, y)) r.sets.push_back(y);
    });
    return r;
  }
  r.exhaustive = false;
  for (std::size_t x = 0; x < d.points; ++x) {
    SubsetMask c = invariant_closure(d, SubsetMask(d.points, {x}));
    if (std::find(r.sets.begin(), r.sets.end(), c) == r.sets.end()) r.sets.push_back(c);
  }
  std::sort(r.sets.begin(), r.sets.end());
  return r;
}

/// Inclusion-minimal nonempty invariant sets. A minimal one is the invariant
/// closure of each of its points, so this is exact at any size.
inline std::vector<SubsetMask> minimal_subsystems(const PartialDynSystem& d) {
  std::vector<SubsetMask> cl;
  for (std::size_t x = 0; x < d.points; ++x) cl.push_back(invariant_closure(d, SubsetMask(d.points, {x})));
  std::vector<SubsetMask> out;
  for (std::size_t x = 0; x < d.points; ++x) {
    bool minimal = true;
    cl[x].for_each([&](std::size_t y) {
      if (cl[y] != cl[x]) minimal = false;
    });
    if (minimal && std::find(out.begin(), out.end(), cl[x]) == out.end()) out.push_back(cl[x]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Sets P with Orb(x) = P for every x in P: the orbit-closure form of
/// minimality. It can differ from minimal_subsystems when a point is acted on
/// by nothing or does not return to itself.
inline std::vector<SubsetMask> minimal_subsystems_by_orbit(const PartialDynSystem& d) {
  std::vector<SubsetMask> out;
  for (std::size_t x = 0; x < d.points; ++x) {
    SubsetMask p = orbit(d, x);
    if (p.empty()) continue;
    bool ok = true;
    p.for_each([&](std::size_t y) {
      if (orbit(d, y) != p) ok = false;
    });
    if (ok && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CorrespondenceReport {
  bool invariant_equals_left_ideals = false;
  bool minimal_equals_minimal_left_ideals = false;
  bool ok() const { return invariant_equals_left_ideals && minimal_equals_minimal_left_ideals; }
};

inline CorrespondenceReport left_ideal_correspondence_report(const PartialDynSystem& d, const Limits& lim = {}) {
  if (!is_translation_system(d)) throw PreconditionError("left_ideal_correspondence: not a translation system");
  CorrespondenceReport r;
  r.invariant_equals_left_ideals = invariant_sets(d, lim).sets == enumerate_ideals(d.S, IdealSide::Left, lim);
  r.minimal_equals_minimal_left_ideals = minimal_subsystems(d) == minimal_left_ideals(d.S);
  return r;
}

inline bool left_ideal_correspondence(const PartialDynSystem& d, const Limits& lim = {}) {
  return left_ideal_correspondence_report(d, lim).ok();
}

// {s in L(y) : T_s(y) = y}.
inline SubsetMask return_set(const PartialDynSystem& d, std::size_t y) {
  SubsetMask r(d.S.size());
  for (std::size_t s = 0; s < d.S.size(); ++s)
    if (d.T(s, y) == static_cast<Point>(y)) r.set(s);
  return r;
}

// {s in L(y) : T_s(y) in U}.
inline SubsetMask visit_set(const PartialDynSystem& d, std::size_t y, const SubsetMask& u) {
  SubsetMask r(d.S.size());
  for (std::size_t s = 0; s < d.S.size(); ++s) {
    Point p = d.T(s, y);
    if (p != kNoPoint && u.test(static_cast<std::size_t>(p))) r.set(s);
  }
  return r;
}

// Singletons are the smallest neighborhoods, and partial syndeticity is upward closed.
inline bool is_uniformly_recurrent(const PartialDynSystem& d, std::size_t y) {
  return is_partially_syndetic(d.S, return_set(d, y)).holds;
}

inline SubsetMask uniformly_recurrent_points(const PartialDynSystem& d) {
  SubsetMask r(d.points);
  for (std::size_t y = 0; y < d.points; ++y)
    if (is_uniformly_recurrent(d, y)) r.set(y);
  return r;
}

// Some s acting on both with T_s(x) = T_s(y).
inline std::optional<std::size_t> proximality_witness(const PartialDynSystem& d, std::size_t x, std::size_t y) {
  for (std::size_t s = 0; s < d.S.size(); ++s) {
    Point a = d.T(s, x);
    if (a != kNoPoint && a == d.T(s, y)) return s;
  }
  return std::nullopt;
}

inline bool is_proximal(const PartialDynSystem& d, std::size_t x, std::size_t y) { return proximality_witness(d, x, y).has_value(); }

inline std::vector<std::pair<std::size_t, std::size_t>> proximal_pairs(const PartialDynSystem& d) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < d.points; ++x)
    for (std::size_t y = 0; y < d.points; ++y)
      if (is_proximal(d, x, y)) out.emplace_back(x, y);
  return out;
}

/// Minimal left ideals contained in K(S). Empty when K(S) is absent.
// Some product s*t is defined. Without one, every u has L(u) empty and the
// recurrence notions hold vacuously.
inline bool has_composable_pair(const PartialSemigroup& s) {
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s.right(x).any()) return true;
  return false;
}

// The recurrence theorems need a smallest ideal and at least one defined product.
inline void require_recurrence_setting(const PartialSemigroup& s, const char* what) {
  if (!has_composable_pair(s)) throw PreconditionError(std::string(what) + ": S has no defined product");
  if (!smallest_ideal(s)) throw PreconditionError(std::string(what) + ": S has no smallest ideal");
}

inline std::vector<SubsetMask> kernel_minimal_left_ideals(const PartialSemigroup& s) {
  std::vector<SubsetMask> out;
  auto k = smallest_ideal(s);
  if (!k) return out;
  for (auto& l : minimal_left_ideals(s))
    if (l.is_subset_of(*k)) out.push_back(l);
  return out;
}

struct Clauses1923 {
  std::size_t x = 0;
  SubsetMask ideal;
  bool a = false, b = false, c = false, d = false;
  bool agree() const { return a == b && b == c && c == d; }
};

struct Theorem1923Report {
  std::size_t checked = 0;
  std::vector<Clauses1923> disagreements;
  bool ok() const { return disagreements.empty(); }
};

/// For each point x and each minimal left ideal L inside K(S), compares
///   (a) x uniformly recurrent,
///   (b) T_u(x) = x for some u in L,
///   (c) T_e(x) = x for some idempotent e in L,
///   (d) T_e(y) = x for some point y and idempotent e in L.
inline Theorem1923Report theorem_19_23_check(const PartialDynSystem& d) {
  require_recurrence_setting(d.S, "theorem_19_23_check");
  auto ideals = kernel_minimal_left_ideals(d.S);
  const SubsetMask e = idempotents(d.S);
  Theorem1923Report rep;
  for (std::size_t x = 0; x < d.points; ++x) {
    const bool a = is_uniformly_recurrent(d, x);
    for (const auto& l : ideals) {
      Clauses1923 c{x, l, a, false, false, false};
      l.for_each([&](std::size_t u) { c.b = c.b || d.T(u, x) == static_cast<Point>(x); });
      (l & e).for_each([&](std::size_t i) {
        c.c = c.c || d.T(i, x) == static_cast<Point>(x);
        for (std::size_t y = 0; y < d.points; ++y) c.d = c.d || d.T(i, y) == static_cast<Point>(x);
      });
      ++rep.checked;
      if (!c.agree()) rep.disagreements.push_back(c);
    }
  }
  return rep;
}

struct Theorem1926Report {
  std::size_t checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> disagreements;
  bool ok() const { return disagreements.empty(); }
};

/// Over all pairs: some minimal idempotent u has T_u(x) = y iff x, y are
/// proximal and y is uniformly recurrent.
inline Theorem1926Report theorem_19_26_check(const PartialDynSystem& d) {
  require_recurrence_setting(d.S, "theorem_19_26_check");
  const SubsetMask mi = minimal_idempotents(d.S);
  const SubsetMask ur = uniformly_recurrent_points(d);
  Theorem1926Report rep;
  for (std::size_t x = 0; x < d.points; ++x)
    for (std::size_t y = 0; y < d.points; ++y) {
      bool lhs = false;
      mi.for_each([&](std::size_t u) { lhs = lhs || d.T(u, x) == static_cast<Point>(y); });
      bool rhs = is_proximal(d, x, y) && ur.test(y);
      ++rep.checked;
      if (lhs != rhs) rep.disagreements.emplace_back(x, y);
    }
  return rep;
}

struct CollapseReport {
  std::size_t pairs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> failures;  // proximal pairs with no collapsing ideal
  bool ok() const { return failures.empty(); }
};

/// For each proximal pair, a minimal left ideal inside K(S) whose members
/// acting on both points send them to the same place, with at least one such
/// member.
inline CollapseReport proximal_collapse_check(const PartialDynSystem& d) {
  CollapseReport rep;
  auto ideals = kernel_minimal_left_ideals(d.S);
  for (auto [x, y] : proximal_pairs(d)) {
    ++rep.pairs;
    bool found = false;
    for (const auto& l : ideals) {
      const SubsetMask both = l & d.acting_on(x) & d.acting_on(y);
      if (both.empty()) continue;
      bool all = true;
      both.for_each([&](std::size_t u) { all = all && d.T(u, x) == d.T(u, y); });
      if (all) found = true;
    }
    if (!found) rep.failures.emplace_back(x, y);
  }
  return rep;
}

struct RecurrentProximalReport {
  std::size_t checked = 0;
  std::vector<std::size_t> failures;
  bool ok() const { return failures.empty(); }
};

/// For each x acted on by some minimal idempotent u, y = T_u(x) lies in the
/// invariant closure of x, is uniformly recurrent, and is proximal to x.
inline RecurrentProximalReport recurrent_proximal_check(const PartialDynSystem& d) {
  RecurrentProximalReport rep;
  const SubsetMask mi = minimal_idempotents(d.S);
  for (std::size_t x = 0; x < d.points; ++x) {
    const SubsetMask acting = mi & d.acting_on(x);
    if (acting.empty()) continue;
    ++rep.checked;
    const std::size_t y = static_cast<std::size_t>(d.T(acting.first(), x));
    if (!invariant_closure(d, SubsetMask(d.points, {x})).test(y) || !is_uniformly_recurrent(d, y) || !is_proximal(d, x, y)) rep.failures.push_back(x);
  }
  return rep;
}

struct HomomorphismReport {
  bool intertwines = true;
  bool surjective = true;
  std::size_t definedness_mismatches = 0;  // x in Dom(T_s) iff phi(x) in Dom(R_s) fails
};

/// Checks R_s(phi(x)) = phi(T_s(x)) wherever both sides are defined.
inline HomomorphismReport verify_dynamical_homomorphism(const PartialDynSystem& d1, const PartialDynSystem& d2, const std::vector<std::size_t>& phi) {
  if (d1.S.size() != d2.S.size()) throw PreconditionError("verify_dynamical_homomorphism: systems act by different semigroups");
  if (phi.size() != d1.points) throw StructuralError("verify_dynamical_homomorphism: phi must be total on the source points");
  HomomorphismReport r;
  SubsetMask hit(d2.points);
  for (auto p : phi) {
    if (p >= d2.points) throw StructuralError("verify_dynamical_homomorphism: phi value out of range");
    hit.set(p);
  }
  r.surjective = hit == SubsetMask::full(d2.points);
  for (std::size_t s = 0; s < d1.S.size(); ++s)
    for (std::size_t x = 0; x < d1.points; ++x) {
      const bool src = d1.action[s].defined(x);
      const bool dst = d2.action[s].defined(phi[x]);
      if (src != dst) ++r.definedness_mismatches;
      if (src && dst && static_cast<std::size_t>(d2.T(s, phi[x])) != phi[static_cast<std::size_t>(d1.T(s, x))]) r.intertwines = false;
    }
  return r;
}

inline bool is_dynamical_homomorphism(const PartialDynSystem& d1, const PartialDynSystem& d2, const std::vector<std::size_t>& phi) {
  return verify_dynamical_homomorphism(d1, d2, phi).intertwines;
}

/// Closure of the extended action maps under composition, as a total
/// semigroup with product (f, g) -> f o g. Elements are sorted by their value
/// vectors.
struct EnvelopingSemigroup {
  std::vector<TotalMapInf> elements;
  std::vector<std::size_t> generator_index;  // element of S -> index of its extended map

  std::size_t size() const { return elements.size(); }

  std::size_t index_of(const TotalMapInf& f) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), f);
    if (it == elements.end() || *it != f) throw InternalError("enveloping semigroup is not closed");
    return static_cast<std::size_t>(it - elements.begin());
  }

  std::size_t product(std::size_t i, std::size_t j) const { return index_of(compose(elements[i], elements[j])); }

  PartialSemigroup as_semigroup() const {
    const std::size_t k = elements.size();
    std::vector<Elem> t(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) t[i * k + j] = static_cast<Elem>(product(i, j));
    return PartialSemigroup(k, std::move(t));
  }
};

inline EnvelopingSemigroup enveloping(const PartialDynSystem& d, const Limits& lim = {}) {
  std::vector<TotalMapInf> gens;
  for (const auto& m : d.action) gens.push_back(infinity_extend(m));
  std::map<TotalMapInf, std::size_t> seen;
  std::vector<TotalMapInf> found;
  auto add = [&](const TotalMapInf& f) {
    if (seen.count(f)) return;
    if (found.size() >= lim.enveloping_cap) {
      throw CapExceeded("enveloping closure exceeded " + std::to_string(lim.enveloping_cap) + " maps (" + std::to_string(found.size()) + " found so far)");
    }
    seen.emplace(f, found.size());
    found.push_back(f);
  };
  for (const auto& g : gens) add(g);
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& g : gens) add(compose(g, found[i]));
  EnvelopingSemigroup e;
  e.elements = std::move(found);
  std::sort(e.elements.begin(), e.elements.end());
  for (const auto& g : gens) e.generator_index.push_back(e.index_of(g));
  return e;
}

// theta(s) o theta(t) = theta(s*t) whenever s*t is defined.
inline bool theta_is_homomorphism(const PartialDynSystem& d, const EnvelopingSemigroup& e) {
  for (std::size_t s = 0; s < d.S.size(); ++s)
    for (std::size_t t = 0; t < d.S.size(); ++t) {
      Elem st = d.S.product(s, t);
      if (st == kUndefined) continue;
      if (e.product(e.generator_index[s], e.generator_index[t]) != e.generator_index[static_cast<std::size_t>(st)]) return false;
    }
  return true;
}

struct EnvelopingChecks {
  bool closed = false;
  bool has_idempotent = false;
  bool minimal_left_ideals_have_idempotents = false;
  bool every_power_cycle_has_idempotent = false;
  std::size_t subsemigroups_checked = 0;  // exhaustive sweep, only when small
  bool subsemigroups_have_idempotents = true;
  bool ok() const {
    return closed && has_idempotent && minimal_left_ideals_have_idempotents && every_power_cycle_has_idempotent && subsemigroups_have_idempotents;
  }
};

/// Closure, and the finite idempotent-existence facts: the whole semigroup,
/// each cyclic subsemigroup, each minimal left ideal, and (when at most
/// `exhaustive_limit` elements) every composition-closed subset.
inline EnvelopingChecks check_enveloping(const EnvelopingSemigroup& e, std::size_t exhaustive_limit = 12) {
  EnvelopingChecks c;
  const std::size_t k = e.size();
  std::vector<std::size_t> table(k * k);
  c.closed = true;
  try {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) table[i * k + j] = e.product(i, j);
  } catch (const InternalError&) {
    c.closed = false;
    return c;
  }
  std::vector<bool> idem(k);
  for (std::size_t i = 0; i < k; ++i) idem[i] = table[i * k + i] == i;
  c.has_idempotent = std::find(idem.begin(), idem.end(), true) != idem.end();
  c.every_power_cycle_has_idempotent = true;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t p = i;
    bool hit = false;
    for (std::size_t step = 0; step <= k && !hit; ++step) {
      hit = idem[p];
      p = table[p * k + i];
    }
    if (!hit) c.every_power_cycle_has_idempotent = false;
  }
  PartialSemigroup ps = e.as_semigroup();
  c.minimal_left_ideals_have_idempotents = true;
  const SubsetMask em = idempotents(ps);
  for (const auto& l : minimal_left_ideals(ps))
    if (!l.intersects(em)) c.minimal_left_ideals_have_idempotents = false;
  if (k <= exhaustive_limit) {
    for_each_subset(k, exhaustive_limit, [&](const SubsetMask& m) {
      if (m.empty() || !set_product(ps, m, m).is_subset_of(m)) return;
      ++c.subsemigroups_checked;
      if (!m.intersects(em)) c.subsemigroups_have_idempotents = false;
    });
  }
  return c;
}

}  // namespace psg
