#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psg/core.hpp"

namespace psg {

enum class Notion {
  PartiallySyndetic,
  Syndetic,
  PartiallyThick,
  CThick,
  PartiallyPiecewiseSyndetic,
  CPiecewiseSyndetic,
};

inline constexpr std::array<Notion, 6> kAllNotions = {
    Notion::PartiallySyndetic, Notion::Syndetic, Notion::PartiallyThick,
    Notion::CThick, Notion::PartiallyPiecewiseSyndetic, Notion::CPiecewiseSyndetic};

inline const char* to_string(Notion n) {
  switch (n) {
    case Notion::PartiallySyndetic: return "partially-syndetic";
    case Notion::Syndetic: return "syndetic";
    case Notion::PartiallyThick: return "partially-thick";
    case Notion::CThick: return "c-thick";
    case Notion::PartiallyPiecewiseSyndetic: return "partially-piecewise-syndetic";
    case Notion::CPiecewiseSyndetic: return "c-piecewise-syndetic";
  }
  return "?";
}

// Which composability set the H in the partially piecewise syndetic
// definition is drawn from. Right is the definition as written.
enum class Reading { Right, Left };

inline constexpr std::int64_t kNone = -1;

/// Witness data for one verdict. Field meaning depends on the notion and on
/// `holds`; see the comment on each classifier. `steps` rows hold up to three
/// element indices, with kNone for an unused slot.
struct Witness {
  bool vacuous = false;
  std::int64_t u = kNone;
  std::int64_t x = kNone;
  std::vector<std::array<std::int64_t, 3>> steps;
  SubsetMask skipped;  // elements excluded from the quantifier range
};

struct LargenessVerdict {
  Notion notion = Notion::PartiallySyndetic;
  bool holds = false;
  Witness witness;
};

namespace detail {

inline std::int64_t to_i(std::size_t v) { return static_cast<std::int64_t>(v); }

inline SubsetMask check_mask(const PartialSemigroup& s, const SubsetMask& a) {
  if (a.width() != s.size()) throw StructuralError("subset width does not match semigroup size");
  return a;
}

// Base set for the H in the piecewise definitions.
inline const SubsetMask& pps_base(const PartialSemigroup& s, std::size_t el, Reading r) {
  return r == Reading::Right ? s.right(el) : s.left(el);
}

// Some x in `candidates` with T*x inside `target`; T may be empty.
inline std::optional<std::size_t> pick_translate(const PartialSemigroup& s, const SubsetMask& t, const SubsetMask& candidates, const SubsetMask& target) {
  for (std::size_t x = candidates.first(); x < s.size(); x = candidates.next(x + 1)) {
    bool ok = true;
    t.for_each([&](std::size_t a) {
      if (!target.test(static_cast<std::size_t>(s.product(a, x)))) ok = false;
    });
    if (ok) return x;
  }
  return std::nullopt;
}

}  // namespace detail

/// For every u with L(u) nonempty, every r in R(L(u)) has t in L(u) with t*r in A.
/// Taking H = L(u) suffices: a larger H shrinks R(H) and grows the union of quotients.
///
/// holds: steps (u, r, t); skipped = {u : L(u) empty}.
/// fails: u and x = r with no such t.
inline LargenessVerdict is_partially_syndetic(const PartialSemigroup& s, const SubsetMask& a_in) {
  const SubsetMask a = detail::check_mask(s, a_in);
  LargenessVerdict v{Notion::PartiallySyndetic, true, {}};
  v.witness.skipped = SubsetMask(s.size());
  for (std::size_t u = 0; u < s.size(); ++u) {
    const SubsetMask& lu = s.left(u);
    if (lu.empty()) {
      v.witness.skipped.set(u);
      continue;
    }
    const SubsetMask rh = right_set_family(s, lu);
    for (std::size_t r = rh.first(); r < s.size(); r = rh.next(r + 1)) {
      std::int64_t found = kNone;
      for (std::size_t t = lu.first(); t < s.size() && found == kNone; t = lu.next(t + 1))
        if (a.test(static_cast<std::size_t>(s.product(t, r)))) found = detail::to_i(t);
      if (found == kNone) {
        v.holds = false;
        v.witness.steps.clear();
        v.witness.u = detail::to_i(u);
        v.witness.x = detail::to_i(r);
        return v;
      }
      v.witness.steps.push_back({detail::to_i(u), detail::to_i(r), found});
    }
  }
  return v;
}

/// Some nonempty H with R(S) inside the union of t^{-1}A over H; vacuous when R(S) is empty.
///
/// holds: steps (r, t) covering each r in R(S); H is the set of chosen t.
/// fails: x = an r in R(S) lying in no t^{-1}A.
inline LargenessVerdict is_syndetic_finite(const PartialSemigroup& s, const SubsetMask& a_in) {
  const SubsetMask a = detail::check_mask(s, a_in);
  LargenessVerdict v{Notion::Syndetic, true, {}};
  v.witness.skipped = SubsetMask(s.size());
  const SubsetMask dr = delta_r_finite(s);
  if (dr.empty()) {
    v.witness.vacuous = true;
    return v;
  }
  for (std::size_t r = dr.first(); r < s.size(); r = dr.next(r + 1)) {
    std::int64_t found = kNone;
    for (std::size_t t = 0; t < s.size() && found == kNone; ++t)
      if (s.defined(t, r) && a.test(static_cast<std::size_t>(s.product(t, r)))) found = detail::to_i(t);
    if (found == kNone) {
      v.holds = false;
      v.witness.steps.clear();
      v.witness.x = detail::to_i(r);
      return v;
    }
    v.witness.steps.push_back({detail::to_i(r), found, kNone});
  }
  return v;
}

/// Some u with L(u) nonempty and t in R(L(u)) with L(u)*t inside A.
/// F = L(u) is the hardest finite F, so it decides the inner universal.
///
/// holds: u and x = t.
/// fails: steps (u, t, s) with s in L(u), s*t not in A, for every such u, t.
inline LargenessVerdict is_partially_thick(const PartialSemigroup& s, const SubsetMask& a_in) {
  const SubsetMask a = detail::check_mask(s, a_in);
  LargenessVerdict v{Notion::PartiallyThick, false, {}};
  v.witness.skipped = SubsetMask(s.size());
  for (std::size_t u = 0; u < s.size(); ++u) {
    const SubsetMask& lu = s.left(u);
    if (lu.empty()) {
      v.witness.skipped.set(u);
      continue;
    }
    const SubsetMask rh = right_set_family(s, lu);
    for (std::size_t t = rh.first(); t < s.size(); t = rh.next(t + 1)) {
      std::int64_t bad = kNone;
      for (std::size_t x = lu.first(); x < s.size() && bad == kNone; x = lu.next(x + 1))
        if (!a.test(static_cast<std::size_t>(s.product(x, t)))) bad = detail::to_i(x);
      if (bad == kNone) {
        v.holds = true;
        v.witness.steps.clear();
        v.witness.u = detail::to_i(u);
        v.witness.x = detail::to_i(t);
        return v;
      }
      v.witness.steps.push_back({detail::to_i(u), detail::to_i(t), bad});
    }
  }
  return v;
}

/// Some p in R(S) with L(p)*p inside A. Points of R(S) have L(p) = S.
///
/// holds: u = p.
/// fails: steps (p, s) with s*p not in A for each p in R(S); vacuous when R(S) is empty.
inline LargenessVerdict is_c_thick(const PartialSemigroup& s, const SubsetMask& a_in) {
  const SubsetMask a = detail::check_mask(s, a_in);
  LargenessVerdict v{Notion::CThick, false, {}};
  v.witness.skipped = SubsetMask(s.size());
  const SubsetMask dr = delta_r_finite(s);
  if (dr.empty()) v.witness.vacuous = true;
  for (std::size_t p = dr.first(); p < s.size(); p = dr.next(p + 1)) {
    const SubsetMask& lp = s.left(p);
    std::int64_t bad = kNone;
    for (std::size_t x = lp.first(); x < s.size() && bad == kNone; x = lp.next(x + 1))
      if (!a.test(static_cast<std::size_t>(s.product(x, p)))) bad = detail::to_i(x);
    if (bad == kNone && lp.any()) {
      v.holds = true;
      v.witness.steps.clear();
      v.witness.u = detail::to_i(p);
      return v;
    }
    v.witness.steps.push_back({detail::to_i(p), bad, kNone});
  }
  return v;
}

/// For every s with a nonempty base set there is H inside it such that every
/// nonempty T inside R(H) has x in R(T) with T*x inside the union of t^{-1}A
/// over H. Growing H only helps and growing T only hurts, so H = base(s) and
/// T = R(H) decide it.
///
/// holds: steps (s, x) per s, x = kNone when R(H) is empty (vacuous at s);
///        skipped = {s : base(s) empty}.
/// fails: u = s with no x for T = R(base(s)).
inline LargenessVerdict is_partially_piecewise_syndetic(const PartialSemigroup& s, const SubsetMask& a_in, Reading reading = Reading::Right) {
  const SubsetMask a = detail::check_mask(s, a_in);
  LargenessVerdict v{Notion::PartiallyPiecewiseSyndetic, true, {}};
  v.witness.skipped = SubsetMask(s.size());
  for (std::size_t el = 0; el < s.size(); ++el) {
    const SubsetMask& h = detail::pps_base(s, el, reading);
    if (h.empty()) {
      v.witness.skipped.set(el);
      continue;
    }
    const SubsetMask t = right_set_family(s, h);
    if (t.empty()) {
      v.witness.steps.push_back({detail::to_i(el), kNone, kNone});
      continue;
    }
    auto x = detail::pick_translate(s, t, right_set_family(s, t), quotient_union(s, h, a));
    if (!x) {
      v.holds = false;
      v.witness.steps.clear();
      v.witness.u = detail::to_i(el);
      return v;
    }
    v.witness.steps.push_back({detail::to_i(el), detail::to_i(*x), kNone});
  }
  return v;
}

/// Some s with R(s) nonempty and x in R(R(s)) such that
/// (R(s) n R(R(s)))*x lies inside the union of t^{-1}A over R(s).
/// H = R(s) and T = R(s) are the extremal choices.
///
/// holds: u = s, x.
/// fails: steps (s) for each s with R(s) nonempty.
inline LargenessVerdict is_c_piecewise_syndetic(const PartialSemigroup& s, const SubsetMask& a_in) {
  const SubsetMask a = detail::check_mask(s, a_in);
  LargenessVerdict v{Notion::CPiecewiseSyndetic, false, {}};
  v.witness.skipped = SubsetMask(s.size());
  for (std::size_t el = 0; el < s.size(); ++el) {
    const SubsetMask& h = s.right(el);
    if (h.empty()) {
      v.witness.skipped.set(el);
      continue;
    }
    const SubsetMask rt = right_set_family(s, h);
    auto x = detail::pick_translate(s, h & rt, rt, quotient_union(s, h, a));
    if (x) {
      v.holds = true;
      v.witness.steps.clear();
      v.witness.u = detail::to_i(el);
      v.witness.x = detail::to_i(*x);
      return v;
    }
    v.witness.steps.push_back({detail::to_i(el), kNone, kNone});
  }
  return v;
}

inline LargenessVerdict classify_one(const PartialSemigroup& s, const SubsetMask& a, Notion n, Reading reading = Reading::Right) {
  switch (n) {
    case Notion::PartiallySyndetic: return is_partially_syndetic(s, a);
    case Notion::Syndetic: return is_syndetic_finite(s, a);
    case Notion::PartiallyThick: return is_partially_thick(s, a);
    case Notion::CThick: return is_c_thick(s, a);
    case Notion::PartiallyPiecewiseSyndetic: return is_partially_piecewise_syndetic(s, a, reading);
    case Notion::CPiecewiseSyndetic: return is_c_piecewise_syndetic(s, a);
  }
  throw PreconditionError("unknown notion");
}

/// Re-derives the verdict from its witness alone, checking every quantifier
/// the witness claims to discharge. Returns true iff the witness reproduces
/// `holds`.
inline bool replay(const PartialSemigroup& s, const SubsetMask& a, const LargenessVerdict& v, Reading reading = Reading::Right) {
  const std::size_t n = s.size();
  const Witness& w = v.witness;
  auto in = [&](std::int64_t e) { return e >= 0 && static_cast<std::size_t>(e) < n; };
  auto at = [](std::int64_t e) { return static_cast<std::size_t>(e); };
  auto prod_in_a = [&](std::int64_t x, std::int64_t y) {
    return in(x) && in(y) && s.defined(at(x), at(y)) && a.test(static_cast<std::size_t>(s.product(at(x), at(y))));
  };
  switch (v.notion) {
    case Notion::PartiallySyndetic: {
      if (!v.holds) {
        if (!in(w.u) || !in(w.x) || s.left(at(w.u)).empty()) return false;
        const SubsetMask lu = s.left(at(w.u));
        if (!right_set_family(s, lu).test(at(w.x))) return false;
        bool any = false;
        lu.for_each([&](std::size_t t) { any = any || prod_in_a(detail::to_i(t), w.x); });
        return !any;
      }
      for (std::size_t u = 0; u < n; ++u) {
        if (s.left(u).empty()) continue;
        const SubsetMask rh = right_set_family(s, s.left(u));
        bool ok = true;
        rh.for_each([&](std::size_t r) {
          bool covered = false;
          for (const auto& st : w.steps)
            if (st[0] == detail::to_i(u) && st[1] == detail::to_i(r) && in(st[2]) && s.left(u).test(at(st[2])) && prod_in_a(st[2], st[1])) covered = true;
          ok = ok && covered;
        });
        if (!ok) return false;
      }
      return true;
    }
    case Notion::Syndetic: {
      const SubsetMask dr = delta_r_finite(s);
      if (!v.holds) {
        if (!in(w.x) || !dr.test(at(w.x))) return false;
        for (std::size_t t = 0; t < n; ++t)
          if (prod_in_a(detail::to_i(t), w.x)) return false;
        return true;
      }
      if (w.vacuous) return dr.empty();
      bool ok = true;
      dr.for_each([&](std::size_t r) {
        bool covered = false;
        for (const auto& st : w.steps)
          if (st[0] == detail::to_i(r) && prod_in_a(st[1], st[0])) covered = true;
        ok = ok && covered;
      });
      return ok;
    }
    case Notion::PartiallyThick: {
      if (v.holds) {
        if (!in(w.u) || !in(w.x) || s.left(at(w.u)).empty()) return false;
        const SubsetMask lu = s.left(at(w.u));
        if (!right_set_family(s, lu).test(at(w.x))) return false;
        bool ok = true;
        lu.for_each([&](std::size_t t) { ok = ok && prod_in_a(detail::to_i(t), w.x); });
        return ok;
      }
      for (std::size_t u = 0; u < n; ++u) {
        if (s.left(u).empty()) continue;
        const SubsetMask lu = s.left(u);
        bool ok = true;
        right_set_family(s, lu).for_each([&](std::size_t t) {
          bool refuted = false;
          for (const auto& st : w.steps)
            if (st[0] == detail::to_i(u) && st[1] == detail::to_i(t) && in(st[2]) && lu.test(at(st[2])) && !prod_in_a(st[2], st[1])) refuted = true;
          ok = ok && refuted;
        });
        if (!ok) return false;
      }
      return true;
    }
    case Notion::CThick: {
      const SubsetMask dr = delta_r_finite(s);
      if (v.holds) {
        if (!in(w.u) || !dr.test(at(w.u)) || s.left(at(w.u)).empty()) return false;
        bool ok = true;
        s.left(at(w.u)).for_each([&](std::size_t t) { ok = ok && prod_in_a(detail::to_i(t), w.u); });
        return ok;
      }
      bool ok = true;
      dr.for_each([&](std::size_t p) {
        if (s.left(p).empty()) return;
        bool refuted = false;
        for (const auto& st : w.steps)
          if (st[0] == detail::to_i(p) && in(st[1]) && s.left(p).test(at(st[1])) && !prod_in_a(st[1], st[0])) refuted = true;
        ok = ok && refuted;
      });
      return ok;
    }
    case Notion::PartiallyPiecewiseSyndetic: {
      auto good_at = [&](std::size_t el, std::int64_t x) {
        const SubsetMask& h = detail::pps_base(s, el, reading);
        const SubsetMask t = right_set_family(s, h);
        if (t.empty()) return x == kNone;
        if (!in(x) || !right_set_family(s, t).test(at(x))) return false;
        const SubsetMask c = quotient_union(s, h, a);
        bool ok = true;
        t.for_each([&](std::size_t q) { ok = ok && c.test(static_cast<std::size_t>(s.product(q, at(x)))); });
        return ok;
      };
      if (!v.holds) {
        if (!in(w.u) || detail::pps_base(s, at(w.u), reading).empty()) return false;
        const SubsetMask h = detail::pps_base(s, at(w.u), reading);
        const SubsetMask t = right_set_family(s, h);
        if (t.empty()) return false;
        const SubsetMask rt = right_set_family(s, t);
        bool any = false;
        rt.for_each([&](std::size_t x) { any = any || good_at(at(w.u), detail::to_i(x)); });
        return !any;
      }
      for (std::size_t el = 0; el < n; ++el) {
        if (detail::pps_base(s, el, reading).empty()) continue;
        bool ok = false;
        for (const auto& st : w.steps)
          if (st[0] == detail::to_i(el) && good_at(el, st[1])) ok = true;
        if (!ok) return false;
      }
      return true;
    }
    case Notion::CPiecewiseSyndetic: {
      auto good_at = [&](std::size_t el, std::size_t x) {
        const SubsetMask& h = s.right(el);
        const SubsetMask rt = right_set_family(s, h);
        if (!rt.test(x)) return false;
        const SubsetMask c = quotient_union(s, h, a);
        bool ok = true;
        (h & rt).for_each([&](std::size_t q) { ok = ok && c.test(static_cast<std::size_t>(s.product(q, x))); });
        return ok;
      };
      if (v.holds) return in(w.u) && in(w.x) && s.right(at(w.u)).any() && good_at(at(w.u), at(w.x));
      for (std::size_t el = 0; el < n; ++el) {
        if (s.right(el).empty()) continue;
        const SubsetMask rt = right_set_family(s, s.right(el));
        bool any = false;
        rt.for_each([&](std::size_t x) { any = any || good_at(el, x); });
        if (any) return false;
      }
      return true;
    }
  }
  return false;
}

struct ImplicationRecord {
  std::string premise;
  std::string conclusion;
  bool antecedent = false;
  bool held = true;
};

struct ClassificationReport {
  SubsetMask subset;
  std::vector<LargenessVerdict> verdicts;  // one per notion, in kAllNotions order
  std::vector<ImplicationRecord> implication_audit;
  bool duality_thick_vs_syndetic = true;   // thick(A) iff not syndetic(S \ A)
  bool duality_syndetic_vs_thick = true;   // syndetic(A) iff not thick(S \ A)

  const LargenessVerdict& verdict(Notion n) const {
    for (const auto& v : verdicts)
      if (v.notion == n) return v;
    throw PreconditionError("notion missing from report");
  }
};

inline ClassificationReport classify(const PartialSemigroup& s, const SubsetMask& a, Reading reading = Reading::Right) {
  ClassificationReport rep;
  rep.subset = detail::check_mask(s, a);
  for (Notion n : kAllNotions) rep.verdicts.push_back(classify_one(s, a, n, reading));
  auto holds = [&](Notion n) { return rep.verdict(n).holds; };
  const std::pair<Notion, Notion> implications[] = {
      {Notion::CThick, Notion::PartiallyThick},
      {Notion::PartiallyThick, Notion::PartiallyPiecewiseSyndetic},
      {Notion::PartiallySyndetic, Notion::PartiallyPiecewiseSyndetic},
      {Notion::CThick, Notion::CPiecewiseSyndetic},
  };
  for (auto [p, c] : implications) {
    ImplicationRecord r{to_string(p), to_string(c), holds(p), !holds(p) || holds(c)};
    rep.implication_audit.push_back(r);
  }
  const SubsetMask comp = a.complement();
  rep.duality_thick_vs_syndetic = holds(Notion::PartiallyThick) == !is_partially_syndetic(s, comp).holds;
  rep.duality_syndetic_vs_thick = holds(Notion::PartiallySyndetic) == !is_partially_thick(s, comp).holds;
  return rep;
}

// Some p with L(p) nonempty and L(p)*p inside A.
inline bool characterization_a(const PartialSemigroup& s, const SubsetMask& a) {
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (s.left(p).empty()) continue;
    if (set_product(s, s.left(p), singleton(s, p)).is_subset_of(a)) return true;
  }
  return false;
}

enum class Side { Left, Right };
enum class Thickness { Partial, C };

/// For every s with a nonempty base set, some nonempty G inside it has the
/// union of t^{-1}A over G thick. Thickness is upward closed, so G = base(s)
/// decides it. Elements with an empty base set are skipped.
inline bool characterization_c(const PartialSemigroup& s, const SubsetMask& a, Side side = Side::Left, Thickness th = Thickness::C) {
  for (std::size_t el = 0; el < s.size(); ++el) {
    const SubsetMask& g = side == Side::Left ? s.left(el) : s.right(el);
    if (g.empty()) continue;
    const SubsetMask c = quotient_union(s, g, a);
    bool thick = th == Thickness::C ? is_c_thick(s, c).holds : is_partially_thick(s, c).holds;
    if (!thick) return false;
  }
  return true;
}

struct Theorem439Report {
  std::size_t checked = 0;
  std::vector<std::size_t> failures;  // u in R(S) where the two sides differ
  bool ok() const { return failures.empty(); }
};

/// For u in R(S): u in K(S) iff for every A containing u, the set
/// {s in L(u) : s*u in A} is partially syndetic. Sweeps every A.
inline Theorem439Report theorem_4_39_check(const PartialSemigroup& s, const Limits& lim = {}) {
  require_cap(s.size(), lim, "theorem_4_39_check");
  Theorem439Report rep;
  const auto k = smallest_ideal(s);
  delta_r_finite(s).for_each([&](std::size_t u) {
    ++rep.checked;
    const bool lhs = k && k->test(u);
    bool rhs = true;
    for_each_subset(s.size(), lim.cap, [&](const SubsetMask& a) {
      if (!rhs || !a.test(u)) return;
      SubsetMask ret(s.size());
      s.left(u).for_each([&](std::size_t t) {
        if (a.test(static_cast<std::size_t>(s.product(t, u)))) ret.set(t);
      });
      rhs = is_partially_syndetic(s, ret).holds;
    });
    if (lhs != rhs) rep.failures.push_back(u);
  });
  return rep;
}

}  // namespace psg
