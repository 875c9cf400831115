#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psg/core.hpp"
#include "psg/dynamics.hpp"

namespace psg {

/// S plus a fresh two-sided identity e at index size(). Undefined entries stay undefined.
inline PartialSemigroup adjoin_identity(const PartialSemigroup& s) {
  const std::size_t n = s.size();
  const std::size_t m = n + 1;
  std::vector<Elem> t(m * m, kUndefined);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) t[x * m + y] = s.product(x, y);
    t[n * m + x] = static_cast<Elem>(x);
    t[x * m + n] = static_cast<Elem>(x);
  }
  t[n * m + n] = static_cast<Elem>(n);
  std::vector<std::string> names;
  if (s.has_names()) {
    names = s.names();
    names.push_back("e");
  }
  PartialSemigroup a(m, std::move(t), std::move(names));
  if (!is_valid(a)) throw InternalError("adjoin_identity produced an invalid table");
  return a;
}

// B contains a minimal idempotent.
inline bool is_central(const PartialSemigroup& s, const SubsetMask& b) {
  if (b.width() != s.size()) throw StructuralError("is_central: mask width mismatch");
  return b.intersects(minimal_idempotents(s));
}

/// A 0/1-valued function on a nonempty subset of A = S u {e}.
struct OmegaPoint {
  SubsetMask domain;
  SubsetMask values;  // bits only inside domain

  std::optional<bool> at(std::size_t t) const {
    if (!domain.test(t)) return std::nullopt;
    return values.test(t);
  }
  friend bool operator==(const OmegaPoint&, const OmegaPoint&) = default;
  friend auto operator<=>(const OmegaPoint&, const OmegaPoint&) = default;
};

/// The shift action on Omega over A = adjoin_identity(S). For s in S,
/// T_s(f) is defined when Dom(f) contains L_A(s)*s, and then has domain
/// L_A(s) with T_s(f)(t) = f(t*s).
class OmegaAction {
 public:
  explicit OmegaAction(const PartialSemigroup& s) : n_(s.size()), a_(adjoin_identity(s)) {
    for (std::size_t x = 0; x < n_; ++x) {
      need_.push_back(set_product(a_, a_.left(x), singleton(a_, x)));
    }
  }

  const PartialSemigroup& extended() const { return a_; }
  std::size_t identity() const { return n_; }

  std::optional<OmegaPoint> apply(std::size_t s, const OmegaPoint& f) const {
    if (!need_[s].is_subset_of(f.domain)) return std::nullopt;
    OmegaPoint g{a_.left(s), SubsetMask(n_ + 1)};
    a_.left(s).for_each([&](std::size_t t) {
      if (f.values.test(static_cast<std::size_t>(a_.product(t, s)))) g.values.set(t);
    });
    return g;
  }

  // chi_B on all of A, with value 0 at e.
  OmegaPoint characteristic(const SubsetMask& b) const {
    OmegaPoint x{SubsetMask::full(n_ + 1), SubsetMask(n_ + 1)};
    b.for_each([&](std::size_t t) { x.values.set(t); });
    return x;
  }

 private:
  std::size_t n_;
  PartialSemigroup a_;
  std::vector<SubsetMask> need_;
};

/// The orbit-closure of one Omega point, as a finite dynamical system over S.
/// Point 0 is the starting point.
struct OmegaSystem {
  PartialDynSystem system;
  std::vector<OmegaPoint> points;
};

inline OmegaSystem omega_system(const PartialSemigroup& s, const OmegaPoint& start, const Limits& lim = {}) {
  OmegaAction act(s);
  std::vector<OmegaPoint> pts{start};
  std::map<OmegaPoint, std::size_t> index{{start, 0}};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t el = 0; el < s.size(); ++el) {
      auto g = act.apply(el, pts[i]);
      if (!g || index.count(*g)) continue;
      if (pts.size() >= lim.enveloping_cap) throw CapExceeded("omega orbit closure exceeded cap");
      index.emplace(*g, pts.size());
      pts.push_back(*g);
    }
  std::vector<PartialMap> maps(s.size(), PartialMap(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t el = 0; el < s.size(); ++el)
      if (auto g = act.apply(el, pts[i])) maps[el].set(i, static_cast<Point>(index.at(*g)));
  OmegaSystem out{PartialDynSystem(s, pts.size(), std::move(maps)), std::move(pts)};
  return out;
}

struct CentralWitness {
  PartialDynSystem system;
  std::vector<OmegaPoint> points;
  std::size_t x = 0;
  std::size_t y = 0;
  SubsetMask U;              // over system points
  SubsetMask recovered_set;  // {s : T_s(x) in U}
  std::size_t idempotent = 0;
};

struct WitnessResult {
  std::optional<CentralWitness> witness;
  std::string failure;
};

/// Builds the witness from x = chi_B: picks the least minimal idempotent u in
/// B, sets y = T_u(x) and U = {z : z(e) = y(e)}, then replays every clause.
inline WitnessResult build_omega_witness(const PartialSemigroup& s, const SubsetMask& b, const Limits& lim = {}) {
  WitnessResult r;
  const SubsetMask mi = minimal_idempotents(s) & b;
  if (mi.empty()) {
    r.failure = "set is not central: it contains no minimal idempotent";
    return r;
  }
  OmegaAction act(s);
  OmegaSystem om = omega_system(s, act.characteristic(b), lim);
  CentralWitness w{std::move(om.system), std::move(om.points), 0, 0, {}, {}, mi.first()};
  const Point y = w.system.T(w.idempotent, 0);
  if (y == kNoPoint) throw InternalError("build_omega_witness: minimal idempotent does not act on chi_B");
  w.y = static_cast<std::size_t>(y);
  const std::size_t e = act.identity();
  const auto ye = w.points[w.y].at(e);
  w.U = SubsetMask(w.points.size());
  for (std::size_t z = 0; z < w.points.size(); ++z)
    if (w.points[z].at(e) == ye) w.U.set(z);
  w.recovered_set = visit_set(w.system, 0, w.U);
  if (ye != std::optional<bool>(true) || !is_uniformly_recurrent(w.system, w.y) || !is_proximal(w.system, 0, w.y) || w.recovered_set != b) {
    throw InternalError("build_omega_witness: replay failed for a central set");
  }
  r.witness = std::move(w);
  return r;
}

/// Re-evaluates the three clauses from scratch: y uniformly recurrent, x and
/// y proximal, U contains y, and the visit set of x in U equals recovered_set.
inline bool verify_witness(const CentralWitness& w) {
  const PartialDynSystem& d = w.system;
  if (w.x >= d.points || w.y >= d.points || w.U.width() != d.points) throw StructuralError("verify_witness: witness does not match its system");
  if (w.recovered_set.width() != d.S.size()) throw StructuralError("verify_witness: recovered set width mismatch");
  if (!w.U.test(w.y)) return false;
  if (!is_uniformly_recurrent(d, w.y)) return false;
  if (!is_proximal(d, w.x, w.y)) return false;
  return visit_set(d, w.x, w.U) == w.recovered_set;
}

struct Theorem1927Report {
  std::size_t subsets = 0;
  std::size_t central = 0;
  std::size_t witnesses_verified = 0;
  std::size_t candidates_refuted = 0;  // candidate (y, U) pairs that do not recover B
  std::vector<SubsetMask> failures;
  bool ok() const { return failures.empty(); }
};

/// Sweeps every B. Central B must yield a verified witness. For every B, each
/// candidate witness over the Omega system of chi_B (any uniformly recurrent
/// y proximal to x, with U = {y} or U = {z : z(e) = y(e)}) that recovers B
/// must come from a minimal idempotent u in B with T_u(x) = y.
inline Theorem1927Report theorem_19_27_check(const PartialSemigroup& s, const Limits& lim = {}) {
  require_cap(s.size(), lim, "theorem_19_27_check");
  require_recurrence_setting(s, "theorem_19_27_check");
  Theorem1927Report rep;
  const SubsetMask mi = minimal_idempotents(s);
  OmegaAction act(s);
  const std::size_t e = act.identity();
  for_each_subset(s.size(), lim.cap, [&](const SubsetMask& b) {
    ++rep.subsets;
    bool failed = false;
    if (b.intersects(mi)) {
      ++rep.central;
      try {
        auto w = build_omega_witness(s, b, lim);
        if (w.witness && verify_witness(*w.witness)) ++rep.witnesses_verified;
        else failed = true;
      } catch (const InternalError&) {
        failed = true;
      }
    }
    OmegaSystem om = omega_system(s, act.characteristic(b), lim);
    const PartialDynSystem& d = om.system;
    for (std::size_t y = 0; y < d.points && !failed; ++y) {
      if (!is_uniformly_recurrent(d, y) || !is_proximal(d, 0, y)) continue;
      SubsetMask by_value(d.points);
      for (std::size_t z = 0; z < d.points; ++z)
        if (om.points[z].at(e) == om.points[y].at(e)) by_value.set(z);
      for (const SubsetMask& u : {SubsetMask(d.points, {y}), by_value}) {
        if (visit_set(d, 0, u) != b) {
          ++rep.candidates_refuted;
          continue;
        }
        bool traced = false;
        (mi & b).for_each([&](std::size_t i) { traced = traced || d.T(i, 0) == static_cast<Point>(y); });
        if (!traced) failed = true;
      }
    }
    if (failed) rep.failures.push_back(b);
  });
  return rep;
}

/// Principal case of the ultrafilter identity: for u in R(s),
/// T_u(f)(s) = f(s*u) whenever T_u(f) is defined. Sweeps every f with full
/// domain on A.
inline bool lemma_19_14_check(const PartialSemigroup& s, const Limits& lim = {}) {
  require_cap(s.size() + 1, lim, "lemma_19_14_check");
  OmegaAction act(s);
  const PartialSemigroup& a = act.extended();
  bool ok = true;
  for_each_subset(s.size() + 1, lim.cap, [&](const SubsetMask& vals) {
    OmegaPoint f{SubsetMask::full(s.size() + 1), vals};
    for (std::size_t u = 0; u < s.size(); ++u) {
      auto g = act.apply(u, f);
      if (!g) continue;
      a.left(u).for_each([&](std::size_t t) {
        if (g->at(t) != std::optional<bool>(vals.test(static_cast<std::size_t>(a.product(t, u))))) ok = false;
      });
    }
  });
  return ok;
}

}  // namespace psg
