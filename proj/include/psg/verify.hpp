#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "psg/central.hpp"
#include "psg/core.hpp"
#include "psg/dynamics.hpp"
#include "psg/largeness.hpp"
#include "psg/structure.hpp"

namespace psg {

/// Outcome of one property on one instance. A skipped property had its
/// precondition unmet; `detail` says which.
struct PropertyResult {
  std::string name;
  bool ok = true;
  bool skipped = false;
  std::string detail;
};

inline bool suite_ok(const std::vector<PropertyResult>& rs) {
  for (const auto& r : rs)
    if (!r.ok) return false;
  return true;
}

namespace detail {

inline PropertyResult pass(std::string name, std::string detail = {}) { return {std::move(name), true, false, std::move(detail)}; }
inline PropertyResult fail(std::string name, std::string detail) { return {std::move(name), false, false, std::move(detail)}; }
inline PropertyResult skip(std::string name, std::string why) { return {std::move(name), true, true, std::move(why)}; }
inline PropertyResult check(std::string name, bool ok, std::string detail) { return {std::move(name), ok, false, std::move(detail)}; }

inline std::string count_of(std::size_t bad, std::size_t total, const char* what) {
  return std::to_string(bad) + " of " + std::to_string(total) + " " + what;
}

// Runs fn, turning a precondition error into a skipped result.
inline PropertyResult guarded(const std::string& name, const std::function<PropertyResult()>& fn) {
  try {
    return fn();
  } catch (const PreconditionError& e) {
    return skip(name, e.what());
  }
}

}  // namespace detail

inline std::vector<PropertyResult> verify_core(const PartialSemigroup& s, const Limits& lim = {}) {
  using namespace detail;
  require_cap(s.size(), lim, "verify core");
  std::vector<PropertyResult> out;
  const auto v = validate(s);
  out.push_back(check("weak-associativity", v.ok, count_of(v.violations.size(), s.size() * s.size() * s.size(), "triples violate")));

  std::size_t checked = 0, bad = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    s.right(a).for_each([&](std::size_t b) {
      const auto ab = static_cast<std::size_t>(s.product(a, b));
      for_each_subset(s.size(), lim.cap, [&](const SubsetMask& m) {
        ++checked;
        if (quotient_set(s, b, quotient_set(s, a, m)) != quotient_set(s, ab, m)) ++bad;
      });
    });
  out.push_back(check("quotient-composition", bad == 0, count_of(bad, checked, "(a, b, A) fail")));

  const auto ideals = enumerate_ideals(s, IdealSide::TwoSided, lim);
  const auto k = smallest_ideal(s);
  if (k) {
    bool below_all = true;
    for (const auto& i : ideals)
      if (!i.empty() && !k->is_subset_of(i)) below_all = false;
    out.push_back(check("smallest-ideal", is_ideal(s, *k) && below_all, "K = " + k->to_string()));
  } else {
    out.push_back(pass("smallest-ideal", "no smallest ideal: " + std::to_string(ideals.size()) + " ideals, empty intersection"));
  }
  const SubsetMask u = union_of_minimal_left_ideals(s);
  const bool k_is_union = k && *k == u;
  out.push_back(check("kernel-is-union-of-minimal-left-ideals", k_is_union,
                      "union = " + u.to_string() + (k ? ", K = " + k->to_string() : ", K absent")));
  return out;
}

inline std::vector<PropertyResult> verify_structure(const PartialSemigroup& s) {
  using namespace detail;
  std::vector<PropertyResult> out;
  const auto c29 = lemma_2_9_clauses(s);
  out.push_back(check("partial-group-clauses", c29.agree(), std::string("a=") + (c29.a ? "1" : "0") + " b=" + (c29.b ? "1" : "0") + " c=" + (c29.c ? "1" : "0")));
  out.push_back(check("partial-group-handedness", lemma_2_10_equivalence(s), ""));
  const auto cert = partial_group_check(s);
  out.push_back(check("partial-group-certificate", replay_certificate(s, cert), to_string(cert.kind)));
  out.push_back(guarded("group-right-zero-decomposition", [&] {
    auto r = decompose_1_40(s);
    if (!r.hypothesis_ok) return skip("group-right-zero-decomposition", r.failure_reason);
    return check("group-right-zero-decomposition", r.d.verified(), "G = " + r.d.G.to_string() + ", Y = " + r.d.Y.to_string());
  }));
  std::size_t corners = 0, bad = 0;
  for (const auto& l : minimal_left_ideals(s))
    (idempotents(s) & l).for_each([&](std::size_t e) {
      ++corners;
      if (!corner_group(s, l, e).corner_is_partial_group || !factor_through_idempotents(s, l, e).ok()) ++bad;
    });
  if (corners == 0) out.push_back(skip("corner-groups", "no idempotent in a minimal left ideal"));
  else out.push_back(check("corner-groups", bad == 0, count_of(bad, corners, "(L, e) fail")));
  const auto t = theorem_1_46_check(s);
  out.push_back(check("minimal-left-ideal-translates", t.ok(),
                      count_of(t.forward_failures + t.converse_failures, t.forward_checked + t.converse_checked, "checks fail")));
  return out;
}

inline std::vector<PropertyResult> verify_largeness(const PartialSemigroup& s, const Limits& lim = {}) {
  using namespace detail;
  require_cap(s.size(), lim, "verify largeness");
  std::vector<PropertyResult> out;
  std::size_t subsets = 0, dual = 0, replays = 0, char_a = 0, char_c = 0;
  const bool adequate = is_adequate(s);
  for_each_subset(s.size(), lim.cap, [&](const SubsetMask& a) {
    ++subsets;
    const auto rep = classify(s, a);
    if (!rep.duality_thick_vs_syndetic || !rep.duality_syndetic_vs_thick) ++dual;
    for (const auto& v : rep.verdicts)
      if (!replay(s, a, v)) ++replays;
    if (rep.verdict(Notion::PartiallyThick).holds != characterization_a(s, a)) ++char_a;
    if (adequate && is_partially_piecewise_syndetic(s, a, Reading::Left).holds != characterization_c(s, a, Side::Left, Thickness::C)) ++char_c;
  });
  out.push_back(check("thick-syndetic-duality", dual == 0, count_of(dual, subsets, "subsets fail")));
  out.push_back(check("witness-replay", replays == 0, count_of(replays, subsets * kAllNotions.size(), "verdicts fail replay")));
  out.push_back(check("characterization-a", char_a == 0, count_of(char_a, subsets, "subsets diverge")));
  if (!adequate) {
    out.push_back(skip("characterization-c", "instance is not adequate"));
    out.push_back(skip("kernel-membership", "instance is not adequate"));
  } else {
    out.push_back(check("characterization-c", char_c == 0, count_of(char_c, subsets, "subsets diverge")));
    const auto r = theorem_4_39_check(s, lim);
    out.push_back(check("kernel-membership", r.ok(), count_of(r.failures.size(), r.checked, "elements fail")));
  }
  return out;
}

inline std::vector<PropertyResult> verify_central(const PartialSemigroup& s, const Limits& lim = {}) {
  using namespace detail;
  std::vector<PropertyResult> out;
  out.push_back(guarded("dynamical-centrality", [&] {
    const auto r = theorem_19_27_check(s, lim);
    return check("dynamical-centrality", r.ok(),
                 count_of(r.failures.size(), r.subsets, "subsets fail") + "; " + std::to_string(r.central) + " central, " +
                     std::to_string(r.witnesses_verified) + " witnesses verified, " + std::to_string(r.candidates_refuted) + " candidates refuted");
  }));
  out.push_back(check("omega-shift-identity", lemma_19_14_check(s, lim), ""));
  return out;
}

inline std::vector<PropertyResult> verify_dynamics(const PartialDynSystem& d, const Limits& lim = {}) {
  using namespace detail;
  std::vector<PropertyResult> out;
  const auto v = validate_pspds(d);
  out.push_back(check("pspds-composition", v.composition_ok, std::to_string(v.violations.size()) + " violations"));
  std::string empty;
  for (auto s : v.empty_domains) empty += (empty.empty() ? "" : ", ") + d.S.name(s);
  out.push_back(check("pspds-domains-nonempty", v.domains_nonempty, empty.empty() ? "" : "empty: " + empty));
  const auto env = enveloping(d, lim);
  const auto ec = check_enveloping(env);
  out.push_back(check("enveloping-idempotents", ec.ok(), std::to_string(env.size()) + " maps"));
  out.push_back(check("enveloping-homomorphism", theta_is_homomorphism(d, env), ""));
  out.push_back(guarded("uniform-recurrence", [&] {
    const auto r = theorem_19_23_check(d);
    return check("uniform-recurrence", r.ok(), count_of(r.disagreements.size(), r.checked, "(x, L) disagree"));
  }));
  out.push_back(guarded("proximal-recurrent", [&] {
    const auto r = theorem_19_26_check(d);
    return check("proximal-recurrent", r.ok(), count_of(r.disagreements.size(), r.checked, "pairs disagree"));
  }));
  const auto rp = recurrent_proximal_check(d);
  out.push_back(check("recurrent-proximal-image", rp.ok(), count_of(rp.failures.size(), rp.checked, "points fail")));
  if (is_translation_system(d)) {
    const auto c = left_ideal_correspondence_report(d, lim);
    out.push_back(check("left-ideal-correspondence", c.ok(), ""));
  }
  return out;
}

// Properties of the translation system of S.
inline std::vector<PropertyResult> verify_translation(const PartialSemigroup& s, const Limits& lim = {}) {
  return verify_dynamics(translation_system(s), lim);
}

inline const std::vector<std::string>& semigroup_suites() {
  static const std::vector<std::string> v{"core", "structure", "largeness", "central", "translation", "all"};
  return v;
}

inline std::vector<PropertyResult> run_suite(const PartialSemigroup& s, const std::string& suite, const Limits& lim = {}) {
  if (suite == "core") return verify_core(s, lim);
  if (suite == "structure") return verify_structure(s);
  if (suite == "largeness") return verify_largeness(s, lim);
  if (suite == "central") return verify_central(s, lim);
  if (suite == "translation") return verify_translation(s, lim);
  if (suite == "all") {
    std::vector<PropertyResult> out;
    for (const auto& name : semigroup_suites()) {
      if (name == "all") continue;
      for (auto& r : run_suite(s, name, lim)) {
        r.name = name + "/" + r.name;
        out.push_back(std::move(r));
      }
    }
    return out;
  }
  throw PreconditionError("unknown suite '" + suite + "'");
}

}  // namespace psg
