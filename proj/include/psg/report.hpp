#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "psg/central.hpp"
#include "psg/core.hpp"
#include "psg/dynamics.hpp"
#include "psg/largeness.hpp"
#include "psg/structure.hpp"
#include "psg/verify.hpp"

namespace psg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct InputDigest {
  std::string path;
  std::string digest;
};

/// {schema_version, command, inputs: [{path, fnv1a64}], result}
inline Json envelope(const std::string& command, const std::vector<InputDigest>& inputs, Json result) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["inputs"] = Json::array();
  for (const auto& in : inputs) j["inputs"].push_back(Json{{"path", in.path}, {"fnv1a64", in.digest}});
  j["result"] = std::move(result);
  return j;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

inline bool all_scalars(const Json& a) {
  for (const auto& v : a)
    if (v.is_structured()) return false;
  return true;
}

inline void render(const Json& v, const std::string& key, std::string& out) {
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items()) render(sub, key.empty() ? k : key + "." + k, out);
    return;
  }
  if (v.is_array() && !all_scalars(v)) {
    if (v.empty()) out += key + ": []\n";
    for (std::size_t i = 0; i < v.size(); ++i) render(v[i], key + "[" + std::to_string(i) + "]", out);
    return;
  }
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    out += key + ": " + s + "]\n";
    return;
  }
  out += key + ": " + scalar_text(v) + "\n";
}

}  // namespace detail

/// One "key: value" line per leaf, with dotted paths for nesting and [i] for
/// array positions. Arrays of scalars stay on one line.
inline std::string render_human(const Json& report) {
  std::string out;
  detail::render(report, "", out);
  return out;
}

// ---- payload builders ----------------------------------------------------

inline Json to_json(const SubsetMask& m) { return Json(m.members()); }

inline Json opt_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const std::vector<SubsetMask>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

inline Json to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.ok;
  j["violations"] = Json::array();
  for (const auto& v : r.violations) j["violations"].push_back(Json{{"x", v.x}, {"y", v.y}, {"z", v.z}, {"kind", to_string(v.kind)}});
  return j;
}

inline Json to_json(const Witness& w) {
  Json j;
  j["vacuous"] = w.vacuous;
  j["u"] = w.u;
  j["x"] = w.x;
  j["steps"] = Json::array();
  for (const auto& st : w.steps) {
    Json row = Json::array();
    for (auto e : st)
      if (e != kNone) row.push_back(e);
    j["steps"].push_back(row);
  }
  j["skipped"] = to_json(w.skipped);
  return j;
}

inline Json to_json(const ClassificationReport& r) {
  Json j;
  j["subset"] = to_json(r.subset);
  j["verdicts"] = Json::object();
  for (const auto& v : r.verdicts) j["verdicts"][to_string(v.notion)] = Json{{"holds", v.holds}, {"witness", to_json(v.witness)}};
  j["implication_audit"] = Json::array();
  for (const auto& i : r.implication_audit) {
    j["implication_audit"].push_back(Json{{"premise", i.premise}, {"conclusion", i.conclusion}, {"antecedent", i.antecedent}, {"held", i.held}});
  }
  j["duality"] = Json{{"thick_vs_syndetic_complement", r.duality_thick_vs_syndetic}, {"syndetic_vs_thick_complement", r.duality_syndetic_vs_thick}};
  return j;
}

inline Json to_json(const PartialGroupCertificate& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["identity"] = opt_json(c.identity);
  j["inverse_map"] = Json::array();
  for (const auto& v : c.inverse_map) j["inverse_map"].push_back(opt_json(v));
  j["failure_witness"] = opt_json(c.failure_witness);
  return j;
}

inline Json to_json(const Decomposition140Result& r) {
  Json j;
  j["hypothesis_ok"] = r.hypothesis_ok;
  if (!r.hypothesis_ok) {
    j["failure_reason"] = r.failure_reason;
    j["failure_element"] = opt_json(r.failure_element);
    return j;
  }
  const auto& d = r.d;
  j["e"] = d.e;
  j["G"] = to_json(d.G);
  j["Y"] = to_json(d.Y);
  j["phi"] = Json::array();
  for (std::size_t k = 0; k < d.phi.size(); ++k) j["phi"].push_back(Json{{"g", d.phi_domain[k].first}, {"y", d.phi_domain[k].second}, {"image", d.phi[k]}});
  j["checks"] = Json{{"y_right_zero", d.y_right_zero},
                     {"g_partial_group", d.g_partial_group},
                     {"phi_injective", d.phi_injective},
                     {"phi_surjective", d.phi_surjective},
                     {"phi_homomorphism", d.phi_homomorphism}};
  j["verified"] = d.verified();
  return j;
}

inline Json to_json(const OmegaPoint& p) {
  Json j = Json::array();
  for (std::size_t t = 0; t < p.domain.width(); ++t) {
    const auto v = p.at(t);
    j.push_back(v ? Json(*v ? 1 : 0) : Json(nullptr));
  }
  return j;
}

inline Json to_json(const CentralWitness& w) {
  Json j;
  j["idempotent"] = w.idempotent;
  j["x"] = w.x;
  j["y"] = w.y;
  j["U"] = to_json(w.U);
  j["recovered_set"] = to_json(w.recovered_set);
  j["points"] = Json::array();
  for (const auto& p : w.points) j["points"].push_back(to_json(p));
  j["maps"] = Json::array();
  for (const auto& m : w.system.action) j["maps"].push_back(m.image());
  j["verified"] = verify_witness(w);
  return j;
}

inline Json to_json(const PspdsReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["composition_ok"] = r.composition_ok;
  j["domains_nonempty"] = r.domains_nonempty;
  j["points_acted_on"] = r.points_acted_on;
  j["strong_fip"] = r.strong_fip;
  j["violations"] = Json::array();
  for (const auto& v : r.violations) j["violations"].push_back(Json{{"s", v.s}, {"t", v.t}, {"x", v.x}, {"kind", v.kind}});
  j["empty_domains"] = r.empty_domains;
  j["idle_points"] = r.idle_points;
  return j;
}

inline Json to_json(const std::vector<PropertyResult>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(Json{{"name", r.name}, {"status", r.skipped ? "skipped" : (r.ok ? "pass" : "fail")}, {"detail", r.detail}});
  return a;
}

}  // namespace psg
