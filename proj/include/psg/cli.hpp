#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psg/families.hpp"
#include "psg/io.hpp"
#include "psg/report.hpp"
#include "psg/verify.hpp"

namespace psg {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // a check command found the property false
  kExitUsage = 2,
  kExitInput = 3,  // parse or validation failure
  kExitCap = 4,
  kExitInternal = 5,  // a construction failed its own replay (a bug)
};

namespace cli {

// Input rejected by validation. The validation report (command "validate")
// goes to stdout and the exit code is 3.
struct InvalidInput {
  Json report;
  std::string message;
};

struct Options {
  bool json = false;
  bool no_validate = false;
  std::size_t cap = 0;
  std::uint64_t seed = 1;
  Limits limits;
};

struct Loaded {
  PartialSemigroup S;
  std::vector<InputDigest> inputs;
};

struct LoadedSystem {
  PartialDynSystem D;
  std::vector<InputDigest> inputs;
};

inline Loaded load_semigroup(const std::string& path, const Options& opt, const std::string& command) {
  const std::string text = detail::read_file(path);
  Loaded l{parse_psg(text), {{path, fnv1a64(text)}}};
  if (!opt.no_validate) {
    auto v = validate(l.S);
    if (!v.ok) {
      Json r = to_json(v);
      r["size"] = l.S.size();
      throw InvalidInput{envelope("validate", l.inputs, r), command + ": " + path + ": not weakly associative (" + std::to_string(v.violations.size()) + " violating triples)"};
    }
  }
  return l;
}

inline LoadedSystem load_system(const std::string& path, const Options& opt, const std::string& command) {
  const std::string text = detail::read_file(path);
  std::vector<InputDigest> inputs{{path, fnv1a64(text)}};
  const auto base = std::filesystem::path(path).parent_path();
  auto doc = parse_pds(text, [&](const std::string& rel) {
    const auto p = (base / rel).string();
    const std::string st = detail::read_file(p);
    inputs.push_back({p, fnv1a64(st)});
    auto s = parse_psg(st);
    if (!opt.no_validate && !is_valid(s)) throw ParseError(p + ": semigroup is not weakly associative");
    return s;
  });
  LoadedSystem l{std::move(doc.system), std::move(inputs)};
  if (!opt.no_validate) {
    auto v = validate_pspds(l.D);
    if (!v.ok()) throw InvalidInput{envelope(command, l.inputs, Json{{"validation", to_json(v)}}), path + ": not a partial dynamical system"};
  }
  return l;
}

inline SubsetMask subset_arg(const PartialSemigroup& s, const std::string& spec) {
  return parse_subset(spec, s.size(), [&](const std::string& nm) { return s.index_of(nm); });
}

inline std::string emit(const Json& report, const Options& opt) { return opt.json ? report.dump(2) + "\n" : render_human(report); }

inline Json analyze(const PartialSemigroup& s) {
  Json r;
  r["size"] = s.size();
  std::vector<std::string> names;
  for (std::size_t x = 0; x < s.size(); ++x) names.push_back(s.name(x));
  r["names"] = names;
  r["total"] = s.is_total();
  r["right_sets"] = Json::array();
  r["left_sets"] = Json::array();
  for (std::size_t x = 0; x < s.size(); ++x) {
    r["right_sets"].push_back(to_json(s.right(x)));
    r["left_sets"].push_back(to_json(s.left(x)));
  }
  r["right_adequate"] = is_right_adequate(s);
  r["left_adequate"] = is_left_adequate(s);
  r["delta_r"] = to_json(delta_r_finite(s));
  r["idempotents"] = to_json(idempotents(s));
  r["minimal_left_ideals"] = to_json(minimal_left_ideals(s));
  r["union_of_minimal_left_ideals"] = to_json(union_of_minimal_left_ideals(s));
  const auto k = smallest_ideal(s);
  r["smallest_ideal"] = k ? to_json(*k) : Json(nullptr);
  r["minimal_idempotents"] = to_json(minimal_idempotents(s));
  return r;
}

inline std::size_t size_param(const std::vector<std::string>& p, std::size_t i, const std::string& family) {
  if (i >= p.size()) throw PreconditionError(family + ": missing parameter " + std::to_string(i + 1));
  const auto& t = p[i];
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 9) {
    throw PreconditionError(family + ": parameter '" + t + "' is not a small non-negative integer");
  }
  return static_cast<std::size_t>(std::stoul(t));
}

inline void expect_params(const std::vector<std::string>& p, std::size_t lo, std::size_t hi, const std::string& family) {
  if (p.size() < lo || p.size() > hi) {
    throw PreconditionError(family + ": expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) + " parameters, got " +
                            std::to_string(p.size()));
  }
}

struct FamilyOutput {
  std::optional<PartialSemigroup> S;
  std::optional<PartialDynSystem> D;
};

inline FamilyOutput build_family(const std::string& name, const std::vector<std::string>& p, const Options& opt) {
  using Gen = std::function<PartialSemigroup(std::size_t)>;
  static const std::map<std::string, Gen> one_param{
      {"pf-disjoint-union", pf_disjoint_union}, {"fp-sequence", fp_sequence},   {"bounded-words", bounded_words},
      {"bounded-addition", bounded_addition},   {"right-zero", right_zero},     {"cyclic-group", cyclic_group},
      {"zero-semigroup", zero_semigroup},
  };
  FamilyOutput f;
  if (auto it = one_param.find(name); it != one_param.end()) {
    expect_params(p, 1, 1, name);
    const std::size_t n = size_param(p, 0, name);
    if (n == 0 || n > 4096) throw PreconditionError(name + ": size must be in 1..4096");
    f.S = it->second(n);
  } else if (name == "left-group") {
    expect_params(p, 2, 2, name);
    const std::size_t g = size_param(p, 0, name), r = size_param(p, 1, name);
    if (g == 0 || r == 0 || g * r > 4096) throw PreconditionError(name + ": need g, r >= 1 with g*r <= 4096");
    f.S = left_group(g, r);
  } else if (name == "random-partial") {
    expect_params(p, 2, 3, name);
    const std::size_t n = size_param(p, 0, name);
    double density = 0;
    try {
      std::size_t used = 0;
      density = std::stod(p[1], &used);
      if (used != p[1].size()) throw std::invalid_argument(p[1]);
    } catch (const std::exception&) {
      throw PreconditionError(name + ": density '" + p[1] + "' is not a number");
    }
    const std::uint64_t seed = p.size() == 3 ? size_param(p, 2, name) : opt.seed;
    f.S = random_partial(n, density, seed);
  } else if (name == "bounded-words-shift-system") {
    expect_params(p, 1, 1, name);
    f.D = bounded_words_shift_system(size_param(p, 0, name));
  } else if (name == "pf-translation-system") {
    if (p.size() < 2) throw PreconditionError(name + ": expected n m f(1) ... f(n)");
    const std::size_t n = size_param(p, 0, name), m = size_param(p, 1, name);
    std::vector<std::int64_t> shifts;
    for (std::size_t i = 2; i < p.size(); ++i) {
      try {
        std::size_t used = 0;
        shifts.push_back(std::stoll(p[i], &used));
        if (used != p[i].size()) throw std::invalid_argument(p[i]);
      } catch (const std::exception&) {
        throw PreconditionError(name + ": shift '" + p[i] + "' is not an integer");
      }
    }
    f.D = pf_translation_system(n, m, shifts);
  } else {
    throw PreconditionError("unknown family '" + name + "'");
  }
  return f;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw PreconditionError("cannot write " + p.string());
  f << text;
  if (!f) throw PreconditionError("write failed: " + p.string());
}

}  // namespace cli

/// Runs the tool with `args` (program name excluded). The report is written to
/// `out` in one piece; diagnostics go to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli;
  Options opt;

  CLI::App app{"Finite partial semigroup toolkit", "psg"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json, "Emit the JSON report");
  app.add_option("--cap", opt.cap, "Largest size for exhaustive sweeps (overrides PSG_CAP)")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for random generation");
  app.add_flag("--no-validate", opt.no_validate, "Skip input validation");

  std::string file, set_spec, reading = "right", suite = "all", family, output;
  std::vector<std::string> params;
  bool orbits = false, recurrent = false, proximal = false, env = false;

  auto sub = [&](const char* name, const char* desc) {
    auto* c = app.add_subcommand(name, desc);
    c->fallthrough();
    return c;
  };
  auto* validate_cmd = sub("validate", "Check weak associativity");
  validate_cmd->add_option("file", file, ".psg file")->required();
  auto* analyze_cmd = sub("analyze", "Composability sets, idempotents and ideals");
  analyze_cmd->add_option("file", file, ".psg file")->required();
  auto* decompose_cmd = sub("decompose", "Group-by-right-zero decomposition and partial-group certificate");
  decompose_cmd->add_option("file", file, ".psg file")->required();
  auto* classify_cmd = sub("classify", "Largeness verdicts for a subset");
  classify_cmd->add_option("file", file, ".psg file")->required();
  classify_cmd->add_option("--set", set_spec, "Subset: indices or names, comma separated, or 0xHEX")->required();
  classify_cmd->add_option("--reading", reading, "Piecewise syndetic reading")->check(CLI::IsMember({"right", "left"}));
  auto* central_cmd = sub("central", "Centrality with a dynamical witness");
  central_cmd->add_option("file", file, ".psg file")->required();
  central_cmd->add_option("--set", set_spec, "Subset: indices or names, comma separated, or 0xHEX")->required();
  auto* dynamics_cmd = sub("dynamics", "Analyze a partial dynamical system");
  dynamics_cmd->add_option("file", file, ".pds file")->required();
  dynamics_cmd->add_flag("--orbits", orbits, "Orbits and minimal subsystems");
  dynamics_cmd->add_flag("--recurrent", recurrent, "Uniformly recurrent points");
  dynamics_cmd->add_flag("--proximal", proximal, "Proximal pairs");
  dynamics_cmd->add_flag("--enveloping", env, "Enveloping semigroup");
  auto* family_cmd = sub("family", "Generate a family member");
  family_cmd->add_option("name", family, "Family name")->required();
  family_cmd->add_option("params", params, "Family parameters");
  family_cmd->add_option("-o,--output", output, "Output file (.psg, or .pds for systems)");
  auto* verify_cmd = sub("verify", "Run theorem-verification properties on an instance");
  verify_cmd->add_option("file", file, ".psg or .pds file")->required();
  verify_cmd->add_option("--suite", suite, "Suite name")->check(CLI::IsMember({"core", "structure", "largeness", "central", "translation", "dynamics", "all"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  opt.limits = Limits::from_env();
  if (opt.cap) opt.limits.cap = opt.cap;
  const Limits& lim = opt.limits;

  std::string text;
  int code = kExitOk;
  try {
    if (*validate_cmd) {
      const std::string raw = detail::read_file(file);
      const auto s = parse_psg(raw);
      const auto v = validate(s);
      Json r = to_json(v);
      r["size"] = s.size();
      text = emit(envelope("validate", {{file, fnv1a64(raw)}}, r), opt);
      code = v.ok ? kExitOk : kExitInput;
    } else if (*analyze_cmd) {
      auto l = load_semigroup(file, opt, "analyze");
      text = emit(envelope("analyze", l.inputs, analyze(l.S)), opt);
    } else if (*decompose_cmd) {
      auto l = load_semigroup(file, opt, "decompose");
      const auto d = decompose_1_40(l.S);
      Json r;
      r["partial_group"] = to_json(partial_group_check(l.S));
      r["decomposition"] = to_json(d);
      text = emit(envelope("decompose", l.inputs, r), opt);
      code = d.hypothesis_ok && d.d.verified() ? kExitOk : kExitNegative;
    } else if (*classify_cmd) {
      auto l = load_semigroup(file, opt, "classify");
      const auto a = subset_arg(l.S, set_spec);
      const auto rep = classify(l.S, a, reading == "left" ? Reading::Left : Reading::Right);
      Json r;
      r["reading"] = reading;
      const Json body = to_json(rep);
      for (const auto& [k, v] : body.items()) r[k] = v;
      text = emit(envelope("classify", l.inputs, r), opt);
      code = rep.duality_thick_vs_syndetic && rep.duality_syndetic_vs_thick ? kExitOk : kExitNegative;
    } else if (*central_cmd) {
      auto l = load_semigroup(file, opt, "central");
      const auto b = subset_arg(l.S, set_spec);
      const bool c = is_central(l.S, b);
      Json r;
      r["subset"] = to_json(b);
      r["central"] = c;
      r["minimal_idempotents"] = to_json(minimal_idempotents(l.S));
      auto w = build_omega_witness(l.S, b, lim);
      if (w.witness) r["witness"] = to_json(*w.witness);
      else r["failure"] = w.failure;
      text = emit(envelope("central", l.inputs, r), opt);
      code = c ? kExitOk : kExitNegative;
    } else if (*dynamics_cmd) {
      auto l = load_system(file, opt, "dynamics");
      const auto& d = l.D;
      Json r;
      r["points"] = d.points;
      r["elements"] = d.S.size();
      r["translation_system"] = is_translation_system(d);
      r["validation"] = to_json(validate_pspds(d));
      if (orbits) {
        r["orbits"] = Json::array();
        for (std::size_t x = 0; x < d.points; ++x) r["orbits"].push_back(to_json(orbit(d, x)));
        r["minimal_subsystems"] = to_json(minimal_subsystems(d));
      }
      if (recurrent) r["uniformly_recurrent"] = to_json(uniformly_recurrent_points(d));
      if (proximal) {
        r["proximal_pairs"] = Json::array();
        for (auto [x, y] : proximal_pairs(d)) r["proximal_pairs"].push_back(Json{{"x", x}, {"y", y}, {"s", *proximality_witness(d, x, y)}});
      }
      if (env) {
        const auto e = enveloping(d, lim);
        const auto c = check_enveloping(e);
        Json ej;
        ej["size"] = e.size();
        ej["infinity"] = d.points;
        ej["maps"] = Json::array();
        for (const auto& m : e.elements) ej["maps"].push_back(m.values());
        ej["generator_index"] = e.generator_index;
        ej["checks"] = Json{{"closed", c.closed},
                            {"has_idempotent", c.has_idempotent},
                            {"minimal_left_ideals_have_idempotents", c.minimal_left_ideals_have_idempotents},
                            {"every_power_cycle_has_idempotent", c.every_power_cycle_has_idempotent}};
        r["enveloping"] = ej;
      }
      text = emit(envelope("dynamics", l.inputs, r), opt);
    } else if (*family_cmd) {
      auto f = build_family(family, params, opt);
      Json r;
      r["family"] = family;
      r["params"] = params;
      if (f.S) {
        const std::string body = emit_psg(*f.S);
        if (output.empty()) {
          text = body;
        } else {
          write_text(output, body);
          r["output"] = output;
          r["size"] = f.S->size();
          r["valid"] = is_valid(*f.S);
          text = emit(envelope("family", {}, r), opt);
        }
      } else {
        if (output.empty()) throw PreconditionError(family + " is a dynamical system: give -o <file.pds>");
        std::filesystem::path pds(output);
        std::filesystem::path psg_path = pds;
        psg_path.replace_extension(".psg");
        if (psg_path == pds) psg_path += ".psg";
        write_text(psg_path, emit_psg(f.D->S));
        write_text(pds, emit_pds(*f.D, psg_path.filename().string()));
        r["output"] = output;
        r["semigroup_output"] = psg_path.string();
        r["points"] = f.D->points;
        r["elements"] = f.D->S.size();
        r["valid"] = validate_pspds(*f.D).ok();
        text = emit(envelope("family", {}, r), opt);
      }
    } else if (*verify_cmd) {
      std::vector<PropertyResult> rs;
      std::vector<InputDigest> inputs;
      if (std::filesystem::path(file).extension() == ".pds") {
        if (suite != "dynamics" && suite != "all") throw PreconditionError("suite '" + suite + "' needs a .psg file");
        auto l = load_system(file, opt, "verify");
        inputs = l.inputs;
        rs = verify_dynamics(l.D, lim);
      } else {
        if (suite == "dynamics") throw PreconditionError("suite 'dynamics' needs a .pds file");
        auto l = load_semigroup(file, opt, "verify");
        inputs = l.inputs;
        rs = run_suite(l.S, suite, lim);
      }
      Json r;
      r["suite"] = suite;
      r["ok"] = suite_ok(rs);
      r["properties"] = to_json(rs);
      text = emit(envelope("verify", inputs, r), opt);
      code = suite_ok(rs) ? kExitOk : kExitNegative;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.message << "\n";
    out << emit(e.report, opt);
    return kExitInput;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  out << text;
  return code;
}

}  // namespace psg
