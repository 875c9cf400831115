#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "psg/core.hpp"
#include "psg/dynamics.hpp"

namespace psg {

/// Error in .psg / .pds text, with a 1-based line number when known.
class ParseError : public StructuralError {
 public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : StructuralError(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Tokenized non-blank lines, with '#' comments removed.
inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    Line l{no, {}};
    std::string tok;
    while (ls >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

inline std::size_t parse_count(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) throw ParseError("expected a non-negative integer, got '" + tok + "'", line);
  try {
    return static_cast<std::size_t>(std::stoull(tok));
  } catch (const std::exception&) {
    throw ParseError("integer out of range: '" + tok + "'", line);
  }
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw ParseError("cannot open " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Parses the .psg format:
///   psg 1
///   n <size>
///   [names <s0> ... <s_{n-1}>]
///   <n rows of n tokens, each an element index or '.'>
/// Shape is checked here; weak associativity is left to validate().
inline PartialSemigroup parse_psg(const std::string& text) {
  const auto lines = detail::tokenize(text);
  std::size_t i = 0;
  auto expect = [&](const char* what) -> const detail::Line& {
    if (i >= lines.size()) throw ParseError(std::string("unexpected end of input, expected ") + what);
    return lines[i++];
  };
  const auto& h = expect("header");
  if (h.tokens != std::vector<std::string>{"psg", "1"}) throw ParseError("expected header 'psg 1'", h.number);
  const auto& nl = expect("size line");
  if (nl.tokens.size() != 2 || nl.tokens[0] != "n") throw ParseError("expected 'n <size>'", nl.number);
  const std::size_t n = detail::parse_count(nl.tokens[1], nl.number);
  if (n == 0) throw ParseError("size must be positive", nl.number);
  std::vector<std::string> names;
  if (i < lines.size() && lines[i].tokens[0] == "names") {
    const auto& l = lines[i++];
    names.assign(l.tokens.begin() + 1, l.tokens.end());
    if (names.size() != n) throw ParseError("names line has " + std::to_string(names.size()) + " entries, expected " + std::to_string(n), l.number);
  }
  std::vector<Elem> t;
  t.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& l = expect("table row");
    if (l.tokens.size() != n) throw ParseError("row has " + std::to_string(l.tokens.size()) + " entries, expected " + std::to_string(n), l.number);
    for (const auto& tok : l.tokens) {
      if (tok == ".") {
        t.push_back(kUndefined);
        continue;
      }
      const std::size_t v = detail::parse_count(tok, l.number);
      if (v >= n) throw ParseError("entry " + tok + " out of range", l.number);
      t.push_back(static_cast<Elem>(v));
    }
  }
  if (i != lines.size()) throw ParseError("trailing content", lines[i].number);
  return PartialSemigroup(n, std::move(t), std::move(names));
}

// Canonical text: no comments, single spaces, trailing newline.
inline std::string emit_psg(const PartialSemigroup& s) {
  std::string out = "psg 1\nn " + std::to_string(s.size()) + "\n";
  if (s.has_names()) {
    out += "names";
    for (const auto& nm : s.names()) out += " " + nm;
    out += "\n";
  }
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t y = 0; y < s.size(); ++y) {
      if (y) out += ' ';
      const Elem v = s.product(x, y);
      out += v == kUndefined ? std::string(".") : std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

inline PartialSemigroup load_psg(const std::filesystem::path& p) { return parse_psg(detail::read_file(p)); }

struct PdsDocument {
  std::string semigroup_path;  // as written in the file
  PartialDynSystem system;
};

using SemigroupLoader = std::function<PartialSemigroup(const std::string&)>;

/// Parses the .pds format:
///   pds 1
///   semigroup <relative-path>
///   points <m>
///   [pointnames <p0> ... <p_{m-1}>]
///   map <s>: <m tokens, each a point index or '.'>     (one line per element)
/// `<s>` is an element name, or an index when no name matches. emit_pds
/// writes names, so numeric names round-trip. The loader resolves the semigroup path.
inline PdsDocument parse_pds(const std::string& text, const SemigroupLoader& loader) {
  const auto lines = detail::tokenize(text);
  std::size_t i = 0;
  auto expect = [&](const char* what) -> const detail::Line& {
    if (i >= lines.size()) throw ParseError(std::string("unexpected end of input, expected ") + what);
    return lines[i++];
  };
  const auto& h = expect("header");
  if (h.tokens != std::vector<std::string>{"pds", "1"}) throw ParseError("expected header 'pds 1'", h.number);
  const auto& sl = expect("semigroup line");
  if (sl.tokens.size() != 2 || sl.tokens[0] != "semigroup") throw ParseError("expected 'semigroup <path>'", sl.number);
  PdsDocument doc;
  doc.semigroup_path = sl.tokens[1];
  PartialSemigroup s = loader(doc.semigroup_path);
  const auto& pl = expect("points line");
  if (pl.tokens.size() != 2 || pl.tokens[0] != "points") throw ParseError("expected 'points <m>'", pl.number);
  const std::size_t m = detail::parse_count(pl.tokens[1], pl.number);
  if (m == 0) throw ParseError("point count must be positive", pl.number);
  std::vector<std::string> pnames;
  if (i < lines.size() && lines[i].tokens[0] == "pointnames") {
    const auto& l = lines[i++];
    pnames.assign(l.tokens.begin() + 1, l.tokens.end());
    if (pnames.size() != m) throw ParseError("pointnames has " + std::to_string(pnames.size()) + " entries, expected " + std::to_string(m), l.number);
  }
  std::vector<PartialMap> maps(s.size());
  std::vector<bool> seen(s.size(), false);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& l = expect("map line");
    if (l.tokens.size() != m + 2 || l.tokens[0] != "map" || l.tokens[1].empty() || l.tokens[1].back() != ':') {
      throw ParseError("expected 'map <s>: ' followed by " + std::to_string(m) + " entries", l.number);
    }
    const std::string key = l.tokens[1].substr(0, l.tokens[1].size() - 1);
    std::size_t el = 0;
    if (auto byname = s.index_of(key)) el = *byname;
    else el = detail::parse_count(key, l.number);
    if (el >= s.size()) throw ParseError("element " + key + " out of range", l.number);
    if (seen[el]) throw ParseError("duplicate map for element " + key, l.number);
    seen[el] = true;
    PartialMap f(m);
    for (std::size_t x = 0; x < m; ++x) {
      const auto& tok = l.tokens[x + 2];
      if (tok == ".") continue;
      const std::size_t v = detail::parse_count(tok, l.number);
      if (v >= m) throw ParseError("point " + tok + " out of range", l.number);
      f.set(x, static_cast<Point>(v));
    }
    maps[el] = std::move(f);
  }
  if (i != lines.size()) throw ParseError("trailing content", lines[i].number);
  doc.system = PartialDynSystem(std::move(s), m, std::move(maps), std::move(pnames));
  return doc;
}

inline std::string emit_pds(const PartialDynSystem& d, const std::string& semigroup_path) {
  std::string out = "pds 1\nsemigroup " + semigroup_path + "\npoints " + std::to_string(d.points) + "\n";
  if (!d.point_names.empty()) {
    out += "pointnames";
    for (const auto& nm : d.point_names) out += " " + nm;
    out += "\n";
  }
  for (std::size_t s = 0; s < d.S.size(); ++s) {
    out += "map " + d.S.name(s) + ":";
    for (std::size_t x = 0; x < d.points; ++x) {
      const Point v = d.T(s, x);
      out += " " + (v == kNoPoint ? std::string(".") : std::to_string(v));
    }
    out += '\n';
  }
  return out;
}

// Resolves the semigroup path relative to the .pds file's directory.
inline PdsDocument load_pds(const std::filesystem::path& p) {
  const auto base = p.parent_path();
  return parse_pds(detail::read_file(p), [&](const std::string& rel) { return load_psg(base / rel); });
}

/// Subset literal: "" or "{}" for the empty set, comma-separated indices or
/// names, or 0xHEX with bit i for element i. A spec that is itself an element
/// name (such as "{1,2}") denotes that singleton.
inline SubsetMask parse_subset(const std::string& spec, std::size_t width, const std::function<std::optional<std::size_t>(const std::string&)>& by_name = {}) {
  SubsetMask m(width);
  std::string s = spec;
  if (s == "{}" || s.empty()) return m;
  if (by_name)
    if (auto whole = by_name(s)) {
      m.set(*whole);
      return m;
    }
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    const std::string hex = s.substr(2);
    if (hex.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) throw ParseError("bad hex subset '" + spec + "'");
    for (std::size_t k = 0; k < hex.size(); ++k) {
      const char c = hex[hex.size() - 1 - k];
      const int v = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : (std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
      for (int b = 0; b < 4; ++b)
        if ((v >> b) & 1) {
          const std::size_t idx = 4 * k + static_cast<std::size_t>(b);
          if (idx >= width) throw ParseError("subset bit " + std::to_string(idx) + " beyond size " + std::to_string(width));
          m.set(idx);
        }
    }
    return m;
  }
  if (s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty entry in subset '" + spec + "'");
    tok = tok.substr(b, e - b + 1);
    std::optional<std::size_t> idx;
    if (by_name) idx = by_name(tok);
    if (!idx) {
      if (tok.find_first_not_of("0123456789") != std::string::npos) throw ParseError("unknown element '" + tok + "'");
      idx = static_cast<std::size_t>(std::stoull(tok));
    }
    if (*idx >= width) throw ParseError("element " + tok + " out of range");
    m.set(*idx);
  }
  return m;
}

}  // namespace psg
