#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psg/error.hpp"
#include "psg/subset_mask.hpp"

namespace psg {

using Elem = std::int32_t;
inline constexpr Elem kUndefined = -1;

/// A finite set {0..size-1} with a partial binary operation.
///
/// The table is row-major: product(x, y) is table[x * size + y], or kUndefined.
/// Construction checks only the table shape; weak associativity is checked by
/// validate() so that broken tables can still be loaded and reported on.
class PartialSemigroup {
 public:
  PartialSemigroup() = default;

  PartialSemigroup(std::size_t size, std::vector<Elem> table, std::vector<std::string> names = {})
      : n_(size), table_(std::move(table)), names_(std::move(names)) {
    if (n_ == 0) throw StructuralError("partial semigroup must have at least one element");
    if (table_.size() != n_ * n_) throw StructuralError("table has " + std::to_string(table_.size()) + " entries, expected " + std::to_string(n_ * n_));
    if (!names_.empty() && names_.size() != n_) throw StructuralError("names list length does not match size");
    for (std::size_t k = 0; k < table_.size(); ++k) {
      Elem v = table_[k];
      if (v != kUndefined && (v < 0 || static_cast<std::size_t>(v) >= n_)) {
        throw StructuralError("table entry (" + std::to_string(k / n_) + "," + std::to_string(k % n_) + ") = " + std::to_string(v) + " out of range");
      }
    }
    right_.assign(n_, SubsetMask(n_));
    left_.assign(n_, SubsetMask(n_));
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (table_[x * n_ + y] != kUndefined) {
          right_[x].set(y);
          left_[y].set(x);
        }
  }

  // Rows of optional entries; handy for literals in tests.
  static PartialSemigroup from_rows(const std::vector<std::vector<Elem>>& rows, std::vector<std::string> names = {}) {
    std::vector<Elem> t;
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw StructuralError("table is not square");
      t.insert(t.end(), r.begin(), r.end());
    }
    return PartialSemigroup(rows.size(), std::move(t), std::move(names));
  }

  std::size_t size() const { return n_; }
  const std::vector<Elem>& table() const { return table_; }
  const std::vector<std::string>& names() const { return names_; }
  bool has_names() const { return !names_.empty(); }

  std::string name(std::size_t x) const { return names_.empty() ? std::to_string(x) : names_[x]; }
  std::optional<std::size_t> index_of(const std::string& nm) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == nm) return i;
    return std::nullopt;
  }

  Elem product(std::size_t x, std::size_t y) const { return table_[x * n_ + y]; }
  bool defined(std::size_t x, std::size_t y) const { return table_[x * n_ + y] != kUndefined; }
  bool is_total() const {
    for (auto v : table_)
      if (v == kUndefined) return false;
    return true;
  }

  // R(x) and L(x).
  const SubsetMask& right(std::size_t x) const { return right_.at(x); }
  const SubsetMask& left(std::size_t x) const { return left_.at(x); }

  SubsetMask empty_mask() const { return SubsetMask(n_); }
  SubsetMask full_mask() const { return SubsetMask::full(n_); }

  // Table with rows and columns swapped: x *' y = y * x.
  PartialSemigroup transposed() const {
    std::vector<Elem> t(n_ * n_);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) t[x * n_ + y] = table_[y * n_ + x];
    return PartialSemigroup(n_, std::move(t), names_);
  }

  friend bool operator==(const PartialSemigroup& a, const PartialSemigroup& b) {
    return a.n_ == b.n_ && a.table_ == b.table_ && a.names_ == b.names_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<std::string> names_;
  std::vector<SubsetMask> right_;
  std::vector<SubsetMask> left_;
};

enum class ViolationKind { OneSideUndefined, Unequal };

inline const char* to_string(ViolationKind k) {
  return k == ViolationKind::OneSideUndefined ? "one-side-undefined" : "unequal";
}

struct Violation {
  std::size_t x, y, z;
  ViolationKind kind;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Exhaustive weak-associativity scan. Violations are listed in lexicographic
/// (x, y, z) order. `limit` stops the scan after that many violations (0 = all).
inline ValidationReport validate(const PartialSemigroup& s, std::size_t limit = 0) {
  ValidationReport rep;
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Elem xy = s.product(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        const Elem yz = s.product(y, z);
        const Elem lhs = xy == kUndefined ? kUndefined : s.product(static_cast<std::size_t>(xy), z);
        const Elem rhs = yz == kUndefined ? kUndefined : s.product(x, static_cast<std::size_t>(yz));
        if (lhs == rhs) continue;
        rep.violations.push_back({x, y, z, (lhs == kUndefined || rhs == kUndefined) ? ViolationKind::OneSideUndefined : ViolationKind::Unequal});
        if (limit != 0 && rep.violations.size() >= limit) {
          rep.ok = false;
          return rep;
        }
      }
    }
  rep.ok = rep.violations.empty();
  return rep;
}

inline bool is_valid(const PartialSemigroup& s) { return validate(s, 1).ok; }

}  // namespace psg
