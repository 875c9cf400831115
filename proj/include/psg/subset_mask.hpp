#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "psg/error.hpp"

namespace psg {

/// Fixed-width bit vector over a finite carrier (elements of a partial
/// semigroup, or points of a dynamical system).
///
/// The width is part of the value: two masks of different widths never compare
/// equal, and binary set operations require equal widths.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}
  SubsetMask(std::size_t width, std::initializer_list<std::size_t> members) : SubsetMask(width) {
    for (auto m : members) set(m);
  }

  static SubsetMask full(std::size_t width) {
    SubsetMask m(width);
    for (auto& w : m.words_) w = ~std::uint64_t{0};
    m.trim();
    return m;
  }

  // Mask whose low bits come from `bits`; only for widths <= 64.
  static SubsetMask from_bits(std::size_t width, std::uint64_t bits) {
    if (width > 64) throw StructuralError("SubsetMask::from_bits: width > 64");
    SubsetMask m(width);
    if (width > 0) m.words_[0] = bits;
    m.trim();
    if (m.words_.empty() ? bits != 0 : m.words_[0] != bits) {
      throw StructuralError("SubsetMask::from_bits: bits set beyond width");
    }
    return m;
  }

  std::size_t width() const { return width_; }

  bool test(std::size_t i) const { return i < width_ && ((words_[i / 64] >> (i % 64)) & 1U); }

  void set(std::size_t i) {
    check_index(i);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  void reset(std::size_t i) {
    check_index(i);
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  bool any() const { return !empty(); }

  bool is_subset_of(const SubsetMask& o) const {
    check_width(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  bool intersects(const SubsetMask& o) const {
    check_width(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  SubsetMask& operator&=(const SubsetMask& o) {
    check_width(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  SubsetMask& operator|=(const SubsetMask& o) {
    check_width(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  // Set difference.
  SubsetMask& operator-=(const SubsetMask& o) {
    check_width(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { return a -= b; }

  SubsetMask complement() const {
    SubsetMask m(width_);
    for (std::size_t k = 0; k < words_.size(); ++k) m.words_[k] = ~words_[k];
    m.trim();
    return m;
  }

  // Index of the lowest member at or after `from`, or width() when none.
  std::size_t next(std::size_t from) const {
    if (from >= width_) return width_;
    std::size_t k = from / 64;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from % 64));
    while (true) {
      if (w != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
      if (++k >= words_.size()) return width_;
      w = words_[k];
    }
  }
  std::size_t first() const { return next(0); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = first(); i < width_; i = next(i + 1)) out.push_back(i);
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = first(); i < width_; i = next(i + 1)) f(i);
  }

  // Low 64 bits; meaningful for widths <= 64.
  std::uint64_t to_bits() const { return words_.empty() ? 0 : words_[0]; }

  // "{0,2,5}"
  std::string to_string() const {
    std::string s = "{";
    bool first_member = true;
    for_each([&](std::size_t i) {
      if (!first_member) s += ',';
      s += std::to_string(i);
      first_member = false;
    });
    return s + "}";
  }

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
  friend auto operator<=>(const SubsetMask& a, const SubsetMask& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    // Lexicographic on the high word first gives numeric order of the bit patterns.
    for (std::size_t k = a.words_.size(); k-- > 0;) {
      if (auto c = a.words_[k] <=> b.words_[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void trim() {
    if (width_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (width_ % 64)) - 1;
  }
  void check_index(std::size_t i) const {
    if (i >= width_) throw StructuralError("SubsetMask: index " + std::to_string(i) + " out of width " + std::to_string(width_));
  }
  void check_width(const SubsetMask& o) const {
    if (o.width_ != width_) throw StructuralError("SubsetMask: width mismatch");
  }

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

// Calls f(mask) for every subset of {0..width-1}, including the empty one, in
// increasing numeric order. Guarded by `cap` on the width.
template <typename F>
void for_each_subset(std::size_t width, std::size_t cap, F&& f) {
  if (width > cap || width > 30) {
    throw CapExceeded("subset sweep over " + std::to_string(width) + " elements exceeds cap " + std::to_string(cap));
  }
  const std::uint64_t total = std::uint64_t{1} << width;
  for (std::uint64_t bits = 0; bits < total; ++bits) f(SubsetMask::from_bits(width, bits));
}

// Every nonempty subset of `base`, enumerated by sub-mask walk.
template <typename F>
void for_each_nonempty_subset_of(const SubsetMask& base, std::size_t cap, F&& f) {
  const auto idx = base.members();
  if (idx.size() > cap || idx.size() > 30) {
    throw CapExceeded("subset sweep over " + std::to_string(idx.size()) + " members exceeds cap " + std::to_string(cap));
  }
  const std::uint64_t total = std::uint64_t{1} << idx.size();
  for (std::uint64_t bits = 1; bits < total; ++bits) {
    SubsetMask m(base.width());
    for (std::size_t k = 0; k < idx.size(); ++k)
      if ((bits >> k) & 1U) m.set(idx[k]);
    f(m);
  }
}

}  // namespace psg
