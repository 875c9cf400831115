#pragma once

#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "psg/psg.hpp"

namespace testing_support {

inline oracle::Table to_table(const psg::PartialSemigroup& s) {
  oracle::Table t(s.size(), std::vector<int>(s.size()));
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y) t[x][y] = s.product(x, y);
  return t;
}

inline oracle::Mask to_mask(const psg::SubsetMask& m) { return static_cast<oracle::Mask>(m.to_bits()); }

inline psg::SubsetMask from_mask(std::size_t width, oracle::Mask m) { return psg::SubsetMask::from_bits(width, m); }

inline oracle::System to_system(const psg::PartialDynSystem& d) {
  oracle::System o{to_table(d.S), static_cast<int>(d.points), {}};
  for (const auto& m : d.action) o.maps.emplace_back(m.image().begin(), m.image().end());
  return o;
}

// Corpus used by the property suites: named families plus 50 random instances.
inline const std::vector<psg::NamedSemigroup>& standard_corpus() {
  static const auto c = psg::corpus(1, 50);
  return c;
}

}  // namespace testing_support
