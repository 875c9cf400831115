#include <gtest/gtest.h>

#include "support.hpp"

using namespace psg;
using testing_support::from_mask;
using testing_support::to_mask;
using testing_support::to_table;

namespace {

constexpr Elem _ = kUndefined;

SubsetMask mask(std::size_t n, std::initializer_list<std::size_t> m) { return SubsetMask(n, m); }

// {0, a, b}: a and b idempotent, every other product 0.
PartialSemigroup two_idempotents_with_zero() { return PartialSemigroup::from_rows({{0, 0, 0}, {0, 1, 0}, {0, 0, 2}}); }

}  // namespace

TEST(SubsetMask, BasicOperations) {
  SubsetMask a(70, {0, 5, 64, 69});
  EXPECT_EQ(a.count(), 4u);
  EXPECT_TRUE(a.test(64));
  EXPECT_FALSE(a.test(63));
  EXPECT_EQ(a.members(), (std::vector<std::size_t>{0, 5, 64, 69}));
  EXPECT_EQ(a.complement().count(), 66u);
  EXPECT_TRUE((a & a.complement()).empty());
  EXPECT_EQ(a | a.complement(), SubsetMask::full(70));
  EXPECT_EQ(a.to_string(), "{0,5,64,69}");
  EXPECT_THROW(a.set(70), StructuralError);
  EXPECT_THROW((void)(a & SubsetMask(69)), StructuralError);
  EXPECT_THROW((void)SubsetMask::from_bits(3, 0b1000), StructuralError);
  EXPECT_LT(SubsetMask(4, {0, 1}), SubsetMask(4, {2}));
}

TEST(SubsetMask, SubsetSweepRespectsCap) {
  std::size_t count = 0;
  for_each_subset(4, 16, [&](const SubsetMask&) { ++count; });
  EXPECT_EQ(count, 16u);
  EXPECT_THROW(for_each_subset(17, 16, [](const SubsetMask&) {}), CapExceeded);
}

TEST(Validate, RightZeroAndDisjointUnionAreValid) {
  EXPECT_TRUE(validate(right_zero(3)).ok);
  EXPECT_TRUE(validate(pf_disjoint_union(2)).ok);
}

TEST(Validate, SingleDefinedEntryIsValid) {
  // 0*0 = 1 only: both sides of (0,0,0) are undefined.
  EXPECT_TRUE(validate(PartialSemigroup::from_rows({{1, _}, {_, _}})).ok);
}

TEST(Validate, IdentityRowOnZeroIsValid) {
  // 0*0 = 0, 0*1 = 1: 0 acts as a left identity, so (0,0,1) is fine on both sides.
  auto s = PartialSemigroup::from_rows({{0, 1}, {_, _}});
  EXPECT_TRUE(validate(s).ok);
  EXPECT_TRUE(oracle::violations(to_table(s)).empty());
}

TEST(Validate, ReportsExactTriple) {
  // 0*0 = 1, 0*1 = 0: (0*0)*0 = 1*0 undefined but 0*(0*0) = 0*1 = 0.
  auto s = PartialSemigroup::from_rows({{1, 0}, {_, _}});
  auto rep = validate(s);
  ASSERT_FALSE(rep.ok);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_EQ(rep.violations.front(), (Violation{0, 0, 0, ViolationKind::OneSideUndefined}));
  std::vector<std::array<int, 3>> got;
  for (auto& v : rep.violations) got.push_back({static_cast<int>(v.x), static_cast<int>(v.y), static_cast<int>(v.z)});
  EXPECT_EQ(got, oracle::violations(to_table(s)));
}

TEST(Validate, UnequalKind) {
  // (0*0)*1 = 1*1 = 0 but 0*(0*1) = 0*0 = 1.
  auto s = PartialSemigroup::from_rows({{1, 0}, {0, 0}});
  auto rep = validate(s);
  ASSERT_FALSE(rep.ok);
  bool unequal = false;
  for (auto& v : rep.violations) unequal = unequal || v.kind == ViolationKind::Unequal;
  EXPECT_TRUE(unequal);
}

TEST(Validate, MalformedEntryIsStructural) {
  EXPECT_THROW(PartialSemigroup::from_rows({{0, 2}, {0, 0}}), StructuralError);
  EXPECT_THROW(PartialSemigroup(2, {0, 0, 0}), StructuralError);
}

TEST(RightLeftSets, Examples) {
  auto pf2 = pf_disjoint_union(2);  // {1}, {2}, {1,2}
  EXPECT_EQ(right_set(pf2, 0), mask(3, {1}));
  EXPECT_EQ(left_set(pf2, 2), mask(3, {}));
  auto z3 = cyclic_group(3);
  for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(right_set(z3, x), SubsetMask::full(3));
  auto rz = right_zero(3);
  EXPECT_EQ(left_set(rz, 1), SubsetMask::full(3));
  auto w = bounded_words(3);
  std::size_t x01 = *w.index_of("01");
  EXPECT_EQ(right_set(w, x01), mask(w.size(), {0, 1}));
  EXPECT_EQ(w.name(0), "0");
  EXPECT_EQ(w.name(1), "1");
}

TEST(RightLeftSets, MatchColumnScanOnCorpus) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    auto t = to_table(s);
    for (std::size_t x = 0; x < s.size(); ++x) {
      EXPECT_EQ(to_mask(left_set(s, x)), oracle::L(t, static_cast<int>(x))) << name;
      EXPECT_EQ(to_mask(right_set(s, x)), oracle::R(t, static_cast<int>(x))) << name;
    }
  }
}

TEST(RightSetFamily, Examples) {
  auto pf3 = pf_disjoint_union(3);  // element i is bit pattern i+1; singletons are 0, 1, 3
  EXPECT_TRUE(right_set_family(pf3, mask(7, {0, 1, 3})).empty());
  auto z2 = cyclic_group(2);
  EXPECT_EQ(right_set_family(z2, SubsetMask::full(2)), SubsetMask::full(2));
  EXPECT_EQ(right_set_family(z2, mask(2, {1})), right_set(z2, 1));
  EXPECT_THROW(right_set_family(z2, SubsetMask(2)), PreconditionError);
  EXPECT_THROW(left_set_family(z2, SubsetMask(2)), PreconditionError);
}

TEST(Adequacy, Examples) {
  EXPECT_TRUE(is_right_adequate(cyclic_group(4)));
  EXPECT_TRUE(is_left_adequate(zero_semigroup(3)));
  EXPECT_FALSE(is_right_adequate(pf_disjoint_union(2)));
  EXPECT_FALSE(is_right_adequate(bounded_words(2)));
}

TEST(Adequacy, ShortcutMatchesDefinition) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    auto t = to_table(s);
    EXPECT_EQ(is_right_adequate(s), oracle::right_adequate(t)) << name;
    EXPECT_EQ(is_left_adequate(s), oracle::left_adequate(t)) << name;
  }
}

TEST(Antitonicity, RightSetsShrinkAsFamiliesGrow) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    const std::size_t n = s.size();
    for (oracle::Mask h = 1; h < (1u << n); ++h)
      for (oracle::Mask h2 = h;; h2 = (h2 + 1) | h) {
        EXPECT_TRUE(right_set_family(s, from_mask(n, h2)).is_subset_of(right_set_family(s, from_mask(n, h)))) << name;
        if (h2 == (1u << n) - 1) break;
      }
  }
}

TEST(DeltaR, Examples) {
  EXPECT_EQ(delta_r_finite(cyclic_group(2)), SubsetMask::full(2));
  EXPECT_TRUE(delta_r_finite(pf_disjoint_union(2)).empty());
  EXPECT_EQ(delta_r_finite(right_zero(3)), SubsetMask::full(3));
}

TEST(Quotient, Examples) {
  auto z2 = cyclic_group(2);
  EXPECT_EQ(quotient_set(z2, 1, mask(2, {0})), mask(2, {1}));
  auto pf2 = pf_disjoint_union(2);
  for (std::size_t x = 0; x < 3; ++x) {
    EXPECT_EQ(quotient_set(pf2, x, SubsetMask::full(3)), right_set(pf2, x));
    EXPECT_TRUE(quotient_set(pf2, x, SubsetMask(3)).empty());
  }
}

TEST(Quotient, CompositionLemmaExhaustive) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    const std::size_t n = s.size();
    for_each_subset(n, 16, [&](const SubsetMask& a) {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          SubsetMask lhs = quotient_set(s, y, quotient_set(s, x, a));
          SubsetMask rhs = s.defined(x, y) ? quotient_set(s, static_cast<std::size_t>(s.product(x, y)), a) : SubsetMask(n);
          ASSERT_EQ(lhs, rhs) << name << " a=" << x << " b=" << y << " A=" << a.to_string();
          oracle::Mask o = oracle::quot(to_table(s), static_cast<int>(y), oracle::quot(to_table(s), static_cast<int>(x), to_mask(a)));
          ASSERT_EQ(to_mask(lhs), o);
        }
    });
  }
}

TEST(PrincipalProduct, Examples) {
  EXPECT_EQ(principal_product(cyclic_group(2), 1, 1), std::optional<std::size_t>(0));
  EXPECT_FALSE(principal_product(pf_disjoint_union(2), 0, 0).has_value());
  auto s = testing_support::standard_corpus().back().S;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      EXPECT_EQ(principal_product(s, a, b).has_value(), s.defined(a, b));
}

TEST(Idempotents, Examples) {
  EXPECT_EQ(idempotents(right_zero(3)), SubsetMask::full(3));
  EXPECT_TRUE(idempotents(pf_disjoint_union(2)).empty());
  EXPECT_EQ(idempotents(cyclic_group(2)), mask(2, {0}));
}

TEST(Ideals, Examples) {
  auto rz = right_zero(3);
  EXPECT_TRUE(is_left_ideal(rz, mask(3, {0})));
  EXPECT_FALSE(is_right_ideal(rz, mask(3, {0})));
  EXPECT_TRUE(is_ideal(rz, SubsetMask::full(3)));
  auto z2 = cyclic_group(2);
  EXPECT_FALSE(is_left_ideal(z2, mask(2, {0})));
  EXPECT_THROW(is_left_ideal(z2, SubsetMask(2)), PreconditionError);
}

TEST(Ideals, PredicatesMatchOracle) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    auto t = to_table(s);
    for_each_nonempty_subset_of(s.full_mask(), 16, [&](const SubsetMask& m) {
      EXPECT_EQ(is_left_ideal(s, m), oracle::left_ideal(t, to_mask(m))) << name;
      EXPECT_EQ(is_right_ideal(s, m), oracle::right_ideal(t, to_mask(m))) << name;
    });
  }
}

TEST(Ideals, IntersectionOfLeftIdeals) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    auto ls = enumerate_ideals(s, IdealSide::Left);
    for (const auto& a : ls)
      for (const auto& b : ls) {
        SubsetMask c = a & b;
        if (c.any()) {
          EXPECT_TRUE(is_left_ideal(s, c)) << name;
        }
      }
  }
}

TEST(Ideals, IdempotentActsAsIdentityOnItsSide) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    idempotents(s).for_each([&](std::size_t e) {
      SubsetMask es = set_product(s, singleton(s, e), s.full_mask());
      SubsetMask se = set_product(s, s.full_mask(), singleton(s, e));
      es.for_each([&](std::size_t x) { EXPECT_EQ(s.product(e, x), static_cast<Elem>(x)) << name; });
      se.for_each([&](std::size_t x) { EXPECT_EQ(s.product(x, e), static_cast<Elem>(x)) << name; });
      (es & se).for_each([&](std::size_t x) {
        if (set_product(s, es, singleton(s, e)).test(x)) {
          EXPECT_EQ(s.product(e, x), static_cast<Elem>(x));
          EXPECT_EQ(s.product(x, e), static_cast<Elem>(x));
        }
      });
    });
  }
}

TEST(PrincipalIdeals, Examples) {
  auto p = principal_ideals(right_zero(3), 1);
  EXPECT_EQ(p.left, mask(3, {1}));
  EXPECT_EQ(p.right, SubsetMask::full(3));
  auto z = principal_ideals(cyclic_group(2), 0);
  EXPECT_EQ(z.left, SubsetMask::full(2));
  EXPECT_EQ(z.right, SubsetMask::full(2));
  auto pf = principal_ideals(pf_disjoint_union(2), 2);
  EXPECT_TRUE(pf.left.empty());
  EXPECT_TRUE(pf.right.empty());
}

TEST(PrincipalIdeals, NonemptyResultsAreIdeals) {
  for (const auto& [name, s] : testing_support::standard_corpus())
    for (std::size_t x = 0; x < s.size(); ++x) {
      auto p = principal_ideals(s, x);
      if (p.left.any()) {
        EXPECT_TRUE(is_left_ideal(s, p.left)) << name;
      }
      if (p.right.any()) {
        EXPECT_TRUE(is_right_ideal(s, p.right)) << name;
      }
      if (p.two_sided.any()) {
        EXPECT_TRUE(is_ideal(s, p.two_sided)) << name;
      }
    }
}

TEST(MinimalLeftIdeals, Examples) {
  EXPECT_EQ(minimal_left_ideals(right_zero(3)), (std::vector<SubsetMask>{mask(3, {0}), mask(3, {1}), mask(3, {2})}));
  EXPECT_EQ(minimal_left_ideals(cyclic_group(2)), (std::vector<SubsetMask>{SubsetMask::full(2)}));
}

TEST(MinimalLeftIdeals, MatchExhaustiveOracle) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    std::vector<oracle::Mask> got;
    for (auto& m : minimal_left_ideals(s)) got.push_back(to_mask(m));
    EXPECT_EQ(got, oracle::minimal_left_ideals(to_table(s))) << name;
  }
  // Random 4-element tables beyond the corpus.
  for (std::uint64_t seed = 100; seed < 300; ++seed) {
    auto s = random_partial(4, 0.7, seed);
    std::vector<oracle::Mask> got;
    for (auto& m : minimal_left_ideals(s)) got.push_back(to_mask(m));
    EXPECT_EQ(got, oracle::minimal_left_ideals(to_table(s))) << seed;
  }
}

TEST(SmallestIdeal, Examples) {
  EXPECT_EQ(smallest_ideal(right_zero(3)), std::optional<SubsetMask>(SubsetMask::full(3)));
  EXPECT_EQ(smallest_ideal(cyclic_group(2)), std::optional<SubsetMask>(SubsetMask::full(2)));
  EXPECT_EQ(smallest_ideal(two_idempotents_with_zero()), std::optional<SubsetMask>(mask(3, {0})));
}

TEST(SmallestIdeal, MatchesIdealContainedInEveryIdeal) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    auto got = smallest_ideal(s);
    auto want = oracle::smallest_ideal(to_table(s));
    ASSERT_EQ(got.has_value(), want.has_value()) << name;
    if (got) {
      EXPECT_EQ(to_mask(*got), *want) << name;
    }
  }
}

TEST(SmallestIdeal, UnionOfMinimalLeftIdealsIsAnIdeal) {
  for (const auto& [name, s] : testing_support::standard_corpus()) {
    SubsetMask u = union_of_minimal_left_ideals(s);
    if (u.any()) {
      EXPECT_TRUE(is_ideal(s, u)) << name;
    }
  }
}

TEST(SmallestIdeal, CanBeAbsentWhileMinimalLeftIdealsExist) {
  // {0} and {2} are disjoint ideals, so no smallest ideal exists, yet both are
  // minimal left ideals. The union {0,2} is an ideal but not the smallest.
  auto s = PartialSemigroup::from_rows({{_, 0, _}, {0, 1, 2}, {_, 2, 2}});
  ASSERT_TRUE(validate(s).ok);
  EXPECT_EQ(minimal_left_ideals(s), (std::vector<SubsetMask>{mask(3, {0}), mask(3, {2})}));
  EXPECT_FALSE(smallest_ideal(s).has_value());
  EXPECT_FALSE(oracle::smallest_ideal(to_table(s)).has_value());
  EXPECT_TRUE(is_ideal(s, union_of_minimal_left_ideals(s)));
  EXPECT_TRUE(is_ideal(s, mask(3, {0})));
  EXPECT_TRUE(is_ideal(s, mask(3, {2})));
}

TEST(MinimalIdempotents, Examples) {
  EXPECT_EQ(minimal_idempotents(cyclic_group(2)), mask(2, {0}));
  EXPECT_EQ(minimal_idempotents(right_zero(3)), SubsetMask::full(3));
  EXPECT_TRUE(minimal_idempotents(pf_disjoint_union(2)).empty());
}

TEST(Limits, EnvironmentOverride) {
  ::setenv("PSG_CAP", "9", 1);
  EXPECT_EQ(Limits::from_env().cap, 9u);
  ::setenv("PSG_CAP", "junk", 1);
  EXPECT_EQ(Limits::from_env().cap, 16u);
  ::unsetenv("PSG_CAP");
  EXPECT_EQ(Limits::from_env().cap, 16u);
  EXPECT_THROW(enumerate_ideals(cyclic_group(3), IdealSide::Left, Limits{2, 100}), CapExceeded);
}
