#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace infkit;

namespace {

// Regular open sets by bitmask brute force: A = int(cl(A)), open = down-closed.
std::set<unsigned> brute_regular_open(const FinPoset& p) {
  const int n = static_cast<int>(p.size());
  auto down = [&](int i) {
    unsigned m = 0;
    for (int q = 0; q < n; ++q)
      if (p.leq(q, i)) m |= 1u << q;
    return m;
  };
  std::set<unsigned> out;
  for (unsigned a = 0; a < (1u << n); ++a) {
    unsigned cl = 0, in = 0;
    for (int i = 0; i < n; ++i)
      if (down(i) & a) cl |= 1u << i;
    for (int i = 0; i < n; ++i)
      if ((down(i) & ~cl) == 0) in |= 1u << i;
    if (in == a) out.insert(a);
  }
  return out;
}

unsigned mask(const Bitset& b) {
  unsigned m = 0;
  for (std::size_t i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) m |= 1u << i;
  return m;
}

}  // namespace

TEST(BoolAlg, PowersetOperations) {
  auto b = FinBooleanAlgebra::powerset({"x", "y", "z"});
  EXPECT_EQ(b.size(), 8u);
  Element xy = b.parse_literal({"x", "y"});
  Element yz = b.parse_literal({"y", "z"});
  EXPECT_EQ(b.literal(b.meet(xy, yz)), (std::vector<std::string>{"y"}));
  EXPECT_EQ(b.literal(b.join(xy, yz)), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(b.literal(b.complement(xy)), (std::vector<std::string>{"z"}));
  EXPECT_TRUE(b.leq(b.meet(xy, yz), xy));
  EXPECT_TRUE(b.is_atom(b.parse_literal({"z"})));
  EXPECT_TRUE(check_algebra(b).ok());
}

TEST(BoolAlg, RegularOpenSetsMatchBruteForce) {
  std::vector<FinPoset> posets = {
      FinPoset({"a", "b", "c"}, {}),
      FinPoset({"lo", "hi"}, {{"lo", "hi"}}),
      FinPoset({"x", "y", "z", "top"}, {{"x", "top"}, {"y", "top"}, {"z", "top"}}),
      FinPoset({"bot", "l", "r", "top"}, {{"bot", "l"}, {"bot", "r"}, {"l", "top"}, {"r", "top"}, {"bot", "top"}}),
      FinPoset({"a", "b", "c", "p", "q"}, {{"a", "p"}, {"b", "p"}, {"b", "q"}, {"c", "q"}}),
  };
  for (const auto& p : posets) {
    auto want = brute_regular_open(p);
    auto ro = ro_completion(p);
    EXPECT_EQ(ro.algebra.size(), want.size());
    std::set<unsigned> got;
    for (auto e : ro.algebra.elements()) {
      Bitset s = ro.algebra.open_set(e);
      EXPECT_TRUE(is_regular_open(p, s));
      got.insert(mask(s));
    }
    EXPECT_EQ(got, want);
    EXPECT_TRUE(verify_ro_embedding(p, ro).ok());
    EXPECT_TRUE(check_algebra(ro.algebra).ok());
  }
}

TEST(BoolAlg, RegularizeIsIdempotentInteriorOfClosure) {
  FinPoset p({"a", "b", "c", "p", "q"}, {{"a", "p"}, {"b", "p"}, {"b", "q"}, {"c", "q"}});
  for (unsigned m = 0; m < 32; ++m) {
    Bitset a(5);
    for (int i = 0; i < 5; ++i) a[i] = (m >> i) & 1;
    Bitset r = regularize(p, a);
    EXPECT_EQ(r, interior(p, up_closure(p, a)));
    EXPECT_EQ(regularize(p, r), r);
    EXPECT_TRUE(is_open(p, r));
  }
}

TEST(BoolAlg, BrokenTableIsReported) {
  AlgebraTable t;
  t.names = {"0", "1"};
  t.meet = {{0, 0}, {0, 1}};
  t.join = {{0, 1}, {1, 1}};
  t.comp = {1, 0};
  EXPECT_TRUE(check_algebra(t).ok());
  t.comp = {0, 1};
  auto rep = check_algebra(t);
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.violations.front().law.empty());
}

TEST(BoolAlg, TableAlgebraRoundTripsThroughToTable) {
  auto b = FinBooleanAlgebra::powerset({"p", "q"});
  auto t = to_table(b);
  EXPECT_TRUE(check_algebra(t).ok());
  auto b2 = FinBooleanAlgebra::from_table(t);
  EXPECT_EQ(b2.size(), 4u);
  EXPECT_EQ(b2.atom_count(), 2);
}

TEST(BoolAlg, UltrafiltersAreThePrincipalFiltersAtAtoms) {
  auto b = FinBooleanAlgebra::powerset({"x", "y", "z"});
  auto us = enumerate_ultrafilters(b);
  ASSERT_EQ(us.size(), 3u);
  for (const auto& u : us) {
    EXPECT_TRUE(b.is_atom(u.generator));
    EXPECT_TRUE(is_ultrafilter(b, u));
    // exactly one of x, -x for every x
    for (auto x : b.elements()) EXPECT_NE(u.contains(b, x), u.contains(b, b.complement(x)));
  }
  EXPECT_FALSE(is_ultrafilter(b, principal_filter(b, b.parse_literal({"x", "y"}))));
}

TEST(BoolAlg, MakeFilterRejectsNonFilters) {
  auto b = FinBooleanAlgebra::powerset({"x", "y"});
  std::vector<Element> not_closed = {b.parse_literal({"x"})};
  EXPECT_THROW(make_filter(b, not_closed), AlgebraError);
  std::vector<Element> improper = {b.bottom(), b.top()};
  EXPECT_THROW(make_filter(b, improper), ImproperFilter);
  std::vector<Element> ok = {b.parse_literal({"x"}), b.top()};
  EXPECT_EQ(make_filter(b, ok).generator, b.parse_literal({"x"}));
}

TEST(BoolAlg, RestrictionMapsBackToParent) {
  auto b = FinBooleanAlgebra::powerset({"x", "y", "z"});
  Element bound = b.parse_literal({"x", "z"});
  auto r = restrict_algebra(b, bound);
  EXPECT_EQ(r.algebra.size(), 4u);
  for (auto e : r.algebra.elements()) EXPECT_EQ(r.from_parent(r.to_parent(e)), e);
  EXPECT_EQ(r.to_parent(r.algebra.top()), bound);
  EXPECT_THROW(restrict_algebra(b, b.bottom()), ZeroRestriction);
}

// Antichains of nonzero elements in 2^n, counted by subset enumeration.
TEST(BoolAlg, AntichainCountMatchesSubsetEnumeration) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back("a" + std::to_string(i));
    auto b = FinBooleanAlgebra::powerset(atoms);
    std::vector<Element> nonzero;
    for (auto e : b.elements())
      if (!b.is_zero(e)) nonzero.push_back(e);
    std::size_t want = 0;
    for (std::uint64_t s = 0; s < (1ull << nonzero.size()); ++s) {
      std::uint64_t seen = 0;
      bool ok = true;
      for (std::size_t i = 0; i < nonzero.size() && ok; ++i)
        if (s >> i & 1) {
          ok = (seen & nonzero[i].bits) == 0;
          seen |= nonzero[i].bits;
        }
      want += ok;
    }
    auto got = enumerate_antichains(b);
    EXPECT_EQ(got.size(), want) << n << " atoms";
    for (const auto& a : got) EXPECT_TRUE(is_antichain(b, a));
  }
}
