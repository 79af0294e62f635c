#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace infkit;
using namespace infkit::test;

namespace {

// Two atoms {x, y}, elements a and b never equal, R(a) = {x}, R(b) = {y}.
BValuedModel split_model() {
  BValuedModel m(small_signature(), FinBooleanAlgebra::powerset({"x", "y"}), {"a", "b"});
  const auto& b = m.algebra();
  m.set_rel("R", {0}, b.parse_literal({"x"}));
  m.set_rel("R", {1}, b.parse_literal({"y"}));
  m.set_constant("c", 0);
  m.set_constant("d", 1);
  return m;
}

TarskiStructure as_structure(const BValuedModel& m) {
  TarskiStructure s;
  s.size = m.size();
  for (const auto& r : m.signature().relations())
    for_each_tuple(m.size(), r.arity, [&](const Tuple& t) {
      if (m.algebra().is_top(m.rel(r.name, t))) s.relations[r.name].insert(t);
      return true;
    });
  s.constants = m.constants();
  return s;
}

}  // namespace

TEST(BvModel, TwoValuedEvaluationAgreesWithTarskiSemantics) {
  Rng rng(3);
  FormulaShape shape;
  for (int i = 0; i < 60; ++i) {
    std::set<std::size_t> r;
    std::set<Tuple> e;
    std::size_t n = 1 + i % 3;
    for (std::size_t x = 0; x < n; ++x) {
      if (rng() % 2) r.insert(x);
      for (std::size_t y = 0; y < n; ++y)
        if (rng() % 2) e.insert({x, y});
    }
    auto m = two_valued(n, r, e, rng() % n, rng() % n);
    auto s = as_structure(m);
    Formula f = random_formula(small_signature(), shape, {"v0"}, rng);
    for (const auto& a : assignments(n, {"v0"}))
      EXPECT_EQ(m.algebra().is_top(eval(m, f, a)), tarski_eval(s, f, a)) << f.canonical();
  }
}

TEST(BvModel, ConnectiveValuesOnSplitModel) {
  auto m = split_model();
  const auto& b = m.algebra();
  EXPECT_EQ(eval(m, R(c("c"))), b.parse_literal({"x"}));
  EXPECT_EQ(eval(m, Formula::negation(R(c("c")))), b.parse_literal({"y"}));
  EXPECT_EQ(eval(m, Formula::conj({R(c("c")), R(c("d"))})), b.bottom());
  EXPECT_EQ(eval(m, Formula::disj({R(c("c")), R(c("d"))})), b.top());
  EXPECT_EQ(eval(m, Formula::exists({"v0"}, R(v("v0")))), b.top());
  EXPECT_EQ(eval(m, Formula::forall({"v0"}, R(v("v0")))), b.bottom());
  EXPECT_EQ(eval(m, Formula::eq(c("c"), c("d"))), b.bottom());
  EXPECT_THROW(eval(m, R(v("v9"))), UnboundVariable);
}

TEST(BvModel, SplitModelIsNotMixingAndNotFull) {
  auto m = split_model();
  EXPECT_TRUE(check_model(m).ok());
  EXPECT_FALSE(check_mixing(m).mixing);
  EXPECT_FALSE(check_mixing_by_antichains(m).mixing);
  auto r = check_full(m, Formula::exists({"v0"}, R(v("v0"))));
  EXPECT_FALSE(r.attained);
  EXPECT_EQ(r.value, m.algebra().top());
}

TEST(BvModel, FullProductIsMixingAndFull) {
  auto m = product_of_two();
  ASSERT_TRUE(check_model(m).ok());
  EXPECT_TRUE(check_mixing(m).mixing);
  EXPECT_TRUE(check_mixing_by_antichains(m).mixing);
  auto r = check_full(m, Formula::exists({"v0"}, R(v("v0"))));
  EXPECT_TRUE(r.attained);
  EXPECT_EQ(r.witness, (Tuple{2}));
}

TEST(BvModel, MixingVerdictsAgreeOnRandomModels) {
  Rng rng(17);
  for (int i = 0; i < 80; ++i) {
    auto m = random_model(small_signature(), ModelBounds{3, 3}, rng);
    EXPECT_EQ(check_mixing(m).mixing, check_mixing_by_antichains(m).mixing);
  }
}

TEST(BvModel, CheckModelReportsBrokenAxioms) {
  auto m = split_model();
  m.set_eq_directed(0, 1, m.algebra().parse_literal({"x"}));
  auto rep = check_model(m);
  ASSERT_FALSE(rep.ok());
  bool symmetry = false;
  for (const auto& v : rep.violations) symmetry = symmetry || v.axiom == "symmetry";
  EXPECT_TRUE(symmetry);

  auto m2 = split_model();
  m2.set_eq(0, 1, m2.algebra().parse_literal({"x"}));  // R(a)=x, R(b)=y: congruence breaks
  auto rep2 = check_model(m2);
  ASSERT_FALSE(rep2.ok());
  EXPECT_EQ(rep2.violations.front().axiom, "congruence");
}

TEST(BvModel, SubstitutionInequalityOnExample) {
  auto m = split_model();
  m.set_eq(0, 1, m.algebra().bottom());
  Formula f = R(v("v0"));
  EXPECT_TRUE(check_subst_inequality(m, f, {"v0"}, {0}, {1}));
  EXPECT_TRUE(check_subst_inequality(m, f, {"v0"}, {1}, {1}));
}

TEST(BvModel, ClassicalContradictionIsWeaklyButNotStronglySatisfiable) {
  std::vector<Formula> t = {R(c("c")), Formula::negation(R(c("c")))};
  auto weak = bounded_boolean_sat(t, 2, 1, SatMode::Weak);
  ASSERT_TRUE(weak.found);
  EXPECT_EQ(weak.model->algebra().atom_count(), 2);
  for (const auto& s : t) EXPECT_FALSE(weak.model->algebra().is_zero(eval(*weak.model, s)));
  EXPECT_FALSE(bounded_boolean_sat(t, 2, 2, SatMode::Strong).found);
  auto one = bounded_boolean_sat({R(c("c"))}, 1, 1, SatMode::Strong);
  EXPECT_TRUE(one.found);
}

TEST(BvModel, ForEachTupleVisitsEveryTupleOnce) {
  std::set<Tuple> seen;
  for_each_tuple(3, 2, [&](const Tuple& t) {
    EXPECT_TRUE(seen.insert(t).second);
    return true;
  });
  EXPECT_EQ(seen.size(), 9u);
  std::size_t count = 0;
  for_each_tuple(4, 0, [&](const Tuple&) { return ++count, true; });
  EXPECT_EQ(count, 1u);
}
