#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace infkit;
using namespace infkit::test;

TEST(Syntax, ConjunctionChildrenAreSortedAndDeduplicated) {
  Formula a = Formula::conj({R(c("d")), R(c("c")), R(c("d"))});
  Formula b = Formula::conj({R(c("c")), R(c("d"))});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.children().size(), 2u);
  EXPECT_EQ(a.canonical(), b.canonical());
}

TEST(Syntax, FreeVariablesRespectBinders) {
  Formula f = Formula::conj({E(v("v0"), v("v1")), Formula::exists({"v1"}, R(v("v1")))});
  EXPECT_EQ(free_vars(f), (VarSet{"v0", "v1"}));
  Formula g = Formula::forall({"v0", "v1"}, f);
  EXPECT_TRUE(is_sentence(g));
  EXPECT_EQ(variables_of(g), (std::set<std::string>{"v0", "v1"}));
}

TEST(Syntax, SubstitutionReplacesOnlyFreeOccurrences) {
  Formula f = Formula::conj({R(v("v0")), Formula::exists({"v0"}, E(v("v0"), v("v1")))});
  Formula g = substitute(f, {{"v0", c("c")}});
  Formula want = Formula::conj({R(c("c")), Formula::exists({"v0"}, E(v("v0"), v("v1")))});
  EXPECT_EQ(g, want);
}

TEST(Syntax, CapturingSubstitutionThrows) {
  Formula f = Formula::exists({"v1"}, E(v("v0"), v("v1")));
  EXPECT_THROW(substitute(f, {{"v0", v("v1")}}), CaptureError);
}

TEST(Syntax, ConstantOccurrencesCanBeReplacedSelectively) {
  Formula f = E(c("c"), c("c"));
  EXPECT_EQ(count_constant_occurrences(f, "c"), 2);
  EXPECT_EQ(replace_constant_occurrences(f, "c", c("d"), {1}), E(c("c"), c("d")));
  EXPECT_EQ(replace_constant_occurrences(f, "c", c("d"), {0, 1}), E(c("d"), c("d")));
}

TEST(Syntax, NnfPushesNegationsToAtoms) {
  Formula f = Formula::negation(Formula::forall({"v0"}, Formula::conj({R(v("v0")), Formula::negation(E(v("v0"), c("c")))})));
  Formula g = nnf(f);
  for (const auto& s : subformulas(g))
    if (s.kind() == Connective::Not) EXPECT_TRUE(s.body().is_atomic()) << g.canonical();
  Formula want = Formula::exists({"v0"}, Formula::disj({Formula::negation(R(v("v0"))), E(v("v0"), c("c"))}));
  EXPECT_EQ(g, want);
}

// nnf and move_neg_inside preserve Boolean values in every sampled model.
TEST(Syntax, NegationNormalFormsPreserveValues) {
  Rng rng(5);
  auto sig = small_signature();
  FormulaShape shape;
  for (int i = 0; i < 150; ++i) {
    auto m = random_model(sig, ModelBounds{3, 3}, rng);
    Formula f = random_formula(sig, shape, {"v0"}, rng);
    Formula nf = Formula::negation(f);
    for (const auto& a : assignments(m.size(), {"v0"})) {
      EXPECT_EQ(eval(m, nnf(f), a), eval(m, f, a)) << f.canonical();
      EXPECT_EQ(eval(m, move_neg_inside(f), a), eval(m, nf, a)) << f.canonical();
    }
  }
}

TEST(Syntax, WellFormednessChecksSignature) {
  auto sig = small_signature();
  EXPECT_NO_THROW(check_well_formed(E(c("c"), v("v0")), sig));
  EXPECT_THROW(check_well_formed(Formula::atom("R", {c("c"), c("c")}), sig), SignatureError);
  EXPECT_THROW(check_well_formed(R(c("zz")), sig), SignatureError);
  EXPECT_NO_THROW(check_well_formed(R(c("zz")), sig, {"zz"}));
}

TEST(Syntax, InferredSignatureCollectsSymbols) {
  std::vector<Formula> fs = {R(c("c")), E(v("v0"), c("d"))};
  auto sig = infer_signature(fs);
  EXPECT_EQ(sig.arity("R"), 1);
  EXPECT_EQ(sig.arity("E"), 2);
  EXPECT_TRUE(sig.has_constant("c"));
  EXPECT_TRUE(sig.has_constant("d"));
}

TEST(Syntax, FragmentContainsSeedAndSubformulas) {
  Formula seed = Formula::forall({"v0"}, Formula::disj({R(v("v0")), Formula::negation(R(v("v0")))}));
  auto frag = build_fragment({seed}, {"v0", "v1"}, {"c"}, 2);
  EXPECT_TRUE(frag.contains(seed));
  for (const auto& s : subformulas(seed)) EXPECT_TRUE(frag.contains(s)) << s.canonical();
  EXPECT_TRUE(frag.contains(R(c("c"))));
  EXPECT_TRUE(std::is_sorted(frag.formulas.begin(), frag.formulas.end()));
}
