#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace infkit;
using namespace infkit::test;

namespace {

const std::filesystem::path kCorpus = INFKIT_CORPUS_DIR;

ConsistencyProperty load_cp(const std::string& file) { return parse_cp(load_json(kCorpus / file)); }

BValuedModel appendix_model() { return parse_model(load_json(kCorpus / "appendix_model.json")); }

}  // namespace

// Oracle membership: a subset is a member iff the meet of its values is nonzero.
TEST(ConsProp, OracleMembershipIsANonzeroMeet) {
  auto m = appendix_model();
  const auto& b = m.algebra();
  std::vector<Formula> pool = {Formula::eq(c("d"), c("c0")), Formula::eq(c("d"), c("c1")),
                               Formula::negation(Formula::eq(c("d"), c("c0"))), Formula::eq(c("c0"), c("c1"))};
  auto s = ConsistencyProperty::from_model(m, pool);
  for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
    SentenceSet sub;
    Element meet = b.top();
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask >> i & 1) {
        sub.push_back(pool[i]);
        meet = b.meet(meet, eval(m, pool[i]));
      }
    sub = normalize_set(sub);
    EXPECT_EQ(s.member(sub), !b.is_zero(meet)) << set_string(sub);
  }
}

// Brute-force member enumeration agrees with the per-atom maximal sets:
// every member lies inside some maximal set and every maximal set is a member.
TEST(ConsProp, EnumeratedMembersAgreeWithClauseMembers) {
  auto m = appendix_model();
  auto pool = parse_pool(load_json(kCorpus / "appendix_pool.json"));
  auto s = ConsistencyProperty::from_model(m, pool);
  auto all = s.enumerate_members();
  auto maximal = s.clause_members();
  ASSERT_FALSE(maximal.empty());
  for (const auto& t : maximal) {
    EXPECT_TRUE(s.member(t));
    EXPECT_NE(std::find(all.begin(), all.end(), t), all.end());
  }
  for (const auto& member : all) {
    bool inside = false;
    for (const auto& t : maximal) inside = inside || set_subset(member, t);
    EXPECT_TRUE(inside) << set_string(member);
  }
  // No member is strictly larger than a maximal set.
  for (const auto& member : all)
    for (const auto& t : maximal) EXPECT_FALSE(set_subset(t, member) && member != t);
}

TEST(ConsProp, ClauseViolationsAreDetected) {
  EXPECT_TRUE(check_cp(load_cp("cp_existential.json")).ok());
  EXPECT_TRUE(check_cp(load_cp("cp_connectives.json")).ok());
  for (const char* bad : {"cp_con_violation.json", "cp_ind5_violation.json", "cp_not_generic.json"}) {
    auto rep = check_cp(load_cp(bad));
    ASSERT_FALSE(rep.ok()) << bad;
    EXPECT_FALSE(rep.violations.front().clause.empty());
  }
}

TEST(ConsProp, InstantiateAndReplacementVariants) {
  Formula f = Formula::forall({"v0", "v1"}, E(v("v0"), v("v1")));
  EXPECT_EQ(instantiate(f, {"c", "d"}), E(c("c"), c("d")));
  auto vs = replacement_variants(E(c("d"), c("d")), "d", "c");
  std::set<Formula> got(vs.begin(), vs.end());
  EXPECT_TRUE(got.contains(E(c("c"), c("d"))));
  EXPECT_TRUE(got.contains(E(c("d"), c("c"))));
  EXPECT_TRUE(got.contains(E(c("c"), c("c"))));
}

TEST(ConsProp, ClosePoolContainsInstancesAndSubformulas) {
  Formula all = Formula::forall({"v0"}, R(v("v0")));
  auto pool = close_pool({all}, {"c", "d"});
  std::set<Formula> s(pool.begin(), pool.end());
  EXPECT_TRUE(s.contains(all));
  EXPECT_TRUE(s.contains(R(c("c"))));
  EXPECT_TRUE(s.contains(R(c("d"))));
}

TEST(ConsProp, GenericFilterRealizesItsUnion) {
  auto s = load_cp("cp_existential.json");
  auto p = forcing_poset(s);
  for (const auto& d : dense_sets(s, p)) EXPECT_TRUE(d.dense) << d.name;
  for (const auto& root : s.family()) {
    auto f = generic_filter(s, p, root);
    EXPECT_TRUE(f.generic());
    EXPECT_TRUE(f.finite_subsets_match);
    for (const auto& phi : root) EXPECT_TRUE(set_contains(f.sigma, phi));
    auto a = build_AF(s, f);
    EXPECT_TRUE(a.issues.empty());
    auto rep = verify_realizes(a, f.sigma);
    EXPECT_TRUE(rep.ok());
    EXPECT_GT(rep.checked, 0u);
    // The realized structure satisfies every sentence of sigma by direct evaluation.
    auto t = a.as_tarski();
    for (const auto& phi : f.sigma) EXPECT_TRUE(tarski_eval(t, phi)) << phi.canonical();
  }
}

// A disjunction with no extension choosing a disjunct: its dense set is not
// dense, so the filter is vacuously generic yet fails to realize sigma.
TEST(ConsProp, DisjunctionWithoutWitnessIsNotRealized) {
  auto s = load_cp("cp_not_generic.json");
  auto p = forcing_poset(s);
  bool some_not_dense = false;
  for (const auto& d : dense_sets(s, p)) some_not_dense = some_not_dense || !d.dense;
  EXPECT_TRUE(some_not_dense);
  auto f = generic_filter(s, p, s.family().front());
  EXPECT_FALSE(verify_realizes(build_AF(s, f), f.sigma).ok());
}

TEST(ConsProp, MaximalFamilySatisfiesTheBiconditional) {
  auto s = load_cp("cp_kappa_omega.json");
  EXPECT_TRUE(check_smax(s).ok());
  auto p = forcing_poset(s);
  auto f = generic_filter(s, p, s.family().front());
  EXPECT_TRUE(check_kappa_omega_iff(s, f).ok());
}

TEST(ConsProp, CpFromModelAndExplicitReduction) {
  auto m = appendix_model();
  auto pool = parse_pool(load_json(kCorpus / "appendix_pool.json"));
  auto s = cp_from_model(m, pool);
  auto e = to_explicit(s, true);
  EXPECT_TRUE(e.is_explicit());
  EXPECT_EQ(e.family().size(), s.clause_members().size());
}

TEST(ConsProp, TermModelIdentifiesEqualConstants) {
  Signature sig({{"R", 1}}, {"c", "d"});
  SentenceSet sigma = {Formula::eq(c("c"), c("d")), R(c("c")), Formula::eq(c("c"), c("c")), Formula::eq(c("d"), c("d"))};
  auto t = term_model_from_sigma(normalize_set(sigma), sig, {"c", "d"});
  EXPECT_EQ(t.class_index("c"), t.class_index("d"));
  EXPECT_EQ(t.classes.size(), 1u);
}
