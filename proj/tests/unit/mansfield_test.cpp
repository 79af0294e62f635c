#include <gtest/gtest.h>

#include "helpers.hpp"
#include "infkit/mansfield.hpp"

using namespace infkit;
using namespace infkit::test;

namespace {

const std::filesystem::path kCorpus = INFKIT_CORPUS_DIR;

}  // namespace

// L(phi) equals the join of Reg(N_p) over the conditions p containing phi.
TEST(Mansfield, LValueIsTheJoinOverSupportingConditions) {
  for (const char* file : {"cp_existential.json", "cp_connectives.json", "cp_two_branches.json"}) {
    auto s = parse_cp(load_json(kCorpus / file));
    for (const auto& root : s.family()) {
      MansfieldFrame frame(s, root);
      const auto& b = frame.algebra();
      for (const auto& phi : s.pool()) {
        Element want = b.bottom();
        for (std::size_t i = 0; i < frame.conditions().size(); ++i)
          if (set_contains(frame.poset().conditions[frame.conditions()[i]], phi)) want = b.join(want, frame.reg_n(i));
        EXPECT_EQ(L_value(frame, phi), want) << file << " " << phi.canonical();
      }
      for (const auto& phi : root) EXPECT_TRUE(b.is_top(L_value(frame, phi)));
    }
  }
}

TEST(Mansfield, ModelSatisfiesRootAndClaims) {
  auto s = parse_cp(load_json(kCorpus / "cp_existential.json"));
  for (const auto& root : s.family()) {
    auto res = mansfield_build(s, root);
    EXPECT_TRUE(res.ok());
    for (const auto& phi : root) EXPECT_TRUE(res.model.algebra().is_top(eval(res.model, phi)));
    EXPECT_TRUE(verify_claim1(*res.frame, s.pool()).ok());
    EXPECT_TRUE(verify_claim2(res, s.pool()).ok());
  }
}

TEST(Mansfield, FailingFamilyIsRefused) {
  auto s = parse_cp(load_json(kCorpus / "cp_con_violation.json"));
  EXPECT_THROW(mansfield_build(s, s.family().front()), CpFailed);
}

TEST(Mansfield, AlgebraPropertyEmbedsDensely) {
  for (int atoms = 1; atoms <= 3; ++atoms) {
    std::vector<std::string> names;
    for (int i = 0; i < atoms; ++i) names.push_back("a" + std::to_string(i));
    auto b = FinBooleanAlgebra::powerset(names);
    auto cp = cp_from_algebra(b);
    EXPECT_TRUE(check_cp(*cp.property).ok());
    EXPECT_TRUE(cp.embedding.ok());
    for (auto x : b.elements()) {
      if (b.is_zero(x)) continue;
      EXPECT_EQ(cp.pi_of({Formula::atom("inG", {c(element_constant(x))})}), x);
    }
    auto rt = roundtrip_check(cp);
    EXPECT_TRUE(rt.isomorphic);
    EXPECT_EQ(rt.ro_atoms, atoms);
  }
}
