#include <gtest/gtest.h>

#include "helpers.hpp"
#include "infkit/corpus.hpp"

using namespace infkit;
using namespace infkit::test;

namespace {

const std::filesystem::path kCorpus = INFKIT_CORPUS_DIR;

std::string error_path(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.path();
  }
  return "<no error>";
}

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(Io, MalformedArityNamesItsPath) {
  Json j = Json::parse(R"({"constants": [], "relations": [{"name": "R", "arity": 1}, {"name": "E", "arity": 0}]})");
  EXPECT_EQ(error_path([&] { parse_signature(j); }), "$.relations[1].arity");
}

TEST(Io, UnknownRelationCitesTheSignature) {
  auto sig = small_signature();
  Json j = Json::parse(R"({"not": {"atom": {"rel": "S", "args": [{"const": "c"}]}}})");
  std::string msg = error_text([&] { parse_formula(j, "$", &sig); });
  EXPECT_NE(msg.find("$.not.atom.rel"), std::string::npos) << msg;
  EXPECT_NE(msg.find("unknown relation 'S'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("R/1"), std::string::npos) << msg;
}

TEST(Io, WrongArgumentCountIsReported) {
  auto sig = small_signature();
  Json j = Json::parse(R"({"atom": {"rel": "E", "args": [{"const": "c"}]}})");
  EXPECT_EQ(error_path([&] { parse_formula(j, "$", &sig); }), "$.atom.args");
}

TEST(Io, InvalidJsonTextIsAParseError) { EXPECT_THROW(parse_json_text("{\"a\": "), ParseError); }

TEST(Io, FormulaRoundTrip) {
  Rng rng(4);
  FormulaShape shape;
  for (int i = 0; i < 100; ++i) {
    Formula f = random_formula(small_signature(), shape, {"v0"}, rng);
    EXPECT_EQ(parse_formula(emit_formula(f)), f);
  }
}

TEST(Io, ModelRoundTripPreservesValues) {
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    auto m = random_model(small_signature(), ModelBounds{3, 3}, rng);
    auto m2 = parse_model(emit_model(m));
    ASSERT_EQ(m2.size(), m.size());
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = 0; b < m.size(); ++b) EXPECT_EQ(m2.eq(a, b), m.eq(a, b));
      EXPECT_EQ(m2.rel("R", {a}), m.rel("R", {a}));
    }
    EXPECT_EQ(canonical_text(emit_model(m2)), canonical_text(emit_model(m)));
  }
}

TEST(Io, KindDetection) {
  EXPECT_EQ(detect_kind(load_json(kCorpus / "appendix_model.json")), FileKind::Model);
  EXPECT_EQ(detect_kind(load_json(kCorpus / "appendix_pool.json")), FileKind::Pool);
  EXPECT_EQ(detect_kind(load_json(kCorpus / "proof_cut.json")), FileKind::Proof);
  EXPECT_EQ(detect_kind(load_json(kCorpus / "cp_existential.json")), FileKind::Cp);
  EXPECT_EQ(detect_kind(load_json(kCorpus / "poset_tree.json")), FileKind::Poset);
  EXPECT_EQ(detect_kind(load_json(kCorpus / "algebra_16.json")), FileKind::Algebra);
  EXPECT_EQ(detect_kind(load_json(kCorpus / "manifest.json")), FileKind::Manifest);
  EXPECT_EQ(kind_from_name("theory"), FileKind::Theory);
  EXPECT_FALSE(kind_from_name("bogus").has_value());
}

TEST(Io, CpMembersMustBeSentences) {
  Json j = load_json(kCorpus / "cp_existential.json");
  j["family"][0].push_back(emit_formula(R(v("v0"))));
  EXPECT_THROW(parse_cp(j), ParseError);
}
