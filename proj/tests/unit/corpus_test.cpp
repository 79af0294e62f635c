#include <gtest/gtest.h>

#include "infkit/corpus.hpp"

using namespace infkit;

namespace {

const std::filesystem::path kCorpus = INFKIT_CORPUS_DIR;

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("infkit_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Corpus, ShippedManifestIsGreen) {
  auto r = run_corpus(kCorpus / "manifest.json");
  EXPECT_TRUE(r.ok()) << r.to_string();
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_GT(r.checks(), r.entries.size());
}

TEST(Corpus, OneMutatedProofGivesExactlyOneRedEntry) {
  auto dir = scratch("mutated");
  for (const auto& f : std::filesystem::directory_iterator(kCorpus)) std::filesystem::copy(f.path(), dir);
  Json p = load_json(dir / "proof_cut.json");
  p["steps"].back()["rule"]["name"] = "weakening";
  write_text(dir / "proof_cut.json", canonical_text(p));
  auto r = run_corpus(dir / "manifest.json");
  std::vector<std::string> red;
  for (const auto& e : r.entries)
    if (!e.ok()) red.push_back(e.name);
  ASSERT_EQ(red.size(), 1u) << r.to_string();
  EXPECT_EQ(red.front(), "proof: cut");
  EXPECT_FALSE(r.ok());
  std::filesystem::remove_all(dir);
}

TEST(Corpus, EmptyManifestWarns) {
  auto dir = scratch("empty");
  write_text(dir / "manifest.json", "{\n  \"entries\": []\n}\n");
  auto r = run_corpus(dir / "manifest.json");
  EXPECT_TRUE(r.entries.empty());
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.to_string().find("no entries"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Corpus, MissingFileIsAnInputError) {
  auto dir = scratch("missing");
  write_text(dir / "manifest.json",
             "{\n  \"entries\": [\n    {\n      \"expect\": {},\n      \"file\": \"nope.json\",\n      \"kind\": \"model\",\n"
             "      \"name\": \"missing\"\n    }\n  ]\n}\n");
  EXPECT_THROW(load_manifest(dir / "manifest.json"), InfkitError);
  std::filesystem::remove_all(dir);
}

TEST(Corpus, NonCanonicalFileFailsRoundTrip) {
  auto dir = scratch("noncanon");
  write_text(dir / "f.json", R"({"atom": {"args": [{"const": "c"}], "rel": "R"}})");
  std::string emitted;
  EXPECT_FALSE(roundtrip_identical(dir / "f.json", FileKind::Formula, &emitted));
  write_text(dir / "g.json", emitted);
  EXPECT_TRUE(roundtrip_identical(dir / "g.json", FileKind::Formula));
  std::filesystem::remove_all(dir);
}
