#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "viphon/corpus.hpp"
#include "viphon/error.hpp"
#include "viphon/lexicon.hpp"

using namespace viphon;

namespace {

std::vector<TranscriptRecord> fixture() {
  std::istringstream in(testkit::read_file(testkit::data_path("manifest_10.jsonl")));
  return read_manifest(in);
}

std::vector<std::string> ids(const std::vector<TranscriptRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) out.push_back(r.utterance_id);
  return out;
}

}  // namespace

TEST(CleanWord, Examples) {
  EXPECT_EQ(clean_word("Kiệm,"), "kiệm");
  EXPECT_EQ(clean_word("BA"), "ba");
  EXPECT_EQ(clean_word("“Quê”"), "quê");
  EXPECT_EQ(clean_word("..."), "");
  EXPECT_EQ(clean_word("ba\xCC\x80!"), "bà");
}

TEST(SplitWords, Hyphens) {
  EXPECT_EQ(split_words("đậm-đà"), (std::vector<std::string>{"đậm", "đà"}));
  EXPECT_EQ(split_words("Ba, mẹ – con!"), (std::vector<std::string>{"ba", "mẹ", "con"}));
  EXPECT_TRUE(split_words(" - ").empty());
}

TEST(IsVietnamese, Examples) {
  EXPECT_TRUE(is_vietnamese_word("quê"));
  EXPECT_FALSE(is_vietnamese_word("hello"));
  EXPECT_FALSE(is_vietnamese_word("okay"));
  EXPECT_FALSE(is_vietnamese_word("ba2"));
  EXPECT_FALSE(is_vietnamese_word("hòá"));
  EXPECT_TRUE(is_vietnamese_word("hòa"));
  EXPECT_FALSE(is_vietnamese_word("hòa", SpellingPolicy::kCanonicalOnly));
  EXPECT_TRUE(is_vietnamese_word("hoà", SpellingPolicy::kCanonicalOnly));
}

TEST(IsVietnamese, WholeLexicon) {
  for (const auto& w : bundled_lexicon()) {
    EXPECT_TRUE(is_vietnamese_word(w, SpellingPolicy::kCanonicalOnly)) << w;
  }
}

TEST(OffendingWords, KeepsOrderAndRepeats) {
  EXPECT_EQ(offending_words("okay ba okay, hello"), (std::vector<std::string>{"okay", "okay", "hello"}));
  EXPECT_TRUE(offending_words("Giếng nước").empty());
}

TEST(Manifest, ParseLine) {
  const auto r = parse_manifest_line(R"({"id":"a","transcript":"ba mẹ","split":"dev","x":1})", 4);
  EXPECT_EQ(r.utterance_id, "a");
  EXPECT_EQ(r.transcript, "ba mẹ");
  EXPECT_EQ(r.split, Split::kDev);
  EXPECT_EQ(r.line_number, 4u);
}

TEST(Manifest, MalformedLines) {
  const std::vector<std::string> bad = {
      "not json",
      R"({"id":"a","transcript":"ba"})",
      R"({"id":"a","transcript":"ba","split":"valid"})",
      R"({"id":3,"transcript":"ba","split":"dev"})",
      R"(["a"])",
  };
  for (const auto& line : bad) EXPECT_THROW(parse_manifest_line(line, 1), MalformedManifestLine) << line;
  std::istringstream in("{\"id\":\"a\",\"transcript\":\"ba\",\"split\":\"dev\"}\n\nbroken\n");
  try {
    read_manifest(in);
    FAIL();
  } catch (const MalformedManifestLine& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Filter, TenPercent) {
  const auto records = fixture();
  ASSERT_EQ(records.size(), 10u);
  const auto result = filter_manifest(records);
  EXPECT_EQ(result.kept.size(), 9u);
  ASSERT_EQ(result.discarded.size(), 1u);
  EXPECT_EQ(result.discarded[0].utterance_id, "utt-005");
  EXPECT_EQ(result.discarded[0].offending_words, (std::vector<std::string>{"okay"}));
  EXPECT_EQ(result.stats.overall().records, 10u);
  EXPECT_EQ(result.stats.overall().discarded, 1u);
  EXPECT_EQ(result.stats.overall().percent(), 10.0);
  EXPECT_EQ(result.stats.at(Split::kTrain).percent(), 20.0);
  EXPECT_EQ(result.stats.at(Split::kDev).percent(), 0.0);
}

TEST(Filter, Idempotent) {
  const auto once = filter_manifest(fixture());
  const auto twice = filter_manifest(once.kept);
  EXPECT_EQ(ids(twice.kept), ids(once.kept));
  EXPECT_TRUE(twice.discarded.empty());
}

TEST(Filter, OrderDoesNotChangeVerdicts) {
  auto records = fixture();
  const auto base = filter_manifest(records);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(records.begin(), records.end(), rng);
    const auto shuffled = filter_manifest(records);
    EXPECT_EQ(shuffled.stats, base.stats);
    auto a = ids(shuffled.discarded);
    auto b = ids(base.discarded);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(Filter, StatsAddUp) {
  const auto result = filter_manifest(fixture());
  CorpusStats recomputed;
  for (const auto& r : result.kept) ++recomputed.at(r.split).records;
  for (const auto& r : result.discarded) {
    ++recomputed.at(r.split).records;
    ++recomputed.at(r.split).discarded;
  }
  EXPECT_EQ(recomputed, result.stats);
}

TEST(Filter, AllVietnamese) {
  auto records = filter_manifest(fixture()).kept;
  EXPECT_EQ(filter_manifest(records).stats.overall().percent(), 0.0);
  EXPECT_EQ(SplitStats{}.percent(), 0.0);
}

TEST(Filter, AnnotatedJsonKeepsExtraFields) {
  const auto result = filter_manifest(fixture());
  const auto first = annotated_json(result.kept.front());
  EXPECT_NE(first.find("\"speaker\""), std::string::npos);
  EXPECT_NE(first.find("\"verdict\""), std::string::npos);
  const auto bad = annotated_json(result.discarded.front());
  EXPECT_NE(bad.find("okay"), std::string::npos);
}

TEST(Stats, ReferenceFigures) {
  const auto vivos = reference_percentages("ViVOS");
  ASSERT_TRUE(vivos);
  EXPECT_EQ(vivos->overall, 0.70);
  EXPECT_FALSE(vivos->dev.has_value());
  EXPECT_EQ(reference_percentages("LSVSC")->overall, 9.24);
  EXPECT_FALSE(reference_percentages("other").has_value());
  const auto json = stats_json(filter_manifest(fixture()).stats, vivos);
  EXPECT_NE(json.find("0.87"), std::string::npos);
}
