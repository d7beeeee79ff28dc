#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "viphon/error.hpp"
#include "viphon/lexicon.hpp"
#include "viphon/tokenizer.hpp"
#include "viphon/vocab.hpp"

using namespace viphon;

namespace {

const VocabBuild& full() {
  static const VocabBuild build = build_vocab(bundled_lexicon());
  return build;
}

}  // namespace

TEST(Vocab, SpaceSizes) {
  const auto& v = full().vocab;
  EXPECT_EQ(v.content_size(TokenSpace::kTone), 6u);
  EXPECT_EQ(v.content_size(TokenSpace::kInitial), 23u);  // 22 + ∅
  EXPECT_TRUE(v.id(TokenSpace::kInitial, "∅").has_value());
  const auto& r = full().report;
  EXPECT_EQ(r.initials_without_empty, 22u);
  EXPECT_EQ(r.initial_tokens, 23u);
  EXPECT_EQ(r.tone_tokens, 6u);
  EXPECT_EQ(r.rhyme_tokens, v.content_size(TokenSpace::kRhyme));
}

// Distinct rhymes counted by a direct pass over the parses.
TEST(Vocab, RhymeCountMatchesEnumeration) {
  std::set<std::string> rhymes;
  for (const auto& w : bundled_lexicon()) rhymes.insert(rhyme_token(rhyme_of(parse_syllable(w).syllable)));
  EXPECT_EQ(full().report.rhymes_observed, rhymes.size());
  EXPECT_EQ(full().report.rhyme_tokens, rhymes.size());
}

TEST(Vocab, ReportNamesThePublishedFigures) {
  const auto json = full().report.to_json();
  EXPECT_NE(json.find("145"), std::string::npos);
  EXPECT_NE(json.find("163"), std::string::npos);
  EXPECT_NE(json.find("discrepancies"), std::string::npos);
}

TEST(Vocab, ControlTokensFirst) {
  for (auto space : kAllSpaces) {
    const auto tokens = full().vocab.tokens(space);
    EXPECT_EQ(tokens[kPadId], "<pad>");
    EXPECT_EQ(tokens[kBosId], "<bos>");
    EXPECT_EQ(tokens[kEosId], "<eos>");
    EXPECT_TRUE(std::is_sorted(tokens.begin() + kFirstContentId, tokens.end())) << space_name(space);
  }
}

TEST(Vocab, EncodeBa) {
  const auto& v = full().vocab;
  const auto ids = v.encode(parse_syllable("ba").syllable);
  EXPECT_EQ(ids.initial, v.id(TokenSpace::kInitial, "b"));
  EXPECT_EQ(ids.rhyme, v.id(TokenSpace::kRhyme, "∅|a|∅"));
  EXPECT_EQ(ids.tone, v.id(TokenSpace::kTone, "Flat"));
  EXPECT_EQ(v.decode(ids), parse_syllable("ba").syllable);
}

TEST(Vocab, DecodeInvertsEncodeOnTheLexicon) {
  const auto& v = full().vocab;
  for (const auto& w : bundled_lexicon()) {
    const auto s = parse_syllable(w).syllable;
    EXPECT_EQ(v.decode(v.encode(s)), s) << w;
  }
}

TEST(Vocab, EncodeInvertsDecodeOnAllIds) {
  const auto& v = full().vocab;
  const int ni = static_cast<int>(v.size(TokenSpace::kInitial));
  const int nr = static_cast<int>(v.size(TokenSpace::kRhyme));
  const int nt = static_cast<int>(v.size(TokenSpace::kTone));
  for (int i = kFirstContentId; i < ni; ++i) {
    for (int r = kFirstContentId; r < nr; ++r) {
      for (int t = kFirstContentId; t < nt; ++t) {
        const TokenIds ids{i, r, t};
        ASSERT_EQ(v.encode(v.decode(ids)), ids);
      }
    }
  }
}

TEST(Vocab, Errors) {
  const std::vector<std::string> small = {"ba", "mẹ"};
  const auto v = build_vocab(small).vocab;
  // A rhyme outside the closed table has no token.
  std::optional<Rhyme> missing;
  const auto& table = closed_rhyme_table();
  for (std::size_t vowel = 0; vowel < kVowelCount && !missing; ++vowel) {
    for (std::size_t fin = 0; fin < kFinalCount && !missing; ++fin) {
      const Rhyme r{Glide::kU, static_cast<Vowel>(vowel), static_cast<Final>(fin)};
      if (std::find(table.begin(), table.end(), r) == table.end()) missing = r;
    }
  }
  ASSERT_TRUE(missing);
  const Syllable odd{Initial::kB, missing->glide, missing->vowel, missing->final, Tone::kFlat};
  EXPECT_THROW(v.encode(odd), UnknownComponent);
  EXPECT_THROW(v.decode({kFirstContentId, 999, kFirstContentId}), IdOutOfRange);
  EXPECT_THROW(v.decode({kPadId, kFirstContentId, kFirstContentId}), IdOutOfRange);
  EXPECT_THROW(v.decode({-1, kFirstContentId, kFirstContentId}), IdOutOfRange);
  EXPECT_THROW(v.token(TokenSpace::kTone, 9), IdOutOfRange);
  EXPECT_THROW(rhyme_from_token("∅|x|∅"), UnknownComponent);
  const std::vector<std::string> bad = {"ba", "xyz"};
  EXPECT_THROW(build_vocab(bad), ParseFailure);
}

TEST(Vocab, StableAcrossBuildsAndOrder) {
  auto words = bundled_lexicon();
  std::reverse(words.begin(), words.end());
  EXPECT_EQ(build_vocab(words).vocab, full().vocab);
  EXPECT_EQ(build_vocab(words).vocab.to_table(), full().vocab.to_table());
}

TEST(Vocab, TableRoundTrip) {
  const auto table = full().vocab.to_table();
  const auto back = Vocabulary::from_table(table);
  EXPECT_EQ(back, full().vocab);
  EXPECT_EQ(back.to_table(), table);
  EXPECT_THROW(Vocabulary::from_table("initial\t0\t<pad>\nbogus"), Error);
}

TEST(Vocab, RhymeTokenRoundTrip) {
  for (const auto& rhyme : closed_rhyme_table()) EXPECT_EQ(rhyme_from_token(rhyme_token(rhyme)), rhyme);
  EXPECT_EQ(rhyme_token(rhyme_of(parse_syllable("hoàng").syllable)), "u̯|a|ŋ");
}
