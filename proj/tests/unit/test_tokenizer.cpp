#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

#include "golden.hpp"
#include "test_support.hpp"
#include "viphon/error.hpp"
#include "viphon/lexicon.hpp"
#include "viphon/tokenizer.hpp"
#include "viphon/unicode.hpp"

using namespace viphon;

TEST(StripTone, Examples) {
  auto w = strip_tone("kiệm");
  EXPECT_EQ(w.base_letters, "kiêm");
  EXPECT_EQ(w.tone, Tone::kMidGlottalizedRaising);

  w = strip_tone("ba");
  EXPECT_EQ(w.base_letters, "ba");
  EXPECT_EQ(w.tone, Tone::kFlat);

  w = strip_tone("hoàng");
  EXPECT_EQ(w.base_letters, "hoang");
  EXPECT_EQ(w.tone, Tone::kLowFalling);
}

TEST(StripTone, DecomposedInputAndAnyCarrier) {
  const auto nfd = strip_tone(unicode::to_nfd("nguyễn"));
  EXPECT_EQ(nfd.base_letters, "nguyên");
  EXPECT_EQ(nfd.tone, Tone::kMidGlottalizedFalling);
  const auto odd = strip_tone("hòang");
  EXPECT_EQ(odd.base_letters, "hoang");
  EXPECT_EQ(odd.tone, Tone::kLowFalling);
}

TEST(StripTone, MultipleMarks) {
  EXPECT_THROW(strip_tone("hòá"), MultipleToneMarks);
  EXPECT_THROW(strip_tone("bá\xCC\x80"), MultipleToneMarks);
}

TEST(MatchComponent, Examples) {
  auto m = match_component("nghiêm", PhonemeClass::kInitial);
  ASSERT_TRUE(m.phoneme);
  EXPECT_EQ(ipa(PhonemeClass::kInitial, *m.phoneme), "ŋ");
  EXPECT_EQ(m.form, "ngh");
  EXPECT_EQ(m.remainder, "iêm");

  m = match_component("a", PhonemeClass::kInitial);
  EXPECT_FALSE(m.phoneme);
  EXPECT_EQ(m.remainder, "a");

  m = match_component("uyên", PhonemeClass::kGlide);
  ASSERT_TRUE(m.phoneme);
  EXPECT_EQ(ipa(PhonemeClass::kGlide, *m.phoneme), "u̯");
  EXPECT_EQ(m.form, "u");
  EXPECT_EQ(m.remainder, "yên");
}

TEST(ParseSyllable, Hoang) {
  const auto r = parse_syllable("hoàng");
  EXPECT_EQ(r.syllable.initial, Initial::kH);
  EXPECT_EQ(r.syllable.glide, Glide::kU);
  EXPECT_EQ(r.syllable.vowel, Vowel::kA);
  EXPECT_EQ(r.syllable.final, Final::kNg);
  EXPECT_EQ(r.syllable.tone, Tone::kLowFalling);
}

TEST(ParseSyllable, May) {
  const auto r = parse_syllable("máy");
  EXPECT_EQ(r.syllable.initial, Initial::kM);
  EXPECT_EQ(r.syllable.vowel, Vowel::kABreve);
  EXPECT_EQ(r.forms.vowel, "a");
  EXPECT_EQ(r.syllable.final, Final::kI);
  EXPECT_EQ(r.forms.final, "y");
  EXPECT_EQ(r.syllable.tone, Tone::kMidRaising);
}

TEST(ParseSyllable, Failures) {
  EXPECT_THROW(parse_syllable("xyz"), ParseFailure);
  EXPECT_FALSE(try_parse_syllable("hello").ok());
  EXPECT_FALSE(try_parse_syllable("").ok());
  EXPECT_FALSE(try_parse_syllable("ng").ok());
  try {
    parse_syllable("bax");
    FAIL();
  } catch (const ParseFailure& e) {
    EXPECT_EQ(e.word(), "bax");
    EXPECT_EQ(e.residue(), "x");
  }
}

TEST(ParseSyllable, GiSharesItsI) {
  const auto gi = parse_syllable("gì");
  EXPECT_EQ(gi.syllable.initial, Initial::kGi);
  EXPECT_EQ(gi.syllable.vowel, Vowel::kI);
  EXPECT_EQ(gi.syllable.tone, Tone::kLowFalling);
  EXPECT_EQ(render_syllable(gi.syllable), "gì");

  // A vowel letter after "gi" is the nucleus itself.
  const auto gieng = parse_syllable("giếng");
  EXPECT_EQ(gieng.syllable.initial, Initial::kGi);
  EXPECT_EQ(gieng.syllable.vowel, Vowel::kECircumflex);
  EXPECT_EQ(render_syllable(gieng.syllable), "giếng");

  const auto gin = parse_syllable("gìn");
  EXPECT_EQ(gin.syllable.vowel, Vowel::kI);
  EXPECT_EQ(gin.syllable.final, Final::kN);
}

TEST(ParseSyllable, QuIsInitialPlusGlide) {
  const auto r = parse_syllable("quê");
  EXPECT_EQ(r.syllable.initial, Initial::kK);
  EXPECT_EQ(r.syllable.glide, Glide::kU);
  EXPECT_EQ(r.syllable.vowel, Vowel::kECircumflex);
}

TEST(ParseSyllable, CountsComparisons) {
  const auto r = parse_syllable("nghiêng");
  EXPECT_GT(r.rule_comparisons, 0);
  EXPECT_LE(r.rule_comparisons, max_rule_comparisons());
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("ba mẹ").size(), 2u);
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("   \t ").empty());

  const auto s = tokenize("kiến thức");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (Syllable{Initial::kK, std::nullopt, Vowel::kIe, Final::kN, Tone::kMidRaising}));
  EXPECT_EQ(s[1], (Syllable{Initial::kTh, std::nullopt, Vowel::kUHorn, Final::kC, Tone::kMidRaising}));
}

TEST(Tokenize, FailureCarriesIndex) {
  try {
    tokenize("ba mẹ okay");
    FAIL();
  } catch (const ParseFailure& e) {
    EXPECT_EQ(e.word_index(), 2u);
    EXPECT_EQ(e.word(), "okay");
  }
}

TEST(Render, Examples) {
  EXPECT_EQ(render_syllable({Initial::kK, Glide::kU, Vowel::kECircumflex, std::nullopt, Tone::kFlat}), "quê");
  EXPECT_EQ(render_syllable({Initial::kKh, Glide::kU, Vowel::kIe, std::nullopt, Tone::kFlat}), "khuya");
  EXPECT_EQ(render_syllable({std::nullopt, Glide::kU, Vowel::kIe, Final::kN, Tone::kFlat}), "uyên");
  EXPECT_EQ(render_syllable({Initial::kM, std::nullopt, Vowel::kABreve, Final::kI, Tone::kMidRaising}), "máy");
  EXPECT_EQ(render_syllable({Initial::kNg, std::nullopt, Vowel::kIe, Final::kM, Tone::kFlat}), "nghiêm");
  EXPECT_EQ(render_syllable({Initial::kK, std::nullopt, Vowel::kI, Final::kM, Tone::kFlat}), "kim");
  EXPECT_EQ(render_syllable({Initial::kK, std::nullopt, Vowel::kA, std::nullopt, Tone::kFlat}), "ca");
}

TEST(Render, ChuyenRoundTrip) {
  const auto s = parse_syllable("chuyện").syllable;
  EXPECT_EQ(render_syllable(s), "chuyện");
}

TEST(Render, UnspellableThrows) {
  EXPECT_THROW(render_syllable({Initial::kB, std::nullopt, std::nullopt, std::nullopt, Tone::kFlat}),
               RenderFailure);
  EXPECT_THROW(render_syllable({Initial::kB, Glide::kU, Vowel::kU, std::nullopt, Tone::kFlat}), RenderFailure);
}

TEST(Detokenize, Examples) {
  EXPECT_EQ(detokenize({}), "");
  EXPECT_EQ(detokenize(tokenize("giếng nước")), "giếng nước");
}

TEST(Detokenize, FailureNamesTheIndex) {
  std::vector<Syllable> s = tokenize("ba mẹ");
  s.push_back(Syllable{});
  try {
    detokenize(s);
    FAIL();
  } catch (const RenderFailure& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos) << e.what();
  }
}

TEST(AcceptedSpellings, TraditionalPlacementAndIy) {
  const auto hoa = accepted_spellings(parse_syllable("hoà").syllable);
  ASSERT_FALSE(hoa.empty());
  EXPECT_EQ(hoa.front(), "hoà");
  EXPECT_NE(std::find(hoa.begin(), hoa.end(), "hòa"), hoa.end());

  const auto thuy = accepted_spellings(parse_syllable("thuỷ").syllable);
  EXPECT_NE(std::find(thuy.begin(), thuy.end(), "thủy"), thuy.end());

  const auto quy = accepted_spellings(parse_syllable("quý").syllable);
  EXPECT_NE(std::find(quy.begin(), quy.end(), "quí"), quy.end());
}

TEST(PhonemeString, RoundTrip) {
  const auto s = parse_syllable("hoàng").syllable;
  EXPECT_EQ(to_phoneme_string(s), "h|u̯|a|ŋ|LowFalling");
  EXPECT_EQ(syllable_from_phoneme_string("h|u̯|a|ŋ|LowFalling"), s);
  EXPECT_EQ(to_phoneme_string(parse_syllable("a").syllable), "∅|∅|a|∅|Flat");

  const auto line = tokenize("giếng nước trong");
  EXPECT_EQ(syllables_from_phoneme_line(to_phoneme_line(line)), line);
}

TEST(PhonemeString, Malformed) {
  EXPECT_THROW(syllable_from_phoneme_string("h|u̯|a|ŋ"), Error);
  EXPECT_THROW(syllable_from_phoneme_string("h|u̯|a|ŋ|Rising"), Error);
  EXPECT_THROW(syllable_from_phoneme_string("q|∅|a|∅|Flat"), Error);
}

TEST(Golden, EveryRowParses) {
  const auto rows = testkit::parse_golden(testkit::read_file(testkit::data_path("golden_examples.tsv")));
  ASSERT_GE(rows.size(), 120u);
  std::set<std::string> words;
  for (const auto& row : rows) {
    words.insert(row.word);
    EXPECT_EQ(testkit::check_golden(row), "") << row.word << " " << row.cls << " " << row.written_form;
  }
  EXPECT_GE(words.size(), 120u);
}

// Properties over the bundled lexicon.

TEST(Lexicon, RoundTripAndInjective) {
  const auto& lexicon = bundled_lexicon();
  ASSERT_GE(lexicon.size(), 5000u);
  std::set<Syllable> seen;
  const int bound = max_rule_comparisons();
  for (const auto& word : lexicon) {
    const auto parsed = parse_syllable(word);
    EXPECT_EQ(render_syllable(parsed.syllable), word);
    EXPECT_LE(parsed.rule_comparisons, bound) << word;
    EXPECT_TRUE(seen.insert(parsed.syllable).second) << "two words share a parse: " << word;
    EXPECT_EQ(syllable_from_phoneme_string(to_phoneme_string(parsed.syllable)), parsed.syllable);
  }
}

TEST(Lexicon, DecomposedInputParsesTheSame) {
  for (const auto& word : bundled_lexicon()) {
    EXPECT_EQ(parse_syllable(unicode::to_nfd(word)).syllable, parse_syllable(word).syllable) << word;
  }
}

TEST(Lexicon, VariantsParseToTheSameSyllable) {
  for (const auto& word : bundled_lexicon()) {
    const auto s = parse_syllable(word).syllable;
    const auto spellings = accepted_spellings(s);
    ASSERT_FALSE(spellings.empty());
    EXPECT_EQ(spellings.front(), word);
    for (const auto& v : spellings) EXPECT_EQ(parse_syllable(v).syllable, s) << v;
  }
}

TEST(Lexicon, RandomSentencesKeepLength) {
  const auto& lexicon = bundled_lexicon();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, lexicon.size() - 1);
  std::uniform_int_distribution<int> length(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::string sentence;
    const int n = length(rng);
    for (int i = 0; i < n; ++i) {
      if (i) sentence += ' ';
      sentence += lexicon[pick(rng)];
    }
    const auto syllables = tokenize(sentence);
    EXPECT_EQ(syllables.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(detokenize(syllables), sentence);
  }
}

TEST(Lexicon, ComparisonBoundIsSmall) {
  EXPECT_LE(max_rule_comparisons(), 58);
}
