#include <gtest/gtest.h>

#include <set>
#include <string>

#include "viphon/error.hpp"
#include "viphon/lexicon.hpp"
#include "viphon/phonology.hpp"
#include "viphon/tokenizer.hpp"
#include "viphon/unicode.hpp"

using namespace viphon;

namespace {

std::set<std::string> written_forms(PhonemeClass cls, bool diphthongs) {
  std::set<std::string> out;
  for (const auto& rule : inventory(cls)) {
    if (cls == PhonemeClass::kVowel && rule.is_diphthong() != diphthongs) continue;
    out.insert(rule.written_form);
  }
  return out;
}

std::set<std::uint8_t> phonemes(PhonemeClass cls, bool diphthongs) {
  std::set<std::uint8_t> out;
  for (const auto& rule : inventory(cls)) {
    if (cls == PhonemeClass::kVowel && rule.is_diphthong() != diphthongs) continue;
    out.insert(rule.phoneme);
  }
  return out;
}

}  // namespace

TEST(Inventory, Sizes) {
  EXPECT_EQ(phoneme_count(PhonemeClass::kInitial), 22u);
  EXPECT_EQ(phonemes(PhonemeClass::kInitial, false).size(), 22u);
  EXPECT_EQ(written_forms(PhonemeClass::kInitial, false).size(), 26u);

  EXPECT_EQ(phonemes(PhonemeClass::kGlide, false).size(), 1u);
  EXPECT_EQ(written_forms(PhonemeClass::kGlide, false), (std::set<std::string>{"o", "u"}));

  EXPECT_EQ(phonemes(PhonemeClass::kVowel, true).size(), 3u);
  EXPECT_EQ(written_forms(PhonemeClass::kVowel, true).size(), 8u);
  EXPECT_EQ(phonemes(PhonemeClass::kVowel, false).size(), 12u);
  EXPECT_EQ(written_forms(PhonemeClass::kVowel, false).size(), 13u);

  EXPECT_EQ(phonemes(PhonemeClass::kFinal, false).size(), 10u);
  EXPECT_EQ(written_forms(PhonemeClass::kFinal, false).size(), 12u);
}

TEST(Inventory, EveryPhonemeHasASpelling) {
  for (auto cls : kAllClasses) {
    const auto seen = phonemes(cls, cls == PhonemeClass::kVowel);
    std::set<std::uint8_t> all = seen;
    if (cls == PhonemeClass::kVowel) {
      for (auto p : phonemes(cls, false)) all.insert(p);
    }
    EXPECT_EQ(all.size(), phoneme_count(cls)) << class_name(cls);
  }
}

TEST(Inventory, FormsAreNfcAndToneless) {
  for (auto cls : kAllClasses) {
    for (const auto& rule : inventory(cls)) {
      EXPECT_TRUE(unicode::is_nfc(rule.written_form)) << rule.written_form;
      const auto stripped = strip_tone(rule.written_form);
      EXPECT_EQ(stripped.tone, Tone::kFlat) << rule.written_form;
      EXPECT_EQ(stripped.base_letters, rule.written_form);
    }
  }
}

TEST(Inventory, LongestFormFirst) {
  for (auto cls : kAllClasses) {
    const auto rules = inventory(cls);
    for (std::size_t i = 1; i < rules.size(); ++i) {
      EXPECT_GE(unicode::decode_utf8(rules[i - 1].written_form).size(),
                unicode::decode_utf8(rules[i].written_form).size());
    }
  }
}

TEST(Inventory, IpaLookupIsInverse) {
  for (auto cls : kAllClasses) {
    for (std::size_t i = 0; i < phoneme_count(cls); ++i) {
      const auto index = static_cast<std::uint8_t>(i);
      EXPECT_EQ(phoneme_from_ipa(cls, ipa(cls, index)), index);
    }
  }
  EXPECT_FALSE(phoneme_from_ipa(PhonemeClass::kInitial, "ʔ").has_value());
}

TEST(Tones, BijectionWithMarks) {
  std::set<char32_t> marks;
  for (auto tone : kAllTones) {
    EXPECT_EQ(tone_from_name(tone_name(tone)), tone);
    if (tone == Tone::kFlat) {
      EXPECT_EQ(tone_mark(tone), 0u);
      continue;
    }
    EXPECT_EQ(tone_from_mark(tone_mark(tone)), tone);
    marks.insert(tone_mark(tone));
  }
  EXPECT_EQ(marks.size(), 5u);
  EXPECT_FALSE(tone_from_mark(U'̂').has_value());  // circumflex is a letter mark
}

TEST(Validate, MissingNucleus) {
  Syllable s;
  s.initial = Initial::kB;
  const auto result = validate(s);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.violations.front().rule, kMissingNucleus);
}

TEST(Validate, StopFinalTonesOnlyInStrictMode) {
  Syllable s{Initial::kB, std::nullopt, Vowel::kA, Final::kT, Tone::kLowFalling};
  EXPECT_TRUE(validate(s).ok());
  const auto strict = validate(s, true);
  ASSERT_FALSE(strict.ok());
  EXPECT_EQ(strict.violations.front().rule, kStopFinalTone);
  s.tone = Tone::kMidRaising;
  EXPECT_TRUE(validate(s, true).ok());
  s.tone = Tone::kMidGlottalizedRaising;
  EXPECT_TRUE(validate(s, true).ok());
}

// Every stop-final word in the lexicon carries one of the two permitted tones.
TEST(Validate, LexiconSatisfiesStrictRules) {
  std::size_t stop_final = 0;
  for (const auto& word : bundled_lexicon()) {
    const auto parsed = parse_syllable(word);
    if (parsed.syllable.final && is_stop(*parsed.syllable.final)) ++stop_final;
    EXPECT_TRUE(validate(parsed.syllable, true).ok()) << word;
  }
  EXPECT_GT(stop_final, 500u);
}

TEST(RuleTableParse, RejectsBadRows) {
  EXPECT_THROW(RuleTable::parse("initial\tb\tʔ\t-\n"), Error);
  EXPECT_THROW(RuleTable::parse("initial\tb\tb\tsomewhere\n"), Error);
  EXPECT_THROW(RuleTable::parse("initial\tb\tb\t-\ninitial\tb\tb\t-\n"), Error);
  EXPECT_THROW(RuleTable::parse("onset\tb\tb\t-\n"), Error);
  EXPECT_THROW(RuleTable::parse("initial\tb\n"), Error);
  EXPECT_THROW(RuleTable::parse("vowel\tá\ta\t-\n"), Error);
}

TEST(RuleTableParse, ErrorCarriesLineNumber) {
  try {
    RuleTable::parse("# comment\ninitial\tb\tb\t-\ninitial\tx\tq\t-\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find('3'), std::string::npos) << e.what();
  }
}

TEST(RuleTableParse, BuiltinSourceReparses) {
  const auto table = RuleTable::parse(RuleTable::builtin().source_text());
  for (auto cls : kAllClasses) {
    EXPECT_EQ(table.rules(cls).size(), RuleTable::builtin().rules(cls).size());
  }
}

TEST(RuleTableParse, CandidatesShareTheLeadingLetter) {
  const auto& table = RuleTable::builtin();
  const auto cands = table.candidates(PhonemeClass::kInitial, "nghiêm");
  ASSERT_FALSE(cands.empty());
  EXPECT_EQ(cands.front()->written_form, "ngh");
  for (const auto* rule : cands) EXPECT_EQ(rule->written_form.front(), 'n');
}
