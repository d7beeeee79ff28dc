#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "viphon/phonology.hpp"

namespace viphon {

// A word with its tone mark removed. `base_letters` is NFC and still carries
// the letter diacritics (breve, circumflex, horn, stroke).
struct NormalizedWord {
  std::string base_letters;
  Tone tone = Tone::kFlat;
  // Tone-table entries compared while identifying the mark.
  int comparisons = 0;
};

// Accepts composed or decomposed input and marks on any letter. Throws
// MultipleToneMarks when more than one tone mark is present.
NormalizedWord strip_tone(std::string_view word);

struct MatchContext {
  // Written form already consumed as the initial ("q" licenses a glide "u").
  std::string_view initial_form;
};

struct ComponentMatch {
  std::optional<std::uint8_t> phoneme;
  std::string_view form;       // matched written form, empty when none
  std::string_view remainder;  // view into the input
  int comparisons = 0;
};

// Longest-prefix match of a tone-stripped word against one class table. On no
// match, `phoneme` is empty and `remainder` is the whole input.
ComponentMatch match_component(std::string_view word, PhonemeClass cls, const MatchContext& context = {},
                               const RuleTable& table = RuleTable::builtin());

struct ComponentForms {
  std::string initial;
  std::string glide;
  std::string vowel;  // empty for the "i" shared with initial "gi"
  std::string final;
};

struct ParseResult {
  Syllable syllable;
  std::string consumed;  // the input word
  std::string residue;   // unparsed letters; empty on success
  ComponentForms forms;
  std::string failure;   // reason, empty on success
  int rule_comparisons = 0;

  bool ok() const { return failure.empty() && residue.empty() && syllable.vowel.has_value(); }
};

// Parses one lowercase word as tone, initial, glide, vowel, final in that
// order. Never throws for an unparseable word; inspect ok().
ParseResult try_parse_syllable(std::string_view word, const RuleTable& table = RuleTable::builtin());

// As try_parse_syllable, throwing ParseFailure when the word does not parse.
ParseResult parse_syllable(std::string_view word, const RuleTable& table = RuleTable::builtin());

// Worst-case rule comparisons of one parse_syllable call for `table`.
int max_rule_comparisons(const RuleTable& table = RuleTable::builtin());

// One syllable per whitespace-separated word, in order. Throws ParseFailure
// carrying the index of the first failing word.
std::vector<Syllable> tokenize(std::string_view transcript);

struct RenderedParts {
  std::string initial;
  std::string glide;
  std::string vowel;
  std::string final;
  std::string text;  // NFC, with the tone mark placed
};

// Chooses written forms from the neighbouring components and places the tone
// mark on the nucleus. Throws RenderFailure for combinations without a
// spelling.
RenderedParts render_parts(const Syllable& syllable);
std::string render_syllable(const Syllable& syllable);

// Every spelling the orthography accepts for the syllable, canonical first:
// the canonical form, traditional tone placement on "oa", "oe", "uy" style
// open rhymes, and the i/y alternation of the /i/ nucleus.
std::vector<std::string> accepted_spellings(const Syllable& syllable);

// Space-joined render_syllable. RenderFailure messages carry the index.
std::string detokenize(std::span<const Syllable> syllables);

// Interchange format: "initial|glide|vowel|final|tone" with "∅" for an absent
// component, e.g. "h|u̯|a|ŋ|LowFalling".
inline constexpr std::string_view kAbsent = "∅";
std::string to_phoneme_string(const Syllable& syllable);
// Throws Error on malformed fields.
Syllable syllable_from_phoneme_string(std::string_view text);
std::string to_phoneme_line(std::span<const Syllable> syllables);
std::vector<Syllable> syllables_from_phoneme_line(std::string_view line);

}  // namespace viphon
