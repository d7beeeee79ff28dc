#include "viphon/tokenizer.hpp"

#include <algorithm>
#include <array>

#include "viphon/error.hpp"
#include "viphon/unicode.hpp"

namespace viphon {
namespace {

bool starts_with_any(std::string_view text, std::initializer_list<std::string_view> prefixes) {
  return std::any_of(prefixes.begin(), prefixes.end(), [&](std::string_view p) { return text.starts_with(p); });
}

bool starts_with_vowel_letter(std::string_view text) {
  return starts_with_any(text, {"a", "ă", "â", "e", "ê", "i", "o", "ô", "ơ", "u", "ư", "y"});
}

bool context_holds(RuleContext context, std::string_view rest, const MatchContext& ctx) {
  switch (context) {
    case RuleContext::kNone: return true;
    case RuleContext::kBeforeU: return rest.starts_with("u");
    case RuleContext::kGlideU: return ctx.initial_form == "q" || starts_with_any(rest, {"ê", "y", "â", "ơ"});
    case RuleContext::kGlideO: return starts_with_any(rest, {"a", "ă", "e"});
    case RuleContext::kWordFinal: return rest.empty();
    case RuleContext::kBeforeFinal: return !rest.empty();
    case RuleContext::kBeforeYOrU: return starts_with_any(rest, {"y", "u"});
  }
  return false;
}

// Letters that attract the tone mark inside a nucleus.
constexpr std::u32string_view kMarkedVowelLetters = U"êôơăâư";

constexpr std::array<std::string_view, kInitialCount> kInitialSpelling = {
    "b", "t", "th", "c", "ph", "đ", "g", "gi", "d", "x", "s",
    "ch", "tr", "ng", "nh", "l", "r", "kh", "v", "m", "n", "h"};
constexpr std::array<std::string_view, kVowelCount> kVowelSpelling = {
    "iê", "uô", "ươ", "a", "ă", "â", "i", "ê", "e", "u", "ư", "o", "oo", "ô", "ơ"};
constexpr std::array<std::string_view, kFinalCount> kFinalSpelling = {
    "i", "m", "n", "ng", "nh", "p", "t", "c", "ch", "u"};

// Nuclei before which /k/ /ɤ/ /ŋ/ take the k / gh / ngh spellings.
bool front_nucleus(const Syllable& s) {
  if (s.glide || !s.vowel) return false;
  const Vowel v = *s.vowel;
  return v == Vowel::kI || v == Vowel::kECircumflex || v == Vowel::kE || v == Vowel::kIe;
}

std::string_view initial_spelling(const Syllable& s) {
  switch (*s.initial) {
    case Initial::kK:
      if (s.glide) return "q";
      return front_nucleus(s) ? "k" : "c";
    case Initial::kG: return front_nucleus(s) ? "gh" : "g";
    case Initial::kNg: return front_nucleus(s) ? "ngh" : "ng";
    default: return kInitialSpelling[static_cast<std::size_t>(*s.initial)];
  }
}

std::string_view glide_spelling(const Syllable& s) {
  if (s.initial == Initial::kK) return "u";
  switch (*s.vowel) {
    case Vowel::kECircumflex:
    case Vowel::kI:
    case Vowel::kIe:
    case Vowel::kACircumflex:
    case Vowel::kOHorn:
      return "u";
    case Vowel::kA:
    case Vowel::kABreve:
    case Vowel::kE:
      return "o";
    default:
      throw RenderFailure("no spelling for the glide before /" + std::string(ipa(*s.vowel)) + "/");
  }
}

// Zero-initial open /i/ is written "y" except for the tones the lexicon only
// attests with "i" (ì, ĩ, ị).
bool bare_i_written_i(Tone tone) {
  return tone == Tone::kLowFalling || tone == Tone::kMidGlottalizedFalling ||
         tone == Tone::kMidGlottalizedRaising;
}

std::string_view vowel_spelling(const Syllable& s) {
  const bool has_final = s.final.has_value();
  switch (*s.vowel) {
    case Vowel::kIe:
      if (has_final) return (s.glide || !s.initial) ? "yê" : "iê";
      return s.glide ? "ya" : "ia";
    case Vowel::kUo: return has_final ? "uô" : "ua";
    case Vowel::kUoHorn: return has_final ? "ươ" : "ưa";
    case Vowel::kABreve: return (s.final == Final::kI || s.final == Final::kU) ? "a" : "ă";
    case Vowel::kI:
      if (s.initial == Initial::kGi && !s.glide) return "";
      if (s.glide) return "y";
      if (has_final) return "i";
      if (!s.initial) return bare_i_written_i(s.tone) ? "i" : "y";
      return "i";
    default: return kVowelSpelling[static_cast<std::size_t>(*s.vowel)];
  }
}

std::string_view final_spelling(const Syllable& s) {
  switch (*s.final) {
    case Final::kI: return (s.vowel == Vowel::kABreve || s.vowel == Vowel::kACircumflex) ? "y" : "i";
    case Final::kU: return (s.vowel == Vowel::kA || s.vowel == Vowel::kE) ? "o" : "u";
    default: return kFinalSpelling[static_cast<std::size_t>(*s.final)];
  }
}

std::size_t length32(std::string_view utf8) { return unicode::decode_utf8(utf8).size(); }

// Index, in code points of the unmarked word, of the letter carrying the mark.
std::size_t modern_mark_position(const RenderedParts& parts) {
  const std::size_t before = length32(parts.initial) + length32(parts.glide);
  if (parts.vowel.empty()) return before - 1;  // the i of "gi"
  const std::u32string nucleus = unicode::decode_utf8(parts.vowel);
  if (nucleus == U"oo") return before + 1;
  std::size_t target = 0;
  for (std::size_t i = 0; i < nucleus.size(); ++i) {
    if (kMarkedVowelLetters.find(nucleus[i]) != std::u32string_view::npos) target = i;
  }
  return before + target;
}

std::string place_mark(std::string_view unmarked, std::size_t position, Tone tone) {
  if (tone == Tone::kFlat) return unicode::to_nfc(unmarked);
  std::u32string letters = unicode::decode_utf8(unmarked);
  letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(position + 1), tone_mark(tone));
  return unicode::to_nfc(unicode::encode_utf8(letters));
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> words;
  const std::u32string cps = unicode::decode_utf8(text);
  std::size_t byte = 0;
  std::size_t start = std::string_view::npos;
  for (char32_t cp : cps) {
    std::string encoded;
    unicode::append_utf8(encoded, cp);
    if (unicode::is_whitespace(cp)) {
      if (start != std::string_view::npos) words.push_back(text.substr(start, byte - start));
      start = std::string_view::npos;
    } else if (start == std::string_view::npos) {
      start = byte;
    }
    byte += encoded.size();
  }
  if (start != std::string_view::npos) words.push_back(text.substr(start));
  return words;
}

}  // namespace

NormalizedWord strip_tone(std::string_view word) {
  NormalizedWord out;
  std::u32string base;
  int marks = 0;
  for (char32_t cp : unicode::decode_utf8(unicode::to_nfd(word))) {
    bool is_mark = false;
    // Flat has no mark; scan the five marked tones.
    for (std::size_t t = 1; t < kToneCount; ++t) {
      if (tone_mark(kAllTones[t]) == cp) {
        out.comparisons += static_cast<int>(t);
        out.tone = kAllTones[t];
        is_mark = true;
        break;
      }
    }
    if (is_mark) {
      ++marks;
    } else {
      base.push_back(cp);
    }
  }
  if (marks > 1) throw MultipleToneMarks(std::string(word));
  out.base_letters = unicode::to_nfc(unicode::encode_utf8(base));
  return out;
}

ComponentMatch match_component(std::string_view word, PhonemeClass cls, const MatchContext& context,
                               const RuleTable& table) {
  ComponentMatch match;
  match.remainder = word;
  for (const GraphemeRule* rule : table.candidates(cls, word)) {
    ++match.comparisons;
    if (!word.starts_with(rule->written_form)) continue;
    const std::string_view rest = word.substr(rule->written_form.size());
    if (!context_holds(rule->context, rest, context)) continue;
    match.phoneme = rule->phoneme;
    match.form = rule->written_form;
    match.remainder = rest;
    break;
  }
  return match;
}

ParseResult try_parse_syllable(std::string_view word, const RuleTable& table) {
  ParseResult result;
  result.consumed = std::string(word);

  NormalizedWord normalized;
  try {
    normalized = strip_tone(word);
  } catch (const MultipleToneMarks&) {
    result.residue = std::string(word);
    result.failure = "multiple tone marks";
    return result;
  } catch (const TextError& e) {
    result.residue = std::string(word);
    result.failure = e.what();
    return result;
  }
  result.syllable.tone = normalized.tone;
  result.rule_comparisons = normalized.comparisons;
  std::string_view rest = normalized.base_letters;

  const ComponentMatch initial = match_component(rest, PhonemeClass::kInitial, {}, table);
  result.rule_comparisons += initial.comparisons;
  if (initial.phoneme) {
    result.syllable.initial = static_cast<Initial>(*initial.phoneme);
    result.forms.initial = std::string(initial.form);
    rest = initial.remainder;
  }

  if (result.syllable.initial == Initial::kGi && !starts_with_vowel_letter(rest)) {
    // "gì", "gìn": the i of "gi" doubles as the nucleus.
    result.syllable.vowel = Vowel::kI;
  } else {
    const MatchContext ctx{initial.form};
    const ComponentMatch glide = match_component(rest, PhonemeClass::kGlide, ctx, table);
    result.rule_comparisons += glide.comparisons;
    if (glide.phoneme) {
      result.syllable.glide = static_cast<Glide>(*glide.phoneme);
      result.forms.glide = std::string(glide.form);
      rest = glide.remainder;
    }

    const ComponentMatch vowel = match_component(rest, PhonemeClass::kVowel, ctx, table);
    result.rule_comparisons += vowel.comparisons;
    if (!vowel.phoneme) {
      result.residue = std::string(rest);
      result.failure = "no vowel";
      return result;
    }
    result.syllable.vowel = static_cast<Vowel>(*vowel.phoneme);
    result.forms.vowel = std::string(vowel.form);
    rest = vowel.remainder;
  }

  if (!rest.empty()) {
    // The final must consume the whole remainder.
    for (const GraphemeRule* rule : table.candidates(PhonemeClass::kFinal, rest)) {
      ++result.rule_comparisons;
      if (rule->written_form == rest) {
        result.syllable.final = static_cast<Final>(rule->phoneme);
        result.forms.final = rule->written_form;
        rest = {};
        break;
      }
    }
    if (!rest.empty()) {
      result.residue = std::string(rest);
      result.failure = "unparsed residue";
    }
  }
  return result;
}

ParseResult parse_syllable(std::string_view word, const RuleTable& table) {
  ParseResult result = try_parse_syllable(word, table);
  if (!result.ok()) throw ParseFailure(result.consumed, result.residue);
  return result;
}

int max_rule_comparisons(const RuleTable& table) {
  int bound = static_cast<int>(kToneCount - 1);
  for (PhonemeClass cls : kAllClasses) bound += static_cast<int>(table.max_candidates(cls));
  return bound;
}

std::vector<Syllable> tokenize(std::string_view transcript) {
  std::vector<Syllable> out;
  const auto words = split_whitespace(transcript);
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    ParseResult r = try_parse_syllable(words[i]);
    if (!r.ok()) throw ParseFailure(r.consumed, r.residue, i);
    out.push_back(r.syllable);
  }
  return out;
}

RenderedParts render_parts(const Syllable& syllable) {
  if (!syllable.vowel) throw RenderFailure("syllable has no nucleus");
  RenderedParts parts;
  if (syllable.initial) parts.initial = std::string(initial_spelling(syllable));
  if (syllable.glide) parts.glide = std::string(glide_spelling(syllable));
  parts.vowel = std::string(vowel_spelling(syllable));
  if (syllable.final) parts.final = std::string(final_spelling(syllable));

  const std::string unmarked = parts.initial + parts.glide + parts.vowel + parts.final;
  parts.text = place_mark(unmarked, modern_mark_position(parts), syllable.tone);
  return parts;
}

std::string render_syllable(const Syllable& syllable) { return render_parts(syllable).text; }

std::vector<std::string> accepted_spellings(const Syllable& syllable) {
  const RenderedParts canonical = render_parts(syllable);
  std::vector<std::string> out{canonical.text};
  // A variant counts only if it reads back as the same syllable.
  const auto add = [&](std::string s) {
    if (std::find(out.begin(), out.end(), s) != out.end()) return;
    const ParseResult back = try_parse_syllable(s);
    if (back.ok() && back.syllable == syllable) out.push_back(std::move(s));
  };

  std::vector<std::string> nuclei{canonical.vowel};
  if (syllable.vowel == Vowel::kI && (canonical.vowel == "i" || canonical.vowel == "y")) {
    nuclei.emplace_back(canonical.vowel == "i" ? "y" : "i");
  }
  for (const std::string& nucleus : nuclei) {
    RenderedParts parts = canonical;
    parts.vowel = nucleus;
    const std::string unmarked = parts.initial + parts.glide + parts.vowel + parts.final;
    add(place_mark(unmarked, modern_mark_position(parts), syllable.tone));
    // Traditional placement: "hòa", "khỏe", "thủy".
    const bool plain_nucleus = nucleus == "a" || nucleus == "e" || nucleus == "y";
    if (syllable.tone != Tone::kFlat && syllable.glide && syllable.initial != Initial::kK && !syllable.final &&
        plain_nucleus) {
      add(place_mark(unmarked, length32(parts.initial), syllable.tone));
    }
  }
  return out;
}

std::string detokenize(std::span<const Syllable> syllables) {
  std::string out;
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    if (i > 0) out.push_back(' ');
    try {
      out += render_syllable(syllables[i]);
    } catch (const RenderFailure& e) {
      throw RenderFailure("syllable " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::string to_phoneme_string(const Syllable& s) {
  const auto field = [](auto component) -> std::string {
    return component ? std::string(ipa(*component)) : std::string(kAbsent);
  };
  return field(s.initial) + "|" + field(s.glide) + "|" + field(s.vowel) + "|" + field(s.final) + "|" +
         std::string(tone_name(s.tone));
}

Syllable syllable_from_phoneme_string(std::string_view text) {
  std::array<std::string_view, 5> fields;
  std::size_t count = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    if (count == fields.size()) throw Error("too many fields in '" + std::string(text) + "'");
    fields[count++] = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (count != fields.size()) throw Error("expected 5 '|'-separated fields in '" + std::string(text) + "'");

  const auto component = [&](PhonemeClass cls, std::string_view field) -> std::optional<std::uint8_t> {
    if (field == kAbsent) return std::nullopt;
    const auto id = phoneme_from_ipa(cls, field);
    if (!id) throw Error("unknown " + std::string(class_name(cls)) + " '" + std::string(field) + "'");
    return id;
  };

  Syllable s;
  if (auto id = component(PhonemeClass::kInitial, fields[0])) s.initial = static_cast<Initial>(*id);
  if (auto id = component(PhonemeClass::kGlide, fields[1])) s.glide = static_cast<Glide>(*id);
  if (auto id = component(PhonemeClass::kVowel, fields[2])) s.vowel = static_cast<Vowel>(*id);
  if (auto id = component(PhonemeClass::kFinal, fields[3])) s.final = static_cast<Final>(*id);
  const auto tone = tone_from_name(fields[4]);
  if (!tone) throw Error("unknown tone '" + std::string(fields[4]) + "'");
  s.tone = *tone;
  return s;
}

std::string to_phoneme_line(std::span<const Syllable> syllables) {
  std::string out;
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += to_phoneme_string(syllables[i]);
  }
  return out;
}

std::vector<Syllable> syllables_from_phoneme_line(std::string_view line) {
  std::vector<Syllable> out;
  for (std::string_view token : split_whitespace(line)) out.push_back(syllable_from_phoneme_string(token));
  return out;
}

}  // namespace viphon
