#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace viphon {

// Lexical tones. Flat is the absence of a mark; the other five map one-to-one
// onto combining diacritics.
enum class Tone : std::uint8_t {
  kFlat,
  kLowFalling,             // grave  U+0300
  kMidRaising,             // acute  U+0301
  kMidFalling,             // hook   U+0309
  kMidGlottalizedFalling,  // tilde  U+0303
  kMidGlottalizedRaising,  // dot    U+0323
};
inline constexpr std::size_t kToneCount = 6;
inline constexpr std::array<Tone, kToneCount> kAllTones = {
    Tone::kFlat,       Tone::kLowFalling,            Tone::kMidRaising,
    Tone::kMidFalling, Tone::kMidGlottalizedFalling, Tone::kMidGlottalizedRaising};

std::string_view tone_name(Tone tone);
std::optional<Tone> tone_from_name(std::string_view name);
// Combining mark for the tone; 0 for Flat.
char32_t tone_mark(Tone tone);
std::optional<Tone> tone_from_mark(char32_t mark);
std::string_view tone_contour(Tone tone);

enum class PhonemeClass : std::uint8_t { kInitial, kGlide, kVowel, kFinal };
inline constexpr std::array<PhonemeClass, 4> kAllClasses = {
    PhonemeClass::kInitial, PhonemeClass::kGlide, PhonemeClass::kVowel, PhonemeClass::kFinal};

std::string_view class_name(PhonemeClass cls);
std::optional<PhonemeClass> class_from_name(std::string_view name);

// Phonemes are named after their most common spelling.
enum class Initial : std::uint8_t {
  kB, kT, kTh, kK, kPh, kDd, kG, kGi, kD, kX, kS,
  kCh, kTr, kNg, kNh, kL, kR, kKh, kV, kM, kN, kH,
};
inline constexpr std::size_t kInitialCount = 22;

enum class Glide : std::uint8_t { kU };
inline constexpr std::size_t kGlideCount = 1;

enum class Vowel : std::uint8_t {
  // diphthongs
  kIe, kUo, kUoHorn,
  // monophthongs
  kA, kABreve, kACircumflex, kI, kECircumflex, kE, kU, kUHorn, kO, kOo, kOCircumflex, kOHorn,
};
inline constexpr std::size_t kVowelCount = 15;

enum class Final : std::uint8_t { kI, kM, kN, kNg, kNh, kP, kT, kC, kCh, kU };
inline constexpr std::size_t kFinalCount = 10;

std::size_t phoneme_count(PhonemeClass cls);

std::string_view ipa(Initial p);
std::string_view ipa(Glide p);
std::string_view ipa(Vowel p);
std::string_view ipa(Final p);
// IPA of the `index`-th phoneme of a class.
std::string_view ipa(PhonemeClass cls, std::uint8_t index);
std::optional<std::uint8_t> phoneme_from_ipa(PhonemeClass cls, std::string_view ipa);

bool is_diphthong(Vowel v);
// p t c ch
bool is_stop(Final f);

struct Syllable {
  std::optional<Initial> initial;
  std::optional<Glide> glide;
  std::optional<Vowel> vowel;
  std::optional<Final> final;
  Tone tone = Tone::kFlat;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

enum class RuleContext : std::uint8_t {
  kNone,
  kBeforeU,
  kGlideU,
  kGlideO,
  kWordFinal,
  kBeforeFinal,
  kBeforeYOrU,
};

std::string_view context_tag(RuleContext context);

struct GraphemeRule {
  PhonemeClass cls;
  std::string written_form;
  std::uint8_t phoneme;  // index into the class enum
  RuleContext context = RuleContext::kNone;
  // Longer written forms first; a conditioned rule outranks an unconditioned
  // one of the same length.
  int match_priority = 0;
  std::string note;

  std::string_view ipa() const { return viphon::ipa(cls, phoneme); }
  bool is_diphthong() const {
    return cls == PhonemeClass::kVowel && viphon::is_diphthong(static_cast<Vowel>(phoneme));
  }
};

// Immutable grapheme rule tables, one per phoneme class, each sorted by
// descending match priority.
class RuleTable {
 public:
  // The table shipped with the library (core/data/grapheme_rules.tsv).
  static const RuleTable& builtin();
  // Parses the tab-separated rule format. Throws Error with a line number on
  // malformed rows, unknown IPA, unknown context tags or duplicate rules.
  static RuleTable parse(std::string_view text);

  // Buckets hold pointers into the rule vectors: movable, not copyable.
  RuleTable(const RuleTable&) = delete;
  RuleTable& operator=(const RuleTable&) = delete;
  RuleTable(RuleTable&&) noexcept = default;
  RuleTable& operator=(RuleTable&&) noexcept = default;

  std::span<const GraphemeRule> rules(PhonemeClass cls) const;
  // Rules whose written form starts with the first code point of `word`, in
  // priority order. Restricting the scan to these is equivalent to scanning
  // the whole class table: no other rule can be a prefix of `word`.
  std::span<const GraphemeRule* const> candidates(PhonemeClass cls, std::string_view word) const;
  // Upper bound on prefix comparisons a single match against `cls` performs.
  std::size_t max_candidates(PhonemeClass cls) const;

  std::string_view source_text() const { return source_; }

 private:
  struct Bucket {
    std::string lead;  // first code point, UTF-8
    std::vector<const GraphemeRule*> rules;
  };

  RuleTable() = default;
  void index();

  std::string source_;
  std::array<std::vector<GraphemeRule>, 4> rules_;
  std::array<std::vector<Bucket>, 4> buckets_;
};

// Full rule list for a class, longest written form first.
std::vector<GraphemeRule> inventory(PhonemeClass cls);

struct Violation {
  std::string rule;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr std::string_view kMissingNucleus = "missing nucleus";
inline constexpr std::string_view kStopFinalTone = "stop-final tone";

// Structural check. With `strict`, stop finals (p t c ch) only combine with
// MidRaising or MidGlottalizedRaising.
ValidationResult validate(const Syllable& syllable, bool strict = false);

}  // namespace viphon
