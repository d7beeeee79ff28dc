#include "viphon/phonology.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "viphon/error.hpp"
#include "viphon/unicode.hpp"

namespace viphon {
namespace detail {
extern const std::string_view kEmbeddedRules;
}  // namespace detail

namespace {

struct ToneInfo {
  std::string_view name;
  char32_t mark;
  std::string_view contour;
};

// Contour labels follow the orthography reference, which gives none for the
// flat tone (33 is the conventional value).
constexpr std::array<ToneInfo, kToneCount> kToneInfo = {{
    {"Flat", 0, "33"},
    {"LowFalling", U'̀', "22-11"},
    {"MidRaising", U'́', "33-55"},
    {"MidFalling", U'̉', "33-11"},
    {"MidGlottalizedFalling", U'̃', "33-ʔ-55"},
    {"MidGlottalizedRaising", U'̣', "33-ʔ-11"},
}};

constexpr std::array<std::string_view, kInitialCount> kInitialIpa = {
    "b", "t", "tʰ", "k", "f", "d", "ɤ", "z", "j", "s", "ʂ",
    "c͡ç", "t͡ʂ", "ŋ", "ɲ", "l", "r", "x", "v", "m", "n", "h"};
constexpr std::array<std::string_view, kGlideCount> kGlideIpa = {"u̯"};
constexpr std::array<std::string_view, kVowelCount> kVowelIpa = {
    "ie", "uo", "ɯə", "a", "ă", "ə̆", "i", "e", "ɛ", "u", "ɯ", "ɔ", "ɔː", "o", "ə"};
constexpr std::array<std::string_view, kFinalCount> kFinalIpa = {
    "i̯", "m", "n", "ŋ", "ɲ", "p", "t", "k", "c", "u̯"};

std::span<const std::string_view> ipa_table(PhonemeClass cls) {
  switch (cls) {
    case PhonemeClass::kInitial: return kInitialIpa;
    case PhonemeClass::kGlide: return kGlideIpa;
    case PhonemeClass::kVowel: return kVowelIpa;
    case PhonemeClass::kFinal: return kFinalIpa;
  }
  return {};
}

constexpr std::array<std::string_view, 4> kClassNames = {"initial", "glide", "vowel", "final"};

constexpr std::array<std::pair<RuleContext, std::string_view>, 7> kContextTags = {{
    {RuleContext::kNone, "-"},
    {RuleContext::kBeforeU, "before_u"},
    {RuleContext::kGlideU, "glide_u"},
    {RuleContext::kGlideO, "glide_o"},
    {RuleContext::kWordFinal, "word_final"},
    {RuleContext::kBeforeFinal, "before_final"},
    {RuleContext::kBeforeYOrU, "before_y_or_u"},
}};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string first_code_point(std::string_view s) {
  if (s.empty()) return {};
  const auto lead = static_cast<unsigned char>(s[0]);
  std::size_t len = 1;
  if (lead >= 0xF0) len = 4;
  else if (lead >= 0xE0) len = 3;
  else if (lead >= 0xC0) len = 2;
  return std::string(s.substr(0, std::min(len, s.size())));
}

std::size_t code_point_count(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

}  // namespace

std::string_view tone_name(Tone tone) { return kToneInfo[static_cast<std::size_t>(tone)].name; }

std::optional<Tone> tone_from_name(std::string_view name) {
  for (Tone t : kAllTones) {
    if (tone_name(t) == name) return t;
  }
  return std::nullopt;
}

char32_t tone_mark(Tone tone) { return kToneInfo[static_cast<std::size_t>(tone)].mark; }

std::optional<Tone> tone_from_mark(char32_t mark) {
  if (mark == 0) return std::nullopt;
  for (Tone t : kAllTones) {
    if (tone_mark(t) == mark) return t;
  }
  return std::nullopt;
}

std::string_view tone_contour(Tone tone) { return kToneInfo[static_cast<std::size_t>(tone)].contour; }

std::string_view class_name(PhonemeClass cls) { return kClassNames[static_cast<std::size_t>(cls)]; }

std::optional<PhonemeClass> class_from_name(std::string_view name) {
  for (PhonemeClass c : kAllClasses) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

std::size_t phoneme_count(PhonemeClass cls) { return ipa_table(cls).size(); }

std::string_view ipa(Initial p) { return kInitialIpa[static_cast<std::size_t>(p)]; }
std::string_view ipa(Glide p) { return kGlideIpa[static_cast<std::size_t>(p)]; }
std::string_view ipa(Vowel p) { return kVowelIpa[static_cast<std::size_t>(p)]; }
std::string_view ipa(Final p) { return kFinalIpa[static_cast<std::size_t>(p)]; }

std::string_view ipa(PhonemeClass cls, std::uint8_t index) {
  const auto table = ipa_table(cls);
  if (index >= table.size()) {
    throw IdOutOfRange(std::string(class_name(cls)) + " phoneme index " + std::to_string(index));
  }
  return table[index];
}

std::optional<std::uint8_t> phoneme_from_ipa(PhonemeClass cls, std::string_view symbol) {
  const auto table = ipa_table(cls);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] == symbol) return static_cast<std::uint8_t>(i);
  }
  return std::nullopt;
}

bool is_diphthong(Vowel v) { return v == Vowel::kIe || v == Vowel::kUo || v == Vowel::kUoHorn; }

bool is_stop(Final f) { return f == Final::kP || f == Final::kT || f == Final::kC || f == Final::kCh; }

std::string_view context_tag(RuleContext context) {
  for (const auto& [ctx, tag] : kContextTags) {
    if (ctx == context) return tag;
  }
  return "-";
}

RuleTable RuleTable::parse(std::string_view text) {
  RuleTable table;
  table.source_ = std::string(text);
  std::set<std::tuple<PhonemeClass, std::string, RuleContext>> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const auto where = [&](const std::string& what) {
      return Error("rule table line " + std::to_string(line_no) + ": " + what);
    };
    const auto fields = split_tabs(line);
    if (fields.size() < 4 || fields.size() > 5) throw where("expected 4 or 5 tab-separated fields");

    const auto cls = class_from_name(fields[0]);
    if (!cls) throw where("unknown class '" + std::string(fields[0]) + "'");
    const std::string form(fields[1]);
    if (form.empty()) throw where("empty written form");
    if (unicode::to_nfc(form) != form) throw where("written form is not NFC");
    for (char32_t cp : unicode::decode_utf8(unicode::to_nfd(form))) {
      if (tone_from_mark(cp)) throw where("written form carries a tone mark");
    }
    const auto phoneme = phoneme_from_ipa(*cls, fields[2]);
    if (!phoneme) throw where("unknown " + std::string(fields[0]) + " IPA '" + std::string(fields[2]) + "'");

    std::optional<RuleContext> context;
    for (const auto& [ctx, tag] : kContextTags) {
      if (tag == fields[3]) context = ctx;
    }
    if (!context) throw where("unknown context tag '" + std::string(fields[3]) + "'");

    if (!seen.emplace(*cls, form, *context).second) throw where("duplicate rule for '" + form + "'");

    GraphemeRule rule;
    rule.cls = *cls;
    rule.written_form = form;
    rule.phoneme = *phoneme;
    rule.context = *context;
    rule.match_priority =
        static_cast<int>(code_point_count(form)) * 2 + (*context == RuleContext::kNone ? 0 : 1);
    if (fields.size() == 5) rule.note = std::string(fields[4]);
    table.rules_[static_cast<std::size_t>(*cls)].push_back(std::move(rule));
  }

  for (auto& rules : table.rules_) {
    std::stable_sort(rules.begin(), rules.end(), [](const GraphemeRule& a, const GraphemeRule& b) {
      return a.match_priority > b.match_priority;
    });
  }
  table.index();
  return table;
}

void RuleTable::index() {
  for (std::size_t c = 0; c < rules_.size(); ++c) {
    auto& buckets = buckets_[c];
    buckets.clear();
    for (const GraphemeRule& rule : rules_[c]) {
      const std::string lead = first_code_point(rule.written_form);
      auto it = std::find_if(buckets.begin(), buckets.end(), [&](const Bucket& b) { return b.lead == lead; });
      if (it == buckets.end()) {
        buckets.push_back({lead, {}});
        it = std::prev(buckets.end());
      }
      it->rules.push_back(&rule);
    }
  }
}

const RuleTable& RuleTable::builtin() {
  static const RuleTable table = parse(detail::kEmbeddedRules);
  return table;
}

std::span<const GraphemeRule> RuleTable::rules(PhonemeClass cls) const {
  return rules_[static_cast<std::size_t>(cls)];
}

std::span<const GraphemeRule* const> RuleTable::candidates(PhonemeClass cls, std::string_view word) const {
  if (word.empty()) return {};
  const std::string lead = first_code_point(word);
  for (const Bucket& b : buckets_[static_cast<std::size_t>(cls)]) {
    if (b.lead == lead) return b.rules;
  }
  return {};
}

std::size_t RuleTable::max_candidates(PhonemeClass cls) const {
  std::size_t best = 0;
  for (const Bucket& b : buckets_[static_cast<std::size_t>(cls)]) best = std::max(best, b.rules.size());
  return best;
}

std::vector<GraphemeRule> inventory(PhonemeClass cls) {
  const auto rules = RuleTable::builtin().rules(cls);
  return {rules.begin(), rules.end()};
}

ValidationResult validate(const Syllable& syllable, bool strict) {
  ValidationResult result;
  if (!syllable.vowel) {
    result.violations.push_back({std::string(kMissingNucleus), "the rhyme has no vowel"});
  }
  if (strict && syllable.final && is_stop(*syllable.final) && syllable.tone != Tone::kMidRaising &&
      syllable.tone != Tone::kMidGlottalizedRaising) {
    result.violations.push_back(
        {std::string(kStopFinalTone), "stop final /" + std::string(ipa(*syllable.final)) +
                                          "/ with tone " + std::string(tone_name(syllable.tone))});
  }
  return result;
}

}  // namespace viphon
