#include "viphon/vocab.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "viphon/error.hpp"
#include "viphon/lexicon.hpp"
#include "viphon/tokenizer.hpp"

namespace viphon {
namespace {

constexpr std::array<std::string_view, 3> kSpaceNames = {"initial", "rhyme", "tone"};

std::size_t slot(TokenSpace space) { return static_cast<std::size_t>(space); }

std::vector<std::string> with_controls(std::vector<std::string> content) {
  std::sort(content.begin(), content.end());
  std::vector<std::string> out(kControlTokens.begin(), kControlTokens.end());
  out.insert(out.end(), content.begin(), content.end());
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

}  // namespace

std::string_view space_name(TokenSpace space) { return kSpaceNames[slot(space)]; }

std::optional<TokenSpace> space_from_name(std::string_view name) {
  for (TokenSpace s : kAllSpaces) {
    if (space_name(s) == name) return s;
  }
  return std::nullopt;
}

Rhyme rhyme_of(const Syllable& syllable) {
  if (!syllable.vowel) throw UnknownComponent("syllable has no nucleus");
  return Rhyme{syllable.glide, *syllable.vowel, syllable.final};
}

std::string rhyme_token(const Rhyme& r) {
  std::string out(r.glide ? ipa(*r.glide) : kAbsent);
  out += '|';
  out += ipa(r.vowel);
  out += '|';
  out += r.final ? ipa(*r.final) : kAbsent;
  return out;
}

Rhyme rhyme_from_token(std::string_view token) {
  const auto parts = split(token, '|');
  if (parts.size() != 3) throw UnknownComponent("malformed rhyme token '" + std::string(token) + "'");
  Rhyme r;
  if (parts[0] != kAbsent) {
    const auto g = phoneme_from_ipa(PhonemeClass::kGlide, parts[0]);
    if (!g) throw UnknownComponent("unknown glide in rhyme token '" + std::string(token) + "'");
    r.glide = static_cast<Glide>(*g);
  }
  const auto v = phoneme_from_ipa(PhonemeClass::kVowel, parts[1]);
  if (!v) throw UnknownComponent("unknown vowel in rhyme token '" + std::string(token) + "'");
  r.vowel = static_cast<Vowel>(*v);
  if (parts[2] != kAbsent) {
    const auto f = phoneme_from_ipa(PhonemeClass::kFinal, parts[2]);
    if (!f) throw UnknownComponent("unknown final in rhyme token '" + std::string(token) + "'");
    r.final = static_cast<Final>(*f);
  }
  return r;
}

std::string initial_token(std::optional<Initial> initial) {
  return std::string(initial ? ipa(*initial) : kAbsent);
}

const std::vector<Rhyme>& closed_rhyme_table() {
  static const std::vector<Rhyme> table = [] {
    std::set<Rhyme> seen;
    for (const std::string& word : bundled_lexicon()) seen.insert(rhyme_of(parse_syllable(word).syllable));
    return std::vector<Rhyme>(seen.begin(), seen.end());
  }();
  return table;
}

Vocabulary::Vocabulary(std::span<const Rhyme> rhymes) {
  std::set<Rhyme> unique(rhymes.begin(), rhymes.end());
  rhymes_.assign(unique.begin(), unique.end());

  std::vector<std::string> initials{std::string(kAbsent)};
  for (std::size_t i = 0; i < kInitialCount; ++i) initials.push_back(initial_token(static_cast<Initial>(i)));
  std::vector<std::string> rhyme_tokens;
  for (const Rhyme& r : rhymes_) rhyme_tokens.push_back(rhyme_token(r));
  std::vector<std::string> tones;
  for (Tone t : kAllTones) tones.emplace_back(tone_name(t));

  tokens_[slot(TokenSpace::kInitial)] = with_controls(std::move(initials));
  tokens_[slot(TokenSpace::kRhyme)] = with_controls(std::move(rhyme_tokens));
  tokens_[slot(TokenSpace::kTone)] = with_controls(std::move(tones));
  for (std::size_t s = 0; s < tokens_.size(); ++s) {
    for (std::size_t i = 0; i < tokens_[s].size(); ++i) ids_[s].emplace(tokens_[s][i], static_cast<int>(i));
  }
}

Vocabulary Vocabulary::from_table(std::string_view text) {
  std::array<std::vector<std::string>, 3> tokens;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto where = [&](const std::string& what) {
      return Error("vocabulary table line " + std::to_string(line_no) + ": " + what);
    };
    const auto fields = split(line, '\t');
    if (fields.size() != 3) throw where("expected 3 tab-separated fields");
    const auto space = space_from_name(fields[0]);
    if (!space) throw where("unknown space '" + std::string(fields[0]) + "'");
    auto& list = tokens[slot(*space)];
    if (fields[1] != std::to_string(list.size())) throw where("ids must be contiguous from 0");
    list.emplace_back(fields[2]);
  }

  std::vector<Rhyme> rhymes;
  const auto& rhyme_list = tokens[slot(TokenSpace::kRhyme)];
  for (std::size_t i = kControlTokens.size(); i < rhyme_list.size(); ++i) {
    rhymes.push_back(rhyme_from_token(rhyme_list[i]));
  }
  Vocabulary vocab(rhymes);
  if (vocab.tokens_ != tokens) throw Error("vocabulary table is not in canonical order or has unknown tokens");
  return vocab;
}

std::string Vocabulary::to_table() const {
  std::string out;
  for (TokenSpace s : kAllSpaces) {
    const auto& list = tokens_[slot(s)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      out += space_name(s);
      out += '\t';
      out += std::to_string(i);
      out += '\t';
      out += list[i];
      out += '\n';
    }
  }
  return out;
}

std::span<const std::string> Vocabulary::tokens(TokenSpace space) const { return tokens_[slot(space)]; }

std::optional<int> Vocabulary::id(TokenSpace space, std::string_view token) const {
  const auto& map = ids_[slot(space)];
  const auto it = map.find(token);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::token(TokenSpace space, int id) const {
  const auto& list = tokens_[slot(space)];
  if (id < 0 || static_cast<std::size_t>(id) >= list.size()) {
    throw IdOutOfRange(std::string(space_name(space)) + " id " + std::to_string(id) + " outside [0, " +
                       std::to_string(list.size()) + ")");
  }
  return list[static_cast<std::size_t>(id)];
}

TokenIds Vocabulary::encode(const Syllable& syllable) const {
  const auto lookup = [&](TokenSpace space, const std::string& token) {
    const auto found = id(space, token);
    if (!found) throw UnknownComponent(std::string(space_name(space)) + " token '" + token + "' not in vocabulary");
    return *found;
  };
  TokenIds ids;
  ids.initial = lookup(TokenSpace::kInitial, initial_token(syllable.initial));
  ids.rhyme = lookup(TokenSpace::kRhyme, rhyme_token(rhyme_of(syllable)));
  ids.tone = lookup(TokenSpace::kTone, std::string(tone_name(syllable.tone)));
  return ids;
}

Syllable Vocabulary::decode(const TokenIds& ids) const {
  const auto content = [&](TokenSpace space, int id) -> const std::string& {
    const std::string& tok = token(space, id);
    if (id < kFirstContentId) {
      throw IdOutOfRange(std::string(space_name(space)) + " id " + std::to_string(id) + " is the control token " +
                         tok);
    }
    return tok;
  };

  Syllable s;
  const std::string& init = content(TokenSpace::kInitial, ids.initial);
  if (init != kAbsent) s.initial = static_cast<Initial>(*phoneme_from_ipa(PhonemeClass::kInitial, init));
  const Rhyme r = rhyme_from_token(content(TokenSpace::kRhyme, ids.rhyme));
  s.glide = r.glide;
  s.vowel = r.vowel;
  s.final = r.final;
  s.tone = *tone_from_name(content(TokenSpace::kTone, ids.tone));
  return s;
}

std::string VocabReport::to_json() const {
  nlohmann::ordered_json j;
  j["lexicon_words"] = lexicon_words;
  j["computed"] = {
      {"initials", initials_without_empty},
      {"initial_tokens_with_empty", initial_tokens},
      {"rhymes_observed", rhymes_observed},
      {"rhymes", rhyme_tokens},
      {"tones", tone_tokens},
      {"content_total", content_total()},
  };
  j["published"] = {
      {"initials", kPublishedInitials},
      {"rhymes", kPublishedRhymes},
      {"tones", kPublishedTones},
      {"stated_total", kPublishedTotal},
      {"component_sum", kPublishedComponentSum},
  };
  nlohmann::ordered_json notes = nlohmann::ordered_json::array();
  if (kPublishedComponentSum != kPublishedTotal) {
    notes.push_back("published component counts sum to " + std::to_string(kPublishedComponentSum) +
                    ", not the stated total " + std::to_string(kPublishedTotal));
  }
  if (rhyme_tokens != kPublishedRhymes) {
    notes.push_back("computed rhyme count " + std::to_string(rhyme_tokens) + " differs from published " +
                    std::to_string(kPublishedRhymes));
  }
  if (initial_tokens != initials_without_empty) {
    notes.push_back("initial space carries an extra token for the empty initial");
  }
  j["discrepancies"] = notes;
  return j.dump(2);
}

VocabBuild build_vocab(std::span<const std::string> lexicon) {
  std::set<Rhyme> observed;
  for (std::size_t i = 0; i < lexicon.size(); ++i) {
    ParseResult r = try_parse_syllable(lexicon[i]);
    if (!r.ok()) throw ParseFailure(r.consumed, r.residue, i);
    observed.insert(rhyme_of(r.syllable));
  }
  std::vector<Rhyme> rhymes(observed.begin(), observed.end());
  const auto& closed = closed_rhyme_table();
  rhymes.insert(rhymes.end(), closed.begin(), closed.end());

  VocabBuild out{Vocabulary(rhymes), {}};
  VocabReport& rep = out.report;
  rep.lexicon_words = lexicon.size();
  rep.initial_tokens = out.vocab.content_size(TokenSpace::kInitial);
  rep.initials_without_empty = rep.initial_tokens - (out.vocab.id(TokenSpace::kInitial, kAbsent) ? 1 : 0);
  rep.rhymes_observed = observed.size();
  rep.rhyme_tokens = out.vocab.content_size(TokenSpace::kRhyme);
  rep.tone_tokens = out.vocab.content_size(TokenSpace::kTone);
  return out;
}

}  // namespace viphon
