#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "viphon/phonology.hpp"

namespace viphon {

enum class TokenSpace : std::uint8_t { kInitial, kRhyme, kTone };
inline constexpr std::array<TokenSpace, 3> kAllSpaces = {TokenSpace::kInitial, TokenSpace::kRhyme,
                                                         TokenSpace::kTone};
std::string_view space_name(TokenSpace space);
std::optional<TokenSpace> space_from_name(std::string_view name);

// Every space starts with the same control tokens.
inline constexpr int kPadId = 0;
inline constexpr int kBosId = 1;
inline constexpr int kEosId = 2;
inline constexpr int kFirstContentId = 3;
inline constexpr std::array<std::string_view, 3> kControlTokens = {"<pad>", "<bos>", "<eos>"};

struct Rhyme {
  std::optional<Glide> glide;
  Vowel vowel = Vowel::kA;
  std::optional<Final> final;

  friend auto operator<=>(const Rhyme&, const Rhyme&) = default;
};

Rhyme rhyme_of(const Syllable& syllable);

// "glide|vowel|final" in IPA with "∅" for an absent glide or final.
std::string rhyme_token(const Rhyme& rhyme);
// Throws UnknownComponent.
Rhyme rhyme_from_token(std::string_view token);
// IPA of the initial, "∅" when absent.
std::string initial_token(std::optional<Initial> initial);

struct TokenIds {
  int initial = 0;
  int rhyme = 0;
  int tone = 0;

  friend auto operator<=>(const TokenIds&, const TokenIds&) = default;
};

// Rhymes of the bundled lexicon.
const std::vector<Rhyme>& closed_rhyme_table();

// Immutable after construction. Content ids are assigned in byte-lexicographic
// order of the token strings, after the control tokens.
class Vocabulary {
 public:
  // The initial space holds all 22 initials plus "∅"; the tone space all six
  // tones. Duplicate rhymes are ignored.
  explicit Vocabulary(std::span<const Rhyme> rhymes);

  // Inverse of to_table. Throws Error on malformed rows or a table that does
  // not match the canonical initial and tone spaces.
  static Vocabulary from_table(std::string_view text);
  // "space<TAB>id<TAB>token" per line, control tokens included.
  std::string to_table() const;

  // Includes the control tokens.
  std::span<const std::string> tokens(TokenSpace space) const;
  std::size_t size(TokenSpace space) const { return tokens(space).size(); }
  std::size_t content_size(TokenSpace space) const { return size(space) - kControlTokens.size(); }

  std::optional<int> id(TokenSpace space, std::string_view token) const;
  // Throws IdOutOfRange.
  const std::string& token(TokenSpace space, int id) const;

  std::span<const Rhyme> rhymes() const { return rhymes_; }

  // Throws UnknownComponent when a component has no token.
  TokenIds encode(const Syllable& syllable) const;
  // Throws IdOutOfRange for ids outside the space or naming a control token.
  Syllable decode(const TokenIds& ids) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<Rhyme> rhymes_;
  std::array<std::vector<std::string>, 3> tokens_;
  std::array<std::map<std::string, int, std::less<>>, 3> ids_;
};

// Token counts beside the figures published for the original system.
struct VocabReport {
  static constexpr std::size_t kPublishedInitials = 22;
  static constexpr std::size_t kPublishedRhymes = 145;
  static constexpr std::size_t kPublishedTones = 6;
  static constexpr std::size_t kPublishedTotal = 163;
  static constexpr std::size_t kPublishedComponentSum =
      kPublishedInitials + kPublishedRhymes + kPublishedTones;

  std::size_t lexicon_words = 0;
  std::size_t initials_without_empty = 0;
  std::size_t initial_tokens = 0;  // with "∅"
  std::size_t rhymes_observed = 0;  // distinct rhymes in the input lexicon
  std::size_t rhyme_tokens = 0;     // observed ∪ closed table
  std::size_t tone_tokens = 0;

  // initials without ∅ + rhymes + tones
  std::size_t content_total() const { return initials_without_empty + rhyme_tokens + tone_tokens; }
  std::string to_json() const;
};

struct VocabBuild {
  Vocabulary vocab;
  VocabReport report;
};

// Throws ParseFailure on the first unparseable word.
VocabBuild build_vocab(std::span<const std::string> lexicon);

}  // namespace viphon
