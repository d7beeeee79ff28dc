#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace viphon {

// Lowercase, strip leading and trailing punctuation and symbols, NFC.
std::string clean_word(std::string_view raw);

// Splits on whitespace and hyphens, cleans every piece, drops empty ones.
std::vector<std::string> split_words(std::string_view transcript);

enum class SpellingPolicy : std::uint8_t {
  // Any spelling the orthography accepts ("hoà" and "hòa", "quý" and "quí").
  kAcceptVariants,
  // Only the canonical rendering of the parse.
  kCanonicalOnly,
};

// The word parses and renders back to itself under `policy`. Words containing
// digits never qualify. Expects a cleaned word.
bool is_vietnamese_word(std::string_view word, SpellingPolicy policy = SpellingPolicy::kAcceptVariants);

// Cleaned words of the transcript that are not Vietnamese, in order, with
// repeats kept.
std::vector<std::string> offending_words(std::string_view transcript,
                                         SpellingPolicy policy = SpellingPolicy::kAcceptVariants);

enum class Split : std::uint8_t { kTrain, kDev, kTest };
inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kDev, Split::kTest};
std::string_view split_name(Split split);
std::optional<Split> split_from_name(std::string_view name);

enum class Verdict : std::uint8_t { kVietnamese, kContainsNonVietnamese };

struct TranscriptRecord {
  std::size_t line_number = 0;  // 1-based line in the manifest
  std::string utterance_id;
  std::string transcript;
  Split split = Split::kTrain;
  std::string source_line;  // the manifest line, passed through untouched
  Verdict verdict = Verdict::kVietnamese;
  std::vector<std::string> offending_words;
};

// One JSON object with string fields "id", "transcript" and "split"; any other
// fields are kept in source_line. Throws MalformedManifestLine.
TranscriptRecord parse_manifest_line(std::string_view line, std::size_t line_number);
// Blank lines are skipped.
std::vector<TranscriptRecord> read_manifest(std::istream& in);

// The source object with "verdict" and "offending_words" added.
std::string annotated_json(const TranscriptRecord& record);

struct SplitStats {
  std::size_t records = 0;
  std::size_t discarded = 0;
  // 100 * discarded / records; 0 for an empty split.
  double percent() const;

  SplitStats& operator+=(const SplitStats& other);
  friend bool operator==(const SplitStats&, const SplitStats&) = default;
};

struct CorpusStats {
  std::array<SplitStats, 3> splits{};

  const SplitStats& at(Split s) const { return splits[static_cast<std::size_t>(s)]; }
  SplitStats& at(Split s) { return splits[static_cast<std::size_t>(s)]; }
  SplitStats overall() const;

  CorpusStats& operator+=(const CorpusStats& other);
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Published percentages of transcripts with non-Vietnamese words.
struct ReferencePercentages {
  std::string_view dataset;
  std::optional<double> train;
  std::optional<double> dev;
  std::optional<double> test;
  double overall;
};
inline constexpr std::array<ReferencePercentages, 2> kReferencePercentages = {{
    {"ViVOS", 0.87, std::nullopt, 0.79, 0.70},
    {"LSVSC", 9.19, 9.98, 8.89, 9.24},
}};
std::optional<ReferencePercentages> reference_percentages(std::string_view dataset);

// `reference` adds the published figures beside the computed ones.
std::string stats_json(const CorpusStats& stats, const std::optional<ReferencePercentages>& reference = {});

struct FilterResult {
  std::vector<TranscriptRecord> kept;
  std::vector<TranscriptRecord> discarded;
  CorpusStats stats;
};

// Sets verdict and offending_words on every record. Kept and discarded keep
// input order.
FilterResult filter_manifest(std::vector<TranscriptRecord> records,
                             SpellingPolicy policy = SpellingPolicy::kAcceptVariants);

}  // namespace viphon
