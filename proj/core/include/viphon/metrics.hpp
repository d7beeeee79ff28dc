#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "viphon/phonology.hpp"

namespace viphon {

enum class EditOp : std::uint8_t { kMatch, kSubstitute, kDelete, kInsert };

struct AlignmentStep {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  EditOp op;
  std::size_t ref_index;  // kNone for insertions
  std::size_t hyp_index;  // kNone for deletions
};

struct EditCounts {
  std::size_t distance = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
};

// Unit-cost Levenshtein alignment. The backtrace walks from the end and, among
// optimal predecessors, prefers match, then substitution, then deletion, then
// insertion. Steps are returned in forward order.
template <typename T, typename Eq = std::equal_to<>>
std::vector<AlignmentStep> align(std::span<const T> ref, std::span<const T> hyp, Eq eq = {}) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t w = m + 1;
  std::vector<std::size_t> d((n + 1) * w);
  for (std::size_t i = 0; i <= n; ++i) d[i * w] = i;
  for (std::size_t j = 0; j <= m; ++j) d[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = d[(i - 1) * w + j - 1] + (eq(ref[i - 1], hyp[j - 1]) ? 0 : 1);
      d[i * w + j] = std::min({diag, d[(i - 1) * w + j] + 1, d[i * w + j - 1] + 1});
    }
  }

  std::vector<AlignmentStep> steps;
  steps.reserve(n + m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = d[i * w + j];
    if (i > 0 && j > 0) {
      const std::size_t diag = d[(i - 1) * w + j - 1];
      const bool same = eq(ref[i - 1], hyp[j - 1]);
      if (same && here == diag) {
        steps.push_back({EditOp::kMatch, i - 1, j - 1});
        --i, --j;
        continue;
      }
      if (!same && here == diag + 1) {
        steps.push_back({EditOp::kSubstitute, i - 1, j - 1});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && here == d[(i - 1) * w + j] + 1) {
      steps.push_back({EditOp::kDelete, i - 1, AlignmentStep::kNone});
      --i;
      continue;
    }
    steps.push_back({EditOp::kInsert, AlignmentStep::kNone, j - 1});
    --j;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

EditCounts count_edits(std::span<const AlignmentStep> steps);

template <typename T, typename Eq = std::equal_to<>>
EditCounts edit_distance(std::span<const T> ref, std::span<const T> hyp, Eq eq = {}) {
  const auto steps = align(ref, hyp, eq);
  return count_edits(steps);
}

struct ErrorRateReport {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_length = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  // (S + D + I) / reference_length; 0 when both sides are empty and empty
  // ("undefined") when only the reference is. Not clamped to 1.
  std::optional<double> rate() const;

  ErrorRateReport& operator+=(const ErrorRateReport& other);
  friend ErrorRateReport operator+(ErrorRateReport a, const ErrorRateReport& b) { return a += b; }
  friend bool operator==(const ErrorRateReport&, const ErrorRateReport&) = default;
};

ErrorRateReport to_report(const EditCounts& counts, std::size_t reference_length);

std::vector<std::string> split_whitespace_words(std::string_view text);

ErrorRateReport wer(std::string_view ref, std::string_view hyp);

struct CerOptions {
  // Count one space between consecutive words as a character.
  bool include_spaces = false;
};
// Over code points of the NFC text. Whitespace runs separate words and are
// otherwise ignored unless include_spaces is set.
ErrorRateReport cer(std::string_view ref, std::string_view hyp, const CerOptions& options = {});

enum class PerMode : std::uint8_t {
  // Align syllables as (initial, rhyme, tone) tuples once, then score each
  // component against that alignment.
  kTuple,
  // Align each component stream independently.
  kFlat,
};
std::string_view per_mode_name(PerMode mode);
std::optional<PerMode> per_mode_from_name(std::string_view name);

struct PerReport {
  ErrorRateReport initial;
  ErrorRateReport rhyme;
  ErrorRateReport tone;
  // Sum of the three streams, so its rate is the length-weighted mean of the
  // component rates.
  ErrorRateReport aggregate;
};

PerReport per_components(std::span<const Syllable> ref, std::span<const Syllable> hyp,
                         PerMode mode = PerMode::kTuple);
// Tokenizes both sides; propagates ParseFailure.
PerReport per_components(std::string_view ref, std::string_view hyp, PerMode mode = PerMode::kTuple);
ErrorRateReport per(std::string_view ref, std::string_view hyp, PerMode mode = PerMode::kTuple);

}  // namespace viphon
