#include "viphon/metrics.hpp"

#include "viphon/tokenizer.hpp"
#include "viphon/unicode.hpp"
#include "viphon/vocab.hpp"

namespace viphon {
namespace {

// Adds one stream's view of a syllable-level step to `report`.
template <typename Get>
void score_step(ErrorRateReport& report, const AlignmentStep& step, std::span<const Syllable> ref,
                std::span<const Syllable> hyp, Get get) {
  switch (step.op) {
    case EditOp::kMatch:
      break;
    case EditOp::kSubstitute:
      if (get(ref[step.ref_index]) != get(hyp[step.hyp_index])) ++report.substitutions;
      break;
    case EditOp::kDelete:
      ++report.deletions;
      break;
    case EditOp::kInsert:
      ++report.insertions;
      break;
  }
}

template <typename Get>
ErrorRateReport stream_report(std::span<const Syllable> ref, std::span<const Syllable> hyp, Get get) {
  using Value = decltype(get(ref.front()));
  std::vector<Value> r;
  std::vector<Value> h;
  for (const Syllable& s : ref) r.push_back(get(s));
  for (const Syllable& s : hyp) h.push_back(get(s));
  return to_report(edit_distance<Value>(r, h), r.size());
}

const auto get_initial = [](const Syllable& s) { return s.initial; };
const auto get_rhyme = [](const Syllable& s) { return rhyme_of(s); };
const auto get_tone = [](const Syllable& s) { return s.tone; };

}  // namespace

EditCounts count_edits(std::span<const AlignmentStep> steps) {
  EditCounts c;
  for (const AlignmentStep& s : steps) {
    switch (s.op) {
      case EditOp::kMatch: break;
      case EditOp::kSubstitute: ++c.substitutions; break;
      case EditOp::kDelete: ++c.deletions; break;
      case EditOp::kInsert: ++c.insertions; break;
    }
  }
  c.distance = c.substitutions + c.deletions + c.insertions;
  return c;
}

std::optional<double> ErrorRateReport::rate() const {
  if (reference_length == 0) {
    if (errors() == 0) return 0.0;
    return std::nullopt;
  }
  return static_cast<double>(errors()) / static_cast<double>(reference_length);
}

ErrorRateReport& ErrorRateReport::operator+=(const ErrorRateReport& other) {
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  reference_length += other.reference_length;
  return *this;
}

ErrorRateReport to_report(const EditCounts& counts, std::size_t reference_length) {
  return {counts.substitutions, counts.deletions, counts.insertions, reference_length};
}

std::vector<std::string> split_whitespace_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char32_t cp : unicode::decode_utf8(text)) {
    if (unicode::is_whitespace(cp)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      unicode::append_utf8(current, cp);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

ErrorRateReport wer(std::string_view ref, std::string_view hyp) {
  std::vector<std::string> r;
  std::vector<std::string> h;
  for (auto& w : split_whitespace_words(ref)) r.push_back(unicode::to_nfc(w));
  for (auto& w : split_whitespace_words(hyp)) h.push_back(unicode::to_nfc(w));
  return to_report(edit_distance<std::string>(r, h), r.size());
}

ErrorRateReport cer(std::string_view ref, std::string_view hyp, const CerOptions& options) {
  const auto chars = [&](std::string_view text) {
    std::u32string out;
    const auto words = split_whitespace_words(text);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i > 0 && options.include_spaces) out.push_back(U' ');
      out += unicode::decode_utf8(unicode::to_nfc(words[i]));
    }
    return out;
  };
  const std::u32string r = chars(ref);
  const std::u32string h = chars(hyp);
  return to_report(edit_distance<char32_t>(r, h), r.size());
}

std::string_view per_mode_name(PerMode mode) { return mode == PerMode::kTuple ? "tuple" : "flat"; }

std::optional<PerMode> per_mode_from_name(std::string_view name) {
  if (name == "tuple") return PerMode::kTuple;
  if (name == "flat") return PerMode::kFlat;
  return std::nullopt;
}

PerReport per_components(std::span<const Syllable> ref, std::span<const Syllable> hyp, PerMode mode) {
  PerReport out;
  if (mode == PerMode::kTuple) {
    const auto steps = align(ref, hyp);
    for (const AlignmentStep& step : steps) {
      score_step(out.initial, step, ref, hyp, get_initial);
      score_step(out.rhyme, step, ref, hyp, get_rhyme);
      score_step(out.tone, step, ref, hyp, get_tone);
    }
    out.initial.reference_length = ref.size();
    out.rhyme.reference_length = ref.size();
    out.tone.reference_length = ref.size();
  } else {
    out.initial = stream_report(ref, hyp, get_initial);
    out.rhyme = stream_report(ref, hyp, get_rhyme);
    out.tone = stream_report(ref, hyp, get_tone);
  }
  out.aggregate = out.initial + out.rhyme + out.tone;
  return out;
}

PerReport per_components(std::string_view ref, std::string_view hyp, PerMode mode) {
  const auto r = tokenize(ref);
  const auto h = tokenize(hyp);
  return per_components(std::span<const Syllable>(r), std::span<const Syllable>(h), mode);
}

ErrorRateReport per(std::string_view ref, std::string_view hyp, PerMode mode) {
  return per_components(ref, hyp, mode).aggregate;
}

}  // namespace viphon
