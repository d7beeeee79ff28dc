#include "viphon/corpus.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

#include "viphon/error.hpp"
#include "viphon/tokenizer.hpp"
#include "viphon/unicode.hpp"

namespace viphon {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 3> kSplitNames = {"train", "dev", "test"};

bool strippable(char32_t cp) { return unicode::is_punctuation(cp) || unicode::is_whitespace(cp); }

std::string_view verdict_name(Verdict v) {
  return v == Verdict::kVietnamese ? "vietnamese" : "contains_non_vietnamese";
}

Json split_json(const SplitStats& s) {
  return Json{{"records", s.records}, {"discarded", s.discarded}, {"percent", s.percent()}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string clean_word(std::string_view raw) {
  const std::u32string cps = unicode::decode_utf8(unicode::to_nfc(unicode::to_lower(raw)));
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && strippable(cps[begin])) ++begin;
  while (end > begin && strippable(cps[end - 1])) --end;
  return unicode::encode_utf8(std::u32string_view(cps).substr(begin, end - begin));
}

std::vector<std::string> split_words(std::string_view transcript) {
  std::vector<std::string> words;
  std::string piece;
  const auto flush = [&] {
    std::string cleaned = clean_word(piece);
    if (!cleaned.empty()) words.push_back(std::move(cleaned));
    piece.clear();
  };
  for (char32_t cp : unicode::decode_utf8(transcript)) {
    // ASCII hyphen-minus and the Unicode dash punctuation family.
    const bool hyphen = cp == U'-' || (cp >= U'‐' && cp <= U'―');
    if (hyphen || unicode::is_whitespace(cp)) {
      flush();
    } else {
      unicode::append_utf8(piece, cp);
    }
  }
  flush();
  return words;
}

bool is_vietnamese_word(std::string_view word, SpellingPolicy policy) {
  if (word.empty()) return false;
  const std::u32string cps = unicode::decode_utf8(word);
  if (std::any_of(cps.begin(), cps.end(), unicode::is_digit)) return false;

  const ParseResult parsed = try_parse_syllable(word);
  if (!parsed.ok()) return false;
  std::vector<std::string> spellings;
  try {
    spellings = accepted_spellings(parsed.syllable);
  } catch (const RenderFailure&) {
    return false;
  }
  const std::string nfc = unicode::to_nfc(word);
  if (policy == SpellingPolicy::kCanonicalOnly) return spellings.front() == nfc;
  return std::find(spellings.begin(), spellings.end(), nfc) != spellings.end();
}

std::vector<std::string> offending_words(std::string_view transcript, SpellingPolicy policy) {
  std::vector<std::string> out;
  for (std::string& w : split_words(transcript)) {
    if (!is_vietnamese_word(w, policy)) out.push_back(std::move(w));
  }
  return out;
}

std::string_view split_name(Split split) { return kSplitNames[static_cast<std::size_t>(split)]; }

std::optional<Split> split_from_name(std::string_view name) {
  for (Split s : kAllSplits) {
    if (split_name(s) == name) return s;
  }
  return std::nullopt;
}

TranscriptRecord parse_manifest_line(std::string_view line, std::size_t line_number) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw MalformedManifestLine(line_number, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw MalformedManifestLine(line_number, "expected a JSON object");

  const auto text_field = [&](const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) throw MalformedManifestLine(line_number, std::string("missing field \"") + name + "\"");
    if (!it->is_string()) {
      throw MalformedManifestLine(line_number, std::string("field \"") + name + "\" must be a string");
    }
    return it->get<std::string>();
  };

  TranscriptRecord r;
  r.line_number = line_number;
  r.utterance_id = text_field("id");
  r.transcript = text_field("transcript");
  const std::string split = text_field("split");
  const auto parsed_split = split_from_name(split);
  if (!parsed_split) {
    throw MalformedManifestLine(line_number, "split must be train, dev or test, got \"" + split + "\"");
  }
  r.split = *parsed_split;
  r.source_line = std::string(line);
  return r;
}

std::vector<TranscriptRecord> read_manifest(std::istream& in) {
  std::vector<TranscriptRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c) != 0; })) continue;
    records.push_back(parse_manifest_line(line, line_number));
  }
  return records;
}

std::string annotated_json(const TranscriptRecord& record) {
  Json j = Json::parse(record.source_line);
  j["verdict"] = verdict_name(record.verdict);
  j["offending_words"] = record.offending_words;
  return j.dump();
}

double SplitStats::percent() const {
  if (records == 0) return 0.0;
  return 100.0 * static_cast<double>(discarded) / static_cast<double>(records);
}

SplitStats& SplitStats::operator+=(const SplitStats& other) {
  records += other.records;
  discarded += other.discarded;
  return *this;
}

SplitStats CorpusStats::overall() const {
  SplitStats total;
  for (const SplitStats& s : splits) total += s;
  return total;
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& other) {
  for (std::size_t i = 0; i < splits.size(); ++i) splits[i] += other.splits[i];
  return *this;
}

std::optional<ReferencePercentages> reference_percentages(std::string_view dataset) {
  for (const auto& ref : kReferencePercentages) {
    if (ref.dataset == dataset) return ref;
  }
  return std::nullopt;
}

std::string stats_json(const CorpusStats& stats, const std::optional<ReferencePercentages>& reference) {
  Json j;
  for (Split s : kAllSplits) j[std::string(split_name(s))] = split_json(stats.at(s));
  j["overall"] = split_json(stats.overall());
  if (reference) {
    j["reference"] = {
        {"dataset", reference->dataset},
        {"train", optional_number(reference->train)},
        {"dev", optional_number(reference->dev)},
        {"test", optional_number(reference->test)},
        {"overall", reference->overall},
    };
  }
  return j.dump(2);
}

FilterResult filter_manifest(std::vector<TranscriptRecord> records, SpellingPolicy policy) {
  FilterResult out;
  for (TranscriptRecord& r : records) {
    r.offending_words = offending_words(r.transcript, policy);
    r.verdict = r.offending_words.empty() ? Verdict::kVietnamese : Verdict::kContainsNonVietnamese;
    SplitStats& stats = out.stats.at(r.split);
    ++stats.records;
    if (r.verdict == Verdict::kVietnamese) {
      out.kept.push_back(std::move(r));
    } else {
      ++stats.discarded;
      out.discarded.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace viphon
