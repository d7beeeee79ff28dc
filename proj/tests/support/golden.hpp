#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "viphon/error.hpp"
#include "viphon/phonology.hpp"
#include "viphon/tokenizer.hpp"

namespace viphon::testkit {

struct GoldenRow {
  std::string word;
  std::string cls;  // initial, glide, vowel, final or tone
  std::string written_form;
  std::string ipa;
};

inline std::vector<GoldenRow> parse_golden(const std::string& text) {
  std::vector<GoldenRow> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    fields.resize(4);
    rows.push_back({fields[0], fields[1], fields[2], fields[3]});
  }
  return rows;
}

// Empty on success, otherwise what went wrong.
inline std::string check_golden(const GoldenRow& row) {
  const auto parsed = try_parse_syllable(row.word);
  if (!parsed.ok()) return "does not parse: " + parsed.failure + " residue '" + parsed.residue + "'";
  const auto& s = parsed.syllable;
  std::string form;
  std::string got_ipa;
  if (row.cls == "tone") {
    const auto name = std::string(tone_name(s.tone));
    return name == row.written_form ? "" : "tone " + name;
  }
  if (row.cls == "initial") {
    form = parsed.forms.initial;
    if (s.initial) got_ipa = ipa(*s.initial);
  } else if (row.cls == "glide") {
    form = parsed.forms.glide;
    if (s.glide) got_ipa = ipa(*s.glide);
  } else if (row.cls == "vowel") {
    form = parsed.forms.vowel;
    if (s.vowel) got_ipa = ipa(*s.vowel);
  } else if (row.cls == "final") {
    form = parsed.forms.final;
    if (s.final) got_ipa = ipa(*s.final);
  } else {
    return "unknown class " + row.cls;
  }
  if (form != row.written_form || got_ipa != row.ipa) return "got '" + form + "' /" + got_ipa + "/";
  return "";
}

}  // namespace viphon::testkit
