#include "viphon/lexicon.hpp"

namespace viphon {
namespace detail {
extern const std::string_view kEmbeddedLexicon;
}  // namespace detail

std::vector<std::string> parse_word_list(std::string_view text) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    words.emplace_back(line);
  }
  return words;
}

const std::vector<std::string>& bundled_lexicon() {
  static const std::vector<std::string> words = parse_word_list(detail::kEmbeddedLexicon);
  return words;
}

}  // namespace viphon
