#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace viphon {

// One entry per non-empty line; lines starting with '#' are skipped and
// trailing '\r' is removed.
std::vector<std::string> parse_word_list(std::string_view text);

// Canonical spellings shipped with the library (core/data/lexicon.txt).
const std::vector<std::string>& bundled_lexicon();

}  // namespace viphon
