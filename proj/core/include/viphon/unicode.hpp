#pragma once

#include <string>
#include <string_view>

namespace viphon::unicode {

// Canonical composition / decomposition (NFC / NFD). Throws TextError on
// malformed UTF-8.
std::string to_nfc(std::string_view text);
std::string to_nfd(std::string_view text);
bool is_nfc(std::string_view text);

// Full Unicode lowercase mapping.
std::string to_lower(std::string_view text);

std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

bool is_punctuation(char32_t cp);
bool is_whitespace(char32_t cp);
bool is_digit(char32_t cp);

}  // namespace viphon::unicode
