#include "viphon/unicode.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "viphon/error.hpp"

namespace viphon::unicode {
namespace {

icu::UnicodeString from_utf8(std::string_view text) {
  // ICU silently substitutes U+FFFD; reject malformed input up front instead.
  decode_utf8(text);
  return icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

const icu::Normalizer2& normalizer(bool compose) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n =
      compose ? icu::Normalizer2::getNFCInstance(status) : icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw TextError(std::string("ICU normalizer unavailable: ") + u_errorName(status));
  }
  return *n;
}

std::string normalize(std::string_view text, bool compose) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = normalizer(compose).normalize(from_utf8(text), status);
  if (U_FAILURE(status)) throw TextError(std::string("normalization failed: ") + u_errorName(status));
  return to_utf8(out);
}

}  // namespace

std::string to_nfc(std::string_view text) { return normalize(text, true); }
std::string to_nfd(std::string_view text) { return normalize(text, false); }

bool is_nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const bool ok = normalizer(true).isNormalized(from_utf8(text), status);
  if (U_FAILURE(status)) throw TextError(std::string("normalization check failed: ") + u_errorName(status));
  return ok;
}

std::string to_lower(std::string_view text) {
  icu::UnicodeString s = from_utf8(text);
  s.toLower(icu::Locale::getRoot());
  return to_utf8(s);
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 cp;
    U8_NEXT(bytes, i, length, cp);
    if (cp < 0) throw TextError("malformed UTF-8 at byte " + std::to_string(i - 1));
    out.push_back(static_cast<char32_t>(cp));
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

bool is_punctuation(char32_t cp) {
  const auto c = static_cast<UChar32>(cp);
  if (u_ispunct(c)) return true;
  const int8_t type = u_charType(c);
  return type == U_MATH_SYMBOL || type == U_CURRENCY_SYMBOL || type == U_MODIFIER_SYMBOL ||
         type == U_OTHER_SYMBOL;
}

bool is_whitespace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_digit(char32_t cp) { return u_isdigit(static_cast<UChar32>(cp)); }

}  // namespace viphon::unicode
