#include <gtest/gtest.h>

#include "viphon/error.hpp"
#include "viphon/unicode.hpp"

namespace vu = viphon::unicode;

TEST(Unicode, ComposesAndDecomposes) {
  const std::string composed = "ệ";        // U+1EC7
  const std::string decomposed = "ệ";
  EXPECT_EQ(vu::to_nfc(decomposed), composed);
  EXPECT_EQ(vu::to_nfd(composed), "ệ");  // canonical order: dot below first
  EXPECT_EQ(vu::to_nfc(vu::to_nfd(composed)), composed);
  EXPECT_TRUE(vu::is_nfc(composed));
  EXPECT_FALSE(vu::is_nfc(decomposed));
}

TEST(Unicode, Lowercases) {
  EXPECT_EQ(vu::to_lower("ĐƯỜNG Quê"), "đường quê");
  EXPECT_EQ(vu::to_lower(""), "");
}

TEST(Unicode, RejectsMalformedUtf8) {
  EXPECT_THROW(vu::to_nfc("\xff\xfe"), viphon::TextError);
  EXPECT_THROW(vu::decode_utf8("a\xc3"), viphon::TextError);
}

TEST(Unicode, Utf8RoundTrip) {
  const std::u32string cps = U"tiếng việt ∅ u̯";
  EXPECT_EQ(vu::decode_utf8(vu::encode_utf8(cps)), cps);
}

TEST(Unicode, CharacterClasses) {
  EXPECT_TRUE(vu::is_punctuation(U','));
  EXPECT_TRUE(vu::is_punctuation(U'“'));
  EXPECT_FALSE(vu::is_punctuation(U'a'));
  EXPECT_TRUE(vu::is_whitespace(U' '));
  EXPECT_TRUE(vu::is_digit(U'7'));
  EXPECT_FALSE(vu::is_digit(U'đ'));
}
