#include "contribroles/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "contribroles/errors.hpp"

namespace contribroles::unicode {
namespace {

icu::UnicodeString to_nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw InvariantError("ICU NFC normalizer unavailable");
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString out = norm->normalize(src, status);
  if (U_FAILURE(status)) return src;
  return out;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool err = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, err);
  if (!err) out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::string nfc(std::string_view utf8) {
  std::string out;
  to_nfc(utf8).toUTF8String(out);
  return out;
}

std::string alpha_lower(std::string_view utf8) {
  icu::UnicodeString s = to_nfc(utf8);
  std::string out;
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUAlphabetic(c)) append_utf8(out, u_tolower(c));
  }
  return out;
}

std::string upper_initial(std::string_view utf8) {
  icu::UnicodeString s = to_nfc(utf8);
  if (s.isEmpty()) return {};
  std::string out;
  append_utf8(out, u_toupper(s.char32At(0)));
  return out;
}

bool starts_with_upper(std::string_view utf8) {
  if (utf8.empty()) return false;
  int32_t i = 0;
  UChar32 c = 0;
  U8_NEXT(reinterpret_cast<const uint8_t*>(utf8.data()), i,
          static_cast<int32_t>(utf8.size()), c);
  return c >= 0 && u_isupper(c);
}

}  // namespace contribroles::unicode
