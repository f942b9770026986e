#pragma once

#include <string>
#include <string_view>

namespace contribroles::unicode {

std::string nfc(std::string_view utf8);

// Alphabetic code points of the NFC form, lowercased.
std::string alpha_lower(std::string_view utf8);

// Uppercased first code point, or empty if text is empty.
std::string upper_initial(std::string_view utf8);

bool starts_with_upper(std::string_view utf8);

}  // namespace contribroles::unicode
