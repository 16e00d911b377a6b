#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qillqa::uni {

// Minimal UTF-8 / Latin text layer. Covers the scripts this toolkit analyzes
// (Basic Latin, Latin-1 Supplement, Latin Extended-A); anything outside those
// ranges round-trips untouched.

std::vector<char32_t> decode_utf8(std::string_view text);   // throws Utf8Error
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

bool is_alpha(char32_t cp);
bool is_space(char32_t cp);
char32_t to_lower(char32_t cp);

// Composes base letter + combining mark pairs (grave, acute, circumflex,
// tilde, diaeresis, ring, cedilla) into their precomposed forms.
std::vector<char32_t> compose_nfc(const std::vector<char32_t>& cps);

// Number of Unicode scalar values in a valid UTF-8 string.
std::size_t scalar_count(std::string_view text);

} // namespace qillqa::uni
