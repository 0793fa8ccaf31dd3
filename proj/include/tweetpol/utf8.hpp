#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace tweetpol::utf8 {

inline constexpr char32_t kReplacementChar = 0xFFFD;
inline constexpr char32_t kZeroWidthJoiner = 0x200D;

// Appends the UTF-8 encoding of a Unicode scalar value. Surrogates and values
// above U+10FFFF are encoded as U+FFFD.
void append(std::string& out, char32_t cp);

// Reads the scalar starting at `pos` of well-formed UTF-8 text and advances
// `pos` past it. Ill-formed input yields U+FFFD and advances by one byte.
char32_t next(std::string_view text, std::size_t& pos);

// Number of scalar values in well-formed UTF-8 text.
std::size_t length(std::string_view text);

bool is_valid(std::string_view text);

// White_Space scalars (ASCII controls, NBSP, the U+2000 block, ideographic
// space and friends).
bool is_space(char32_t cp);

std::u32string to_u32(std::string_view text);
std::string from_u32(std::u32string_view text);

}  // namespace tweetpol::utf8
