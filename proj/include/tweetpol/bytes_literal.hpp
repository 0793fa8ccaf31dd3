#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tweetpol {

using ByteString = std::vector<std::uint8_t>;

struct DecodedText {
  std::string text;  // well-formed UTF-8
  std::size_t replacement_count = 0;
};

/// Parses a Python-style bytes literal (`b'...'` or `b"..."`) into the bytes
/// it denotes. Recognized escapes: `\xHH`, `\\`, `\'`, `\"`, `\n`, `\r`, `\t`.
/// Anything else after a backslash, a truncated or non-hex `\x` escape, a
/// missing prefix or closing quote, an unescaped closing quote inside the
/// body and any non-ASCII code unit all raise MalformedLiteral.
ByteString parse_bytes_literal(std::string_view literal);

/// Canonical single-quoted rendering of `bytes`: printable ASCII verbatim,
/// `\\`, `\'`, `\n`, `\r`, `\t` for those bytes and lowercase `\xhh` for the
/// rest. parse_bytes_literal(quote_bytes_literal(b)) == b.
std::string quote_bytes_literal(std::span<const std::uint8_t> bytes);

/// True when the field has the `b'` / `b"` shape. Says nothing about
/// validity of the body.
bool looks_like_bytes_literal(std::string_view field);

/// Decodes UTF-8, replacing every maximal ill-formed subpart with a single
/// U+FFFD. Never fails.
DecodedText decode_utf8(std::span<const std::uint8_t> bytes);
DecodedText decode_utf8(std::string_view bytes);

}  // namespace tweetpol
