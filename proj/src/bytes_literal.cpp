#include "tweetpol/bytes_literal.hpp"

#include <string>

#include "tweetpol/errors.hpp"
#include "tweetpol/utf8.hpp"

namespace tweetpol {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void malformed(std::string_view literal, std::size_t pos,
                            const std::string& what) {
  std::string shown(literal.substr(0, 60));
  if (literal.size() > 60) shown += "...";
  throw MalformedLiteral(what + " at offset " + std::to_string(pos) +
                         " in bytes literal: " + shown);
}

}  // namespace

bool looks_like_bytes_literal(std::string_view field) {
  return field.size() >= 3 && field[0] == 'b' &&
         (field[1] == '\'' || field[1] == '"') && field.back() == field[1];
}

ByteString parse_bytes_literal(std::string_view literal) {
  if (literal.size() < 3 || literal[0] != 'b' ||
      (literal[1] != '\'' && literal[1] != '"')) {
    malformed(literal, 0, "missing b' or b\" prefix");
  }
  const char quote = literal[1];
  const std::size_t end = literal.size() - 1;
  if (literal[end] != quote) malformed(literal, end, "missing closing quote");

  ByteString out;
  out.reserve(end - 2);
  std::size_t i = 2;
  while (i < end) {
    const char c = literal[i];
    if (static_cast<unsigned char>(c) >= 0x80) {
      malformed(literal, i, "non-ASCII code unit outside an escape");
    }
    if (c == quote) malformed(literal, i, "unescaped quote");
    if (c != '\\') {
      out.push_back(static_cast<std::uint8_t>(c));
      ++i;
      continue;
    }
    // The closing quote cannot be consumed by an escape.
    if (i + 1 >= end) malformed(literal, i, "dangling backslash");
    const char kind = literal[i + 1];
    switch (kind) {
      case '\\': out.push_back('\\'); i += 2; break;
      case '\'': out.push_back('\''); i += 2; break;
      case '"': out.push_back('"'); i += 2; break;
      case 'n': out.push_back('\n'); i += 2; break;
      case 'r': out.push_back('\r'); i += 2; break;
      case 't': out.push_back('\t'); i += 2; break;
      case 'x': {
        if (i + 3 >= end) {
          malformed(literal, i, "truncated \\x escape");
        }
        const int hi = hex_value(literal[i + 2]);
        const int lo = hex_value(literal[i + 3]);
        if (hi < 0 || lo < 0) malformed(literal, i, "non-hex digit in \\x escape");
        out.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
        i += 4;
        break;
      }
      default:
        malformed(literal, i, std::string("unrecognized escape \\") + kind);
    }
  }
  return out;
}

std::string quote_bytes_literal(std::span<const std::uint8_t> bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "b'";
  out.reserve(bytes.size() + 3);
  for (const std::uint8_t b : bytes) {
    switch (b) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (b >= 0x20 && b < 0x7F) {
          out.push_back(static_cast<char>(b));
        } else {
          out += "\\x";
          out.push_back(kHex[b >> 4]);
          out.push_back(kHex[b & 0xF]);
        }
    }
  }
  out.push_back('\'');
  return out;
}

DecodedText decode_utf8(std::span<const std::uint8_t> bytes) {
  DecodedText result;
  result.text.reserve(bytes.size());
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    const std::uint8_t lead = bytes[i];
    if (lead < 0x80) {
      result.text.push_back(static_cast<char>(lead));
      ++i;
      continue;
    }
    // Trailing byte count and the admissible range of the first trailing
    // byte, which excludes overlongs, surrogates and values past U+10FFFF.
    std::size_t need = 0;
    std::uint8_t lo = 0x80;
    std::uint8_t hi = 0xBF;
    char32_t cp = 0;
    if (lead >= 0xC2 && lead <= 0xDF) {
      need = 1;
      cp = lead & 0x1F;
    } else if (lead >= 0xE0 && lead <= 0xEF) {
      need = 2;
      cp = lead & 0x0F;
      if (lead == 0xE0) lo = 0xA0;
      if (lead == 0xED) hi = 0x9F;
    } else if (lead >= 0xF0 && lead <= 0xF4) {
      need = 3;
      cp = lead & 0x07;
      if (lead == 0xF0) lo = 0x90;
      if (lead == 0xF4) hi = 0x8F;
    } else {
      utf8::append(result.text, utf8::kReplacementChar);
      ++result.replacement_count;
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    std::size_t taken = 0;
    while (taken < need && j < n) {
      const std::uint8_t c = bytes[j];
      if (c < lo || c > hi) break;
      cp = (cp << 6) | (c & 0x3F);
      ++j;
      ++taken;
      lo = 0x80;
      hi = 0xBF;
    }
    if (taken == need) {
      utf8::append(result.text, cp);
    } else {
      utf8::append(result.text, utf8::kReplacementChar);
      ++result.replacement_count;
    }
    i = j;
  }
  return result;
}

DecodedText decode_utf8(std::string_view bytes) {
  return decode_utf8(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

}  // namespace tweetpol
