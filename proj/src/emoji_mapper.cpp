#include "tweetpol/emoji_mapper.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "spaced_builder.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/text_io.hpp"
#include "tweetpol/utf8.hpp"

namespace tweetpol {
namespace {

bool valid_emoji_name(std::string_view name) {
  if (name.empty() || name.front() == ' ' || name.back() == ' ') return false;
  for (const char c : name) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == ' ' || c == '-';
    if (!ok) return false;
  }
  return true;
}

bool is_variation_selector(char32_t cp) { return cp == 0xFE0E || cp == 0xFE0F; }

bool is_delimiter(char32_t cp) { return cp >= 0x80 || utf8::is_space(cp); }

void read_version(std::string_view line, std::string& version) {
  if (auto v = io::comment_value(line, "version")) version = *v;
}

}  // namespace

EmojiTable::EmojiTable(std::unordered_map<char32_t, std::string> entries,
                       std::string version, std::size_t min_entries)
    : entries_(std::move(entries)), version_(std::move(version)) {
  if (entries_.size() < min_entries) {
    throw FormatError("emoji table has " + std::to_string(entries_.size()) +
                      " entries, need at least " + std::to_string(min_entries));
  }
  for (const auto& [cp, name] : entries_) {
    if (cp < 0x80 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw FormatError("emoji table key is not a non-ASCII scalar");
    }
    if (!valid_emoji_name(name)) {
      throw FormatError("emoji table name is not uppercase ASCII: '" + name + "'");
    }
  }
}

EmojiTable EmojiTable::parse(std::istream& in, std::size_t min_entries) {
  std::unordered_map<char32_t, std::string> entries;
  std::string version;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = io::chomp(raw);
    if (io::trim(line).empty()) continue;
    if (line.front() == '#') {
      read_version(line, version);
      continue;
    }
    const auto fields = io::split_tabs(line);
    if (fields.size() != 2) {
      throw FormatError("emoji table line " + std::to_string(line_no) +
                        ": expected codepoint<TAB>NAME");
    }
    std::uint32_t cp = 0;
    const auto hex = fields[0];
    const auto res = std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
    if (hex.empty() || res.ec != std::errc() || res.ptr != hex.data() + hex.size()) {
      throw FormatError("emoji table line " + std::to_string(line_no) +
                        ": bad code point '" + std::string(hex) + "'");
    }
    if (!entries.emplace(cp, std::string(fields[1])).second) {
      throw FormatError("emoji table line " + std::to_string(line_no) +
                        ": duplicate code point " + std::string(hex));
    }
  }
  return EmojiTable(std::move(entries), std::move(version), min_entries);
}

EmojiTable EmojiTable::load(const std::filesystem::path& path,
                            std::size_t min_entries) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open emoji table " + path.string());
  return parse(in, min_entries);
}

const std::string* EmojiTable::find(char32_t cp) const {
  const auto it = entries_.find(cp);
  return it == entries_.end() ? nullptr : &it->second;
}

EmoticonLexicon::EmoticonLexicon(
    std::map<std::string, std::string, std::less<>> entries, std::string version)
    : entries_(std::move(entries)), version_(std::move(version)) {
  for (const auto& [key, name] : entries_) {
    if (key.size() < 2 || key.size() > 5) {
      throw FormatError("emoticon '" + key + "' must be 2 to 5 characters");
    }
    for (const char c : key) {
      if (c <= 0x20 || c >= 0x7F) {
        throw FormatError("emoticon '" + key + "' is not printable ASCII");
      }
    }
    if (!valid_emoji_name(name)) {
      throw FormatError("emoticon name is not uppercase ASCII: '" + name + "'");
    }
    max_len_ = std::max(max_len_, key.size());
  }
  for (const auto& [key, name] : entries_) {
    std::istringstream words(name);
    std::string word;
    while (words >> word) {
      if (entries_.count(word)) {
        throw FormatError("emoticon name '" + name + "' contains key '" + word + "'");
      }
    }
  }
}

EmoticonLexicon EmoticonLexicon::parse(std::istream& in) {
  std::map<std::string, std::string, std::less<>> entries;
  std::string version;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = io::chomp(raw);
    if (line.empty()) continue;
    // "#" is not an emoticon glyph, so comments stay unambiguous.
    if (line.front() == '#') {
      read_version(line, version);
      continue;
    }
    const auto fields = io::split_tabs(line);
    if (fields.size() != 2) {
      throw FormatError("emoticon lexicon line " + std::to_string(line_no) +
                        ": expected glyphs<TAB>NAME");
    }
    if (!entries.emplace(std::string(fields[0]), std::string(fields[1])).second) {
      throw FormatError("emoticon lexicon line " + std::to_string(line_no) +
                        ": duplicate key " + std::string(fields[0]));
    }
  }
  return EmoticonLexicon(std::move(entries), std::move(version));
}

EmoticonLexicon EmoticonLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open emoticon lexicon " + path.string());
  return parse(in);
}

const std::string* EmoticonLexicon::find(std::string_view glyphs) const {
  const auto it = entries_.find(glyphs);
  return it == entries_.end() ? nullptr : &it->second;
}

SubstitutionResult apply_emojis(std::string_view text, const EmojiTable& table,
                                SymbolMode mode) {
  SubstitutionResult result;
  if (mode == SymbolMode::keep_raw) {
    result.text = std::string(text);
    return result;
  }
  detail::SpacedBuilder out;
  bool in_sequence = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    if (const std::string* name = table.find(cp)) {
      out.substitute(mode == SymbolMode::replace_with_text ? *name : std::string_view{});
      ++result.emoji_replaced;
      in_sequence = true;
      continue;
    }
    if (in_sequence && (cp == utf8::kZeroWidthJoiner || is_variation_selector(cp))) {
      continue;
    }
    in_sequence = false;
    out.put(cp);
  }
  result.text = out.finish();
  return result;
}

SubstitutionResult replace_emojis(std::string_view text, const EmojiTable& table) {
  return apply_emojis(text, table, SymbolMode::replace_with_text);
}

SubstitutionResult apply_emoticons(std::string_view text,
                                   const EmoticonLexicon& lexicon,
                                   SymbolMode mode) {
  SubstitutionResult result;
  if (mode == SymbolMode::keep_raw) {
    result.text = std::string(text);
    return result;
  }
  const std::u32string scalars = utf8::to_u32(text);
  const std::size_t n = scalars.size();
  detail::SpacedBuilder out;
  std::size_t i = 0;
  while (i < n) {
    const bool left_ok = i == 0 || is_delimiter(scalars[i - 1]);
    std::size_t matched = 0;
    const std::string* name = nullptr;
    if (left_ok && scalars[i] < 0x80 && !utf8::is_space(scalars[i])) {
      // Longest ASCII run we could match starting here.
      std::string run;
      for (std::size_t k = i; k < n && run.size() < lexicon.max_key_length(); ++k) {
        if (scalars[k] >= 0x80 || utf8::is_space(scalars[k])) break;
        run.push_back(static_cast<char>(scalars[k]));
      }
      for (std::size_t len = run.size(); len >= 2; --len) {
        const bool right_ok = i + len == n || is_delimiter(scalars[i + len]);
        if (!right_ok) continue;
        if (const std::string* hit = lexicon.find(std::string_view(run).substr(0, len))) {
          matched = len;
          name = hit;
          break;
        }
      }
    }
    if (name != nullptr) {
      out.substitute(mode == SymbolMode::replace_with_text ? *name : std::string_view{});
      ++result.emoticons_replaced;
      i += matched;
    } else {
      out.put(scalars[i]);
      ++i;
    }
  }
  result.text = out.finish();
  return result;
}

SubstitutionResult replace_emoticons(std::string_view text,
                                     const EmoticonLexicon& lexicon) {
  return apply_emoticons(text, lexicon, SymbolMode::replace_with_text);
}

std::size_t count_unknown_emoji_like(std::string_view text,
                                     const EmojiTable& table) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    const bool emoji_block = (cp >= 0x1F000 && cp <= 0x1FAFF) ||
                             (cp >= 0x2600 && cp <= 0x27BF);
    if (emoji_block && !table.contains(cp)) ++count;
  }
  return count;
}

}  // namespace tweetpol
