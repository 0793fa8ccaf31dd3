#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>

namespace tweetpol {

/// What to do with a recognized emoji or emoticon.
enum class SymbolMode { replace_with_text, strip, keep_raw };

/// Minimum number of entries an emoji table must carry.
inline constexpr std::size_t kMinEmojiEntries = 842;

/// Emoji scalar -> uppercase name ("ANGRY FACE").
///
/// Construction validates the table: at least kMinEmojiEntries entries,
/// non-ASCII keys, names made of A-Z, digits, spaces and hyphens. Because
/// names are ASCII and keys are not, replacement is idempotent.
class EmojiTable {
 public:
  EmojiTable(std::unordered_map<char32_t, std::string> entries,
             std::string version, std::size_t min_entries = kMinEmojiEntries);

  /// Reads `codepoint_hex<TAB>NAME` records. `#` lines are comments; a
  /// `# version: X` comment sets the version string.
  static EmojiTable parse(std::istream& in,
                          std::size_t min_entries = kMinEmojiEntries);
  static EmojiTable load(const std::filesystem::path& path,
                         std::size_t min_entries = kMinEmojiEntries);

  const std::string* find(char32_t cp) const;
  bool contains(char32_t cp) const { return entries_.count(cp) != 0; }
  std::size_t size() const { return entries_.size(); }
  const std::string& version() const { return version_; }

 private:
  std::unordered_map<char32_t, std::string> entries_;
  std::string version_;
};

/// ASCII glyph sequence (":-)") -> name token ("HAPPY FACE EMOTICON").
///
/// Keys are printable ASCII without spaces, 2 to 5 characters long. No word
/// of any name may itself be a key, which keeps replacement idempotent.
class EmoticonLexicon {
 public:
  EmoticonLexicon(std::map<std::string, std::string, std::less<>> entries,
                  std::string version);

  static EmoticonLexicon parse(std::istream& in);
  static EmoticonLexicon load(const std::filesystem::path& path);

  const std::string* find(std::string_view glyphs) const;
  std::size_t size() const { return entries_.size(); }
  std::size_t max_key_length() const { return max_len_; }
  const std::string& version() const { return version_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
  std::string version_;
  std::size_t max_len_ = 0;
};

struct SubstitutionResult {
  std::string text;
  std::size_t emoji_replaced = 0;
  std::size_t emoticons_replaced = 0;
};

/// Substitutes every table scalar with its name, padded by single spaces.
/// Whitespace touching a substitution collapses to one space and the result
/// is trimmed. A ZWJ or variation selector directly following a substituted
/// scalar is dropped with it.
SubstitutionResult replace_emojis(std::string_view text, const EmojiTable& table);

/// Same walk as replace_emojis, but `mode` picks replace, strip (delete the
/// scalar, leaving a token boundary) or keep_raw (identity).
SubstitutionResult apply_emojis(std::string_view text, const EmojiTable& table,
                                SymbolMode mode);

/// Left-to-right, longest-match-first emoticon substitution. A key matches
/// only when both neighbours are a string boundary, whitespace or a
/// non-ASCII scalar.
SubstitutionResult replace_emoticons(std::string_view text,
                                     const EmoticonLexicon& lexicon);

SubstitutionResult apply_emoticons(std::string_view text,
                                   const EmoticonLexicon& lexicon,
                                   SymbolMode mode);

/// Count of scalars in emoji-heavy blocks that the table does not know.
/// Used for corpus data-quality summaries.
std::size_t count_unknown_emoji_like(std::string_view text,
                                     const EmojiTable& table);

}  // namespace tweetpol
