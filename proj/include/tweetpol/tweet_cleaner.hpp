#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tweetpol/bytes_literal.hpp"
#include "tweetpol/emoji_mapper.hpp"
#include "tweetpol/types.hpp"

namespace tweetpol {

struct NormalizationConfig {
  bool strip_mentions = false;
  SymbolMode emoji_mode = SymbolMode::replace_with_text;
  SymbolMode emoticon_mode = SymbolMode::replace_with_text;
  bool drop_retweets = true;

  bool operator==(const NormalizationConfig&) const = default;
};

/// Canonical one-line rendering, e.g.
/// "strip_mentions=1 emoji=replace emoticon=replace drop_retweets=1".
std::string describe(const NormalizationConfig& config);

std::string_view to_string(SymbolMode mode);
/// Accepts "replace", "replace_with_text", "strip", "keep", "keep_raw".
std::optional<SymbolMode> parse_symbol_mode(std::string_view s);

struct NamedConfig {
  std::string name;
  NormalizationConfig config;
};

/// The 2x2 mention x emoji grid in its fixed report order:
/// "With mention+no emoji", "With mention+with emoji",
/// "No mention+no emoji", "No mention+with emoji".
std::vector<NamedConfig> ablation_grid();

/// File-name friendly form of a config name ("no_mention_with_emoji").
std::string slug(std::string_view config_name);

/// Retweets start with a case-sensitive "RT" followed by a space or "@".
bool is_retweet(std::string_view text);

struct MentionResult {
  std::string text;
  std::size_t mentions_stripped = 0;
};

/// Removes `@handle` tokens: "@" at the start of the text, after a
/// non-alphanumeric character or right after a removed handle, followed by a
/// maximal run of 1 to 15 characters from [A-Za-z0-9_]. Longer runs are not
/// handles and are kept.
MentionResult strip_mentions(std::string_view text);

/// Collapses every whitespace run to one ASCII space and trims.
std::string collapse_whitespace(std::string_view text);

/// Decodes the record's text: bytes literals go through the parser and the
/// UTF-8 decoder, plain text only through the decoder.
DecodedText decode_record_text(const RawRecord& raw);

enum class DropReason { none, retweet, empty };

struct NormalizeOutcome {
  std::optional<NormalizedTweet> tweet;
  DropReason dropped = DropReason::none;
};

/// Fixed pipeline: decode, retweet filter, mentions, emoji, emoticons,
/// whitespace. Throws MalformedLiteral for a bad literal.
NormalizeOutcome normalize_record(const RawRecord& raw,
                                  const NormalizationConfig& config,
                                  const EmojiTable& table,
                                  const EmoticonLexicon& lexicon);

std::optional<NormalizedTweet> normalize(const RawRecord& raw,
                                         const NormalizationConfig& config,
                                         const EmojiTable& table,
                                         const EmoticonLexicon& lexicon);

struct NormalizedCorpus {
  std::vector<NormalizedTweet> tweets;  // input order
  std::size_t dropped_retweets = 0;
  std::size_t dropped_empty = 0;
};

NormalizedCorpus normalize_all(std::span<const RawRecord> records,
                               const NormalizationConfig& config,
                               const EmojiTable& table,
                               const EmoticonLexicon& lexicon);

}  // namespace tweetpol
