#include "tweetpol/tweet_cleaner.hpp"

#include "spaced_builder.hpp"
#include "tweetpol/utf8.hpp"

namespace tweetpol {
namespace {

constexpr std::size_t kMaxHandleLength = 15;

bool is_ascii_alnum(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
         (cp >= '0' && cp <= '9');
}

bool is_handle_char(char32_t cp) { return is_ascii_alnum(cp) || cp == '_'; }

}  // namespace

std::string_view to_string(SymbolMode mode) {
  switch (mode) {
    case SymbolMode::replace_with_text: return "replace";
    case SymbolMode::strip: return "strip";
    case SymbolMode::keep_raw: return "keep";
  }
  return "replace";
}

std::optional<SymbolMode> parse_symbol_mode(std::string_view s) {
  if (s == "replace" || s == "replace_with_text") return SymbolMode::replace_with_text;
  if (s == "strip") return SymbolMode::strip;
  if (s == "keep" || s == "keep_raw") return SymbolMode::keep_raw;
  return std::nullopt;
}

std::string describe(const NormalizationConfig& config) {
  std::string out = "strip_mentions=";
  out += config.strip_mentions ? "1" : "0";
  out += " emoji=";
  out += to_string(config.emoji_mode);
  out += " emoticon=";
  out += to_string(config.emoticon_mode);
  out += " drop_retweets=";
  out += config.drop_retweets ? "1" : "0";
  return out;
}

std::vector<NamedConfig> ablation_grid() {
  const auto make = [](bool strip_mentions, SymbolMode mode) {
    NormalizationConfig c;
    c.strip_mentions = strip_mentions;
    c.emoji_mode = mode;
    c.emoticon_mode = mode;
    return c;
  };
  return {
      {"With mention+no emoji", make(false, SymbolMode::strip)},
      {"With mention+with emoji", make(false, SymbolMode::replace_with_text)},
      {"No mention+no emoji", make(true, SymbolMode::strip)},
      {"No mention+with emoji", make(true, SymbolMode::replace_with_text)},
  };
}

std::string slug(std::string_view config_name) {
  std::string out;
  bool gap = false;
  for (const char c : config_name) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                       (c >= '0' && c <= '9');
    if (!alnum) {
      gap = !out.empty();
      continue;
    }
    if (gap) out.push_back('_');
    gap = false;
    out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  }
  return out.empty() ? "config" : out;
}

bool is_retweet(std::string_view text) {
  return text.size() >= 3 && text[0] == 'R' && text[1] == 'T' &&
         (text[2] == ' ' || text[2] == '@');
}

MentionResult strip_mentions(std::string_view text) {
  MentionResult result;
  const std::u32string scalars = utf8::to_u32(text);
  const std::size_t n = scalars.size();
  detail::SpacedBuilder out;
  std::size_t i = 0;
  // A removed mention leaves a boundary, so "@a@b" loses both handles.
  std::size_t boundary = 0;
  while (i < n) {
    if (scalars[i] == '@' && (i == boundary || !is_ascii_alnum(scalars[i - 1]))) {
      std::size_t j = i + 1;
      while (j < n && is_handle_char(scalars[j])) ++j;
      const std::size_t run = j - i - 1;
      if (run >= 1 && run <= kMaxHandleLength) {
        out.substitute({});
        ++result.mentions_stripped;
        i = j;
        boundary = j;
        continue;
      }
    }
    out.put(scalars[i]);
    ++i;
  }
  result.text = out.finish();
  return result;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool gap = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = utf8::next(text, pos);
    if (utf8::is_space(cp)) {
      gap = true;
      continue;
    }
    if (gap && !out.empty()) out.push_back(' ');
    gap = false;
    out.append(text.substr(start, pos - start));
  }
  return out;
}

DecodedText decode_record_text(const RawRecord& raw) {
  if (raw.is_literal) return decode_utf8(parse_bytes_literal(raw.text));
  return decode_utf8(std::string_view(raw.text));
}

NormalizeOutcome normalize_record(const RawRecord& raw,
                                  const NormalizationConfig& config,
                                  const EmojiTable& table,
                                  const EmoticonLexicon& lexicon) {
  NormalizeOutcome outcome;
  DecodedText decoded = decode_record_text(raw);
  if (config.drop_retweets && is_retweet(decoded.text)) {
    outcome.dropped = DropReason::retweet;
    return outcome;
  }

  NormalizedTweet tweet;
  tweet.id = raw.id;
  tweet.account = raw.account;
  tweet.gender = raw.gender;
  tweet.stats.decode_replacements = decoded.replacement_count;
  tweet.stats.unknown_emoji_like = count_unknown_emoji_like(decoded.text, table);

  std::string text = std::move(decoded.text);
  if (config.strip_mentions) {
    MentionResult m = strip_mentions(text);
    tweet.stats.mentions_stripped = m.mentions_stripped;
    text = std::move(m.text);
  }
  SubstitutionResult e = apply_emojis(text, table, config.emoji_mode);
  tweet.stats.emoji_replaced = e.emoji_replaced;
  SubstitutionResult t = apply_emoticons(e.text, lexicon, config.emoticon_mode);
  tweet.stats.emoticons_replaced = t.emoticons_replaced;
  tweet.text = collapse_whitespace(t.text);

  if (tweet.text.empty()) {
    outcome.dropped = DropReason::empty;
    return outcome;
  }
  outcome.tweet = std::move(tweet);
  return outcome;
}

std::optional<NormalizedTweet> normalize(const RawRecord& raw,
                                         const NormalizationConfig& config,
                                         const EmojiTable& table,
                                         const EmoticonLexicon& lexicon) {
  return normalize_record(raw, config, table, lexicon).tweet;
}

NormalizedCorpus normalize_all(std::span<const RawRecord> records,
                               const NormalizationConfig& config,
                               const EmojiTable& table,
                               const EmoticonLexicon& lexicon) {
  NormalizedCorpus out;
  out.tweets.reserve(records.size());
  for (const RawRecord& raw : records) {
    NormalizeOutcome o = normalize_record(raw, config, table, lexicon);
    switch (o.dropped) {
      case DropReason::retweet: ++out.dropped_retweets; break;
      case DropReason::empty: ++out.dropped_empty; break;
      case DropReason::none: out.tweets.push_back(std::move(*o.tweet)); break;
    }
  }
  return out;
}

}  // namespace tweetpol
