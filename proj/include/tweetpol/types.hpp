#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tweetpol {

// Label convention: female is the positive class (label 1).
enum class Gender { female, male };

inline int label_of(Gender g) { return g == Gender::female ? 1 : 0; }
inline Gender gender_of_label(int label) {
  return label == 1 ? Gender::female : Gender::male;
}
std::string_view to_string(Gender g);
std::optional<Gender> parse_gender(std::string_view s);

enum class Career {
  singer,
  actor_actress,
  media_personality,
  athlete_sport_analyst,
  other,
};

inline constexpr std::size_t kCareerCount = 5;
std::string_view to_string(Career c);
std::optional<Career> parse_career(std::string_view s);

using TweetId = std::uint64_t;

/// One corpus row as read from disk. `text` is either a bytes literal
/// (`is_literal`) or already-decoded UTF-8.
struct RawRecord {
  TweetId id = 0;
  std::string account;
  Gender gender = Gender::female;
  Career career = Career::other;
  std::string text;
  bool is_literal = false;
};

struct TweetStats {
  std::size_t emoji_replaced = 0;
  std::size_t emoticons_replaced = 0;
  std::size_t mentions_stripped = 0;
  std::size_t decode_replacements = 0;
  std::size_t unknown_emoji_like = 0;
};

struct NormalizedTweet {
  TweetId id = 0;
  std::string account;
  Gender gender = Gender::female;
  std::string text;
  TweetStats stats;
};

}  // namespace tweetpol
