#include "tweetpol/types.hpp"

namespace tweetpol {

std::string_view to_string(Gender g) {
  return g == Gender::female ? "female" : "male";
}

std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "female" || s == "f" || s == "F") return Gender::female;
  if (s == "male" || s == "m" || s == "M") return Gender::male;
  return std::nullopt;
}

std::string_view to_string(Career c) {
  switch (c) {
    case Career::singer: return "singer";
    case Career::actor_actress: return "actor_actress";
    case Career::media_personality: return "media_personality";
    case Career::athlete_sport_analyst: return "athlete_sport_analyst";
    case Career::other: return "other";
  }
  return "other";
}

std::optional<Career> parse_career(std::string_view s) {
  for (std::size_t i = 0; i < kCareerCount; ++i) {
    const auto c = static_cast<Career>(i);
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

}  // namespace tweetpol
