#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "tweetpol/types.hpp"

namespace tweetpol {

// Declaration order is the tie-break order for the dominant emotion.
enum class Emotion { angry, fear, happy, sad, surprise, neutral };

inline constexpr std::size_t kEmotionCount = 5;  // excluding neutral

std::string_view to_string(Emotion e);
std::optional<Emotion> parse_emotion(std::string_view s);

struct EmotionScores {
  std::array<double, kEmotionCount> scores{};  // indexed by Emotion
  Emotion dominant = Emotion::neutral;

  double score(Emotion e) const { return scores[static_cast<std::size_t>(e)]; }
};

class EmotionLexicon {
 public:
  /// Keys must be lowercase ASCII alphanumeric words; values one of the
  /// five emotions.
  EmotionLexicon(std::unordered_map<std::string, Emotion> entries, std::string version);

  /// `word<TAB>emotion` records, `#` comments, `# version: X`.
  static EmotionLexicon parse(std::istream& in);
  static EmotionLexicon load(const std::filesystem::path& path);

  std::optional<Emotion> find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  const std::string& version() const { return version_; }

 private:
  std::unordered_map<std::string, Emotion> entries_;
  std::string version_;
};

/// Lowercases, splits on anything that is not an ASCII letter or digit and
/// counts lexicon hits. Scores are hit shares; no hits gives all zeros and
/// neutral.
EmotionScores tag(std::string_view text, const EmotionLexicon& lexicon);

/// Rows: the five emotions then neutral. Columns: female, male.
struct EmotionCrossTab {
  std::array<std::array<std::uint64_t, 2>, kEmotionCount + 1> counts{};

  std::uint64_t row_total(Emotion e) const;
  std::uint64_t total() const;
  /// Share of the row in column `g`; 0 for an empty row.
  double fraction(Emotion e, Gender g) const;
};

/// Tallies dominant emotion against predicted gender. Throws EmptyInput.
EmotionCrossTab emotion_gender_report(
    std::span<const std::pair<EmotionScores, Gender>> items);

std::string render_crosstab(const EmotionCrossTab& tab, const std::string& title);
/// `emotion,female,male,female_fraction,male_fraction`.
std::string render_crosstab_records(const EmotionCrossTab& tab);

}  // namespace tweetpol
