#include "tweetpol/emotion.hpp"

#include <fstream>
#include <istream>

#include "tweetpol/errors.hpp"
#include "tweetpol/text_io.hpp"

namespace tweetpol {
namespace {

constexpr std::array<std::string_view, kEmotionCount + 1> kNames = {
    "angry", "fear", "happy", "sad", "surprise", "neutral"};

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string pad(std::string s, std::size_t width, bool left) {
  if (s.size() >= width) return s;
  return left ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string_view to_string(Emotion e) { return kNames[static_cast<std::size_t>(e)]; }

std::optional<Emotion> parse_emotion(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (s == kNames[i]) return static_cast<Emotion>(i);
  }
  return std::nullopt;
}

EmotionLexicon::EmotionLexicon(std::unordered_map<std::string, Emotion> entries,
                               std::string version)
    : entries_(std::move(entries)), version_(std::move(version)) {
  for (const auto& [word, emotion] : entries_) {
    if (word.empty()) throw FormatError("emotion lexicon: empty word");
    for (const char c : word) {
      if (!is_word_char(c) || lower(c) != c) {
        throw FormatError("emotion lexicon: '" + word + "' is not a lowercase word");
      }
    }
    if (emotion == Emotion::neutral) {
      throw FormatError("emotion lexicon: '" + word + "' maps to neutral");
    }
  }
}

EmotionLexicon EmotionLexicon::parse(std::istream& in) {
  std::unordered_map<std::string, Emotion> entries;
  std::string version;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = io::chomp(raw);
    if (io::trim(line).empty()) continue;
    if (line.front() == '#') {
      if (auto v = io::comment_value(line, "version")) version = *v;
      continue;
    }
    const auto fields = io::split_tabs(line);
    const auto emotion = fields.size() == 2 ? parse_emotion(fields[1]) : std::nullopt;
    if (!emotion) {
      throw FormatError("emotion lexicon line " + std::to_string(line_no) +
                        ": expected word<TAB>emotion");
    }
    if (!entries.emplace(std::string(fields[0]), *emotion).second) {
      throw FormatError("emotion lexicon line " + std::to_string(line_no) +
                        ": duplicate word " + std::string(fields[0]));
    }
  }
  return EmotionLexicon(std::move(entries), std::move(version));
}

EmotionLexicon EmotionLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open emotion lexicon " + path.string());
  return parse(in);
}

std::optional<Emotion> EmotionLexicon::find(std::string_view word) const {
  const auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

EmotionScores tag(std::string_view text, const EmotionLexicon& lexicon) {
  std::array<std::uint64_t, kEmotionCount> hits{};
  std::uint64_t total = 0;
  std::string word;
  const auto flush = [&] {
    if (word.empty()) return;
    if (const auto e = lexicon.find(word)) {
      ++hits[static_cast<std::size_t>(*e)];
      ++total;
    }
    word.clear();
  };
  for (const char c : text) {
    if (is_word_char(c)) {
      word.push_back(lower(c));
    } else {
      flush();
    }
  }
  flush();

  EmotionScores s;
  if (total == 0) return s;
  std::size_t best = 0;
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    s.scores[i] = static_cast<double>(hits[i]) / static_cast<double>(total);
    if (hits[i] > hits[best]) best = i;
  }
  s.dominant = static_cast<Emotion>(best);
  return s;
}

std::uint64_t EmotionCrossTab::row_total(Emotion e) const {
  const auto& row = counts[static_cast<std::size_t>(e)];
  return row[0] + row[1];
}

std::uint64_t EmotionCrossTab::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts) t += row[0] + row[1];
  return t;
}

double EmotionCrossTab::fraction(Emotion e, Gender g) const {
  const std::uint64_t n = row_total(e);
  if (n == 0) return 0.0;
  const auto& row = counts[static_cast<std::size_t>(e)];
  return static_cast<double>(row[g == Gender::female ? 0 : 1]) / static_cast<double>(n);
}

EmotionCrossTab emotion_gender_report(
    std::span<const std::pair<EmotionScores, Gender>> items) {
  if (items.empty()) throw EmptyInput("emotion_gender_report: no items");
  EmotionCrossTab tab;
  for (const auto& [scores, gender] : items) {
    ++tab.counts[static_cast<std::size_t>(scores.dominant)][gender == Gender::female ? 0 : 1];
  }
  return tab;
}

std::string render_crosstab(const EmotionCrossTab& tab, const std::string& title) {
  std::string out = title + "\n";
  out += pad("emotion", 10, false) + pad("female", 9, true) + pad("male", 9, true) +
         pad("female%", 10, true) + pad("male%", 10, true) + "\n";
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    const auto e = static_cast<Emotion>(i);
    out += pad(std::string(kNames[i]), 10, false);
    out += pad(std::to_string(tab.counts[i][0]), 9, true);
    out += pad(std::to_string(tab.counts[i][1]), 9, true);
    out += pad(io::fixed(tab.fraction(e, Gender::female), 4), 10, true);
    out += pad(io::fixed(tab.fraction(e, Gender::male), 4), 10, true);
    out += "\n";
  }
  return out;
}

std::string render_crosstab_records(const EmotionCrossTab& tab) {
  std::string out = "emotion,female,male,female_fraction,male_fraction\n";
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    const auto e = static_cast<Emotion>(i);
    out += std::string(kNames[i]) + "," + std::to_string(tab.counts[i][0]) + "," +
           std::to_string(tab.counts[i][1]) + "," + io::fixed(tab.fraction(e, Gender::female), 4) +
           "," + io::fixed(tab.fraction(e, Gender::male), 4) + "\n";
  }
  return out;
}

}  // namespace tweetpol
