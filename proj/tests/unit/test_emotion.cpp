#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "tweetpol/emotion.hpp"
#include "tweetpol/errors.hpp"

using namespace tweetpol;

namespace {

EmotionLexicon small_lexicon() {
  return EmotionLexicon({{"happy", Emotion::happy}, {"glad", Emotion::happy},
                         {"scared", Emotion::fear}, {"furious", Emotion::angry},
                         {"gloomy", Emotion::sad}, {"wow", Emotion::surprise}},
                        "test");
}

std::pair<EmotionScores, Gender> item(Emotion dominant, Gender g) {
  EmotionScores s;
  s.dominant = dominant;
  return {s, g};
}

}  // namespace

TEST_SUITE("tag") {
  TEST_CASE("all hits in one class") {
    const EmotionScores s = tag("I am happy happy and glad", small_lexicon());
    CHECK(s.score(Emotion::happy) == 1.0);
    CHECK(s.dominant == Emotion::happy);
  }

  TEST_CASE("no hits is neutral") {
    const EmotionScores s = tag("the meeting is at noon", small_lexicon());
    for (const double v : s.scores) CHECK(v == 0.0);
    CHECK(s.dominant == Emotion::neutral);
  }

  TEST_CASE("ties go to the earlier label") {
    const EmotionScores s = tag("happy but scared", small_lexicon());
    CHECK(s.score(Emotion::happy) == 0.5);
    CHECK(s.score(Emotion::fear) == 0.5);
    CHECK(s.dominant == Emotion::fear);
    CHECK(tag("wow furious", small_lexicon()).dominant == Emotion::angry);
  }

  TEST_CASE("case and punctuation boundaries") {
    const EmotionScores s = tag("SO happy!!!glad,gloomy?", small_lexicon());
    CHECK(s.score(Emotion::happy) == doctest::Approx(2.0 / 3.0));
    CHECK(s.score(Emotion::sad) == doctest::Approx(1.0 / 3.0));
    CHECK(tag("unhappy happyish", small_lexicon()).dominant == Emotion::neutral);
  }

  TEST_CASE("substituted emoji names carry emotion") {
    const EmotionLexicon& lex = fixtures::resources().emotions;
    CHECK(tag("so ANGRY FACE", lex).dominant == Emotion::angry);
    CHECK(tag("FACE SCREAMING IN FEAR", lex).dominant == Emotion::fear);
  }

  TEST_CASE("bag of words and neutral padding") {
    const EmotionLexicon& lex = fixtures::resources().emotions;
    std::mt19937_64 gen(31);
    const std::vector<std::string> words = {"happy", "scared", "angry", "sad", "wow", "love",
                                            "the", "noon", "meeting", "terrified", "glad", "upset"};
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<std::string> tokens;
      const std::size_t n = gen() % 12;
      for (std::size_t i = 0; i < n; ++i) tokens.push_back(words[gen() % words.size()]);
      const auto join = [](const std::vector<std::string>& ts) {
        std::string s;
        for (const auto& t : ts) s += t + " ";
        return s;
      };
      const EmotionScores a = tag(join(tokens), lex);
      std::shuffle(tokens.begin(), tokens.end(), gen);
      const EmotionScores b = tag(join(tokens), lex);
      CHECK(a.scores == b.scores);
      CHECK(a.dominant == b.dominant);
      const EmotionScores c = tag(join(tokens) + " the meeting is at noon 12", lex);
      CHECK(a.scores == c.scores);
      CHECK(a.dominant == c.dominant);
    }
  }
}

TEST_SUITE("lexicon") {
  TEST_CASE("shipped lexicon") {
    const EmotionLexicon& lex = fixtures::resources().emotions;
    CHECK(lex.size() >= 500);
    CHECK_FALSE(lex.version().empty());
    CHECK(lex.find("happy") == Emotion::happy);
    CHECK_FALSE(lex.find("noon").has_value());
  }

  TEST_CASE("parse errors") {
    const char* bad[] = {"happy\tjoyful\n", "Happy\thappy\n", "happy\n", "happy\thappy\nhappy\tsad\n",
                         "two words\thappy\n", "x\tneutral\n"};
    for (const char* text : bad) {
      CAPTURE(text);
      std::istringstream in(text);
      CHECK_THROWS_AS(EmotionLexicon::parse(in), FormatError);
    }
    std::istringstream ok("# version: v9\n# note\nglad\thappy\n\n");
    const EmotionLexicon lex = EmotionLexicon::parse(ok);
    CHECK(lex.version() == "v9");
    CHECK(lex.size() == 1);
  }
}

TEST_SUITE("cross-tab") {
  TEST_CASE("all neutral and male") {
    std::vector<std::pair<EmotionScores, Gender>> items(5, item(Emotion::neutral, Gender::male));
    const EmotionCrossTab t = emotion_gender_report(items);
    CHECK(t.counts[5][0] == 0);
    CHECK(t.counts[5][1] == 5);
    CHECK(t.total() == 5);
  }

  TEST_CASE("hand tally of six items") {
    const std::vector<std::pair<EmotionScores, Gender>> items = {
        item(Emotion::fear, Gender::female),  item(Emotion::fear, Gender::female),
        item(Emotion::happy, Gender::female), item(Emotion::happy, Gender::male),
        item(Emotion::angry, Gender::male),   item(Emotion::neutral, Gender::female)};
    const EmotionCrossTab t = emotion_gender_report(items);
    CHECK(t.counts[static_cast<std::size_t>(Emotion::fear)] == std::array<std::uint64_t, 2>{2, 0});
    CHECK(t.counts[static_cast<std::size_t>(Emotion::happy)] == std::array<std::uint64_t, 2>{1, 1});
    CHECK(t.counts[static_cast<std::size_t>(Emotion::angry)] == std::array<std::uint64_t, 2>{0, 1});
    CHECK(t.counts[static_cast<std::size_t>(Emotion::sad)] == std::array<std::uint64_t, 2>{0, 0});
    CHECK(t.counts[static_cast<std::size_t>(Emotion::neutral)] == std::array<std::uint64_t, 2>{1, 0});
    CHECK(t.fraction(Emotion::happy, Gender::female) == 0.5);
    CHECK(t.fraction(Emotion::sad, Gender::female) == 0.0);
    CHECK(t.total() == 6);
    const std::string csv = render_crosstab_records(t);
    CHECK(csv.find("fear,2,0,1.0000,0.0000") != std::string::npos);
    CHECK(render_crosstab(t, "demo").find("neutral") != std::string::npos);
  }

  TEST_CASE("rows normalize and totals match") {
    std::mt19937_64 gen(33);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::pair<EmotionScores, Gender>> items;
      const std::size_t n = 1 + gen() % 60;
      for (std::size_t i = 0; i < n; ++i) {
        items.push_back(item(static_cast<Emotion>(gen() % 6), gen() % 2 ? Gender::female : Gender::male));
      }
      const EmotionCrossTab t = emotion_gender_report(items);
      CHECK(t.total() == n);
      for (int e = 0; e < 6; ++e) {
        const auto em = static_cast<Emotion>(e);
        if (t.row_total(em) == 0) continue;
        CHECK(t.fraction(em, Gender::female) + t.fraction(em, Gender::male) == doctest::Approx(1.0));
      }
    }
  }

  TEST_CASE("empty input") {
    CHECK_THROWS_AS(emotion_gender_report({}), EmptyInput);
  }
}
