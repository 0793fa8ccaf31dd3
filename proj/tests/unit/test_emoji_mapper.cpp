#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "tweetpol/bytes_literal.hpp"
#include "tweetpol/emoji_mapper.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/utf8.hpp"

using namespace tweetpol;
using fixtures::u8;

namespace {

const EmojiTable& table() { return fixtures::resources().emoji; }
const EmoticonLexicon& emoticons() { return fixtures::resources().emoticons; }

std::string emoji_text(std::string_view text) { return replace_emojis(text, table()).text; }
std::string emoticon_text(std::string_view text) { return replace_emoticons(text, emoticons()).text; }

// Random mixture of words, emoticons, table emoji, joiners, selectors,
// unknown pictographs, other non-ASCII letters and assorted whitespace.
std::string random_text(std::mt19937_64& gen) {
  static const std::vector<std::string> pieces = {
      "hello", "RT", "game", "x", "1:2", "a@b", ":)", ":-(", "xD", "<3", "</3", ">:(", ":'(",
      "D:", "8)", "(:", "^_^", ":", ")", "(", "-", ";", "_", "O_O", ":P",
      u8(U"\U0001F620"), u8(U"\U0001F609"), u8(U"\U0001F622"), u8(U"\U0001F468"),
      u8(U"\u2764"), u8(U"\U0001F3FD"), u8(U"\u200D"), u8(U"\uFE0F"), u8(U"\uFE0E"),
      u8(U"\U0001FAF8"), u8(U"\u00E9"), u8(U"\u4E2D"), u8(U"\u00A0"), " ", "  ", "\t", "\n"};
  std::string out;
  const std::size_t n = gen() % 12;
  for (std::size_t i = 0; i < n; ++i) out += pieces[gen() % pieces.size()];
  return out;
}

// Visible scalars that are not part of an emoji sequence: table keys and the
// joiners and variation selectors directly following them are excluded.
std::u32string non_table_scalars(std::string_view text) {
  std::u32string out;
  bool in_sequence = false;
  for (const char32_t cp : utf8::to_u32(text)) {
    if (table().contains(cp)) {
      in_sequence = true;
      continue;
    }
    if (in_sequence && (cp == 0x200D || cp == 0xFE0E || cp == 0xFE0F)) continue;
    in_sequence = false;
    if (!utf8::is_space(cp)) out.push_back(cp);
  }
  return out;
}

bool is_subsequence(std::u32string_view needle, std::u32string_view hay) {
  std::size_t j = 0;
  for (const char32_t c : hay) {
    if (j < needle.size() && needle[j] == c) ++j;
  }
  return j == needle.size();
}

}  // namespace

TEST_SUITE("emoji table") {
  TEST_CASE("five reference byte sequences substitute verbatim") {
    const std::pair<const char*, const char*> rows[] = {
        {R"(b'\xF0\x9F\x98\xA0')", "ANGRY FACE"},
        {R"(b'\xF0\x9F\x98\x89')", "WINKING FACE"},
        {R"(b'\xF0\x9F\x98\xA2')", "CRYING FACE"},
        {R"(b'\xF0\x9F\x98\xAB')", "TIRED FACE"},
        {R"(b'\xF0\x9F\x98\xB5')", "DIZZY FACE"},
    };
    for (const auto& [literal, name] : rows) {
      const DecodedText d = decode_utf8(parse_bytes_literal(literal));
      const SubstitutionResult r = replace_emojis(d.text, table());
      CHECK(r.text == name);
      CHECK(r.emoji_replaced == 1);
    }
  }

  TEST_CASE("shipped table is large enough and well formed") {
    CHECK(table().size() >= kMinEmojiEntries);
    CHECK_FALSE(table().version().empty());
  }

  TEST_CASE("parse accepts comments and versions") {
    std::istringstream in("# version: t1\n# comment\n\n1F620\tANGRY FACE\n2764\tHEAVY BLACK HEART\n");
    const EmojiTable t = EmojiTable::parse(in, 2);
    CHECK(t.size() == 2);
    CHECK(t.version() == "t1");
    REQUIRE(t.find(0x1F620) != nullptr);
    CHECK(*t.find(0x1F620) == "ANGRY FACE");
    CHECK(t.find(0x1F609) == nullptr);
  }

  TEST_CASE("parse rejects bad tables") {
    const char* bad[] = {
        "1F620\tANGRY FACE\n1F620\tANGRY FACE\n",  // duplicate
        "1F620\tangry face\n",                     // lowercase name
        "1F620\tANGRY FACE!\n",                    // punctuation
        "41\tLATIN A\n",                           // ASCII key
        "D800\tSURROGATE\n",                       //
        "XYZ\tBAD\n",                              // not hex
        "1F620 ANGRY FACE\n",                      // no tab
        "1F620\t\n",                               // empty name
    };
    for (const char* text : bad) {
      CAPTURE(text);
      std::istringstream in(text);
      CHECK_THROWS_AS(EmojiTable::parse(in, 1), FormatError);
    }
    std::istringstream small("1F620\tANGRY FACE\n");
    CHECK_THROWS_AS(EmojiTable::parse(small, kMinEmojiEntries), FormatError);
  }

  TEST_CASE("no name contains a table key") {
    // Names are ASCII and keys are not, so replaced text never re-triggers.
    std::istringstream in("1F620\tANGRY FACE\n");
    const EmojiTable t = EmojiTable::parse(in, 1);
    CHECK(replace_emojis(replace_emojis(u8(U"\U0001F620"), t).text, t).emoji_replaced == 0);
  }
}

TEST_SUITE("replace_emojis") {
  TEST_CASE("padded substitution") {
    const SubstitutionResult r = replace_emojis(u8(U"go \U0001F620 now"), table());
    CHECK(r.text == "go ANGRY FACE now");
    CHECK(r.emoji_replaced == 1);
  }

  TEST_CASE("identity without emoji") {
    const SubstitutionResult r = replace_emojis("no emoji here", table());
    CHECK(r.text == "no emoji here");
    CHECK(r.emoji_replaced == 0);
  }

  TEST_CASE("adjacent emoji become separate names") {
    const SubstitutionResult r = replace_emojis(u8(U"\U0001F622\U0001F62B"), table());
    CHECK(r.text == "CRYING FACE TIRED FACE");
    CHECK(r.emoji_replaced == 2);
  }

  TEST_CASE("emoji glued to words still separate") {
    CHECK(emoji_text(u8(U"hi\U0001F609there")) == "hi WINKING FACE there");
    CHECK(emoji_text(u8(U"  \U0001F609  ")) == "WINKING FACE");
    CHECK(emoji_text(u8(U"a  b")) == "a  b");  // untouched whitespace stays
  }

  TEST_CASE("joiner sequences are replaced per scalar") {
    const SubstitutionResult r =
        replace_emojis(u8(U"\U0001F468\u200D\U0001F469\u200D\U0001F467"), table());
    CHECK(r.text == "MAN WOMAN GIRL");
    CHECK(r.emoji_replaced == 3);
    CHECK(emoji_text(u8(U"\u2764\uFE0F ok")) == "HEAVY BLACK HEART ok");
    CHECK(emoji_text(u8(U"\U0001F44D\U0001F3FD")) == "THUMBS UP SIGN EMOJI MODIFIER FITZPATRICK TYPE-4");
  }

  TEST_CASE("joiners away from emoji are kept") {
    const std::string text = u8(U"a\u200Db\uFE0F");
    CHECK(emoji_text(text) == text);
  }

  TEST_CASE("unknown pictographs pass through and are counted") {
    const std::string text = u8(U"new \U0001FAF8 thing");
    CHECK(emoji_text(text) == text);
    CHECK(count_unknown_emoji_like(text, table()) == 1);
    CHECK(count_unknown_emoji_like(u8(U"\U0001F620"), table()) == 0);
  }

  TEST_CASE("strip and keep modes") {
    const std::string text = u8(U"go \U0001F620 now a\U0001F620b");
    const SubstitutionResult s = apply_emojis(text, table(), SymbolMode::strip);
    CHECK(s.text == "go now a b");
    CHECK(s.emoji_replaced == 2);
    const SubstitutionResult k = apply_emojis(text, table(), SymbolMode::keep_raw);
    CHECK(k.text == text);
    CHECK(k.emoji_replaced == 0);
    CHECK(apply_emojis(u8(U"\U0001F620\u200D\U0001F620"), table(), SymbolMode::strip).text.empty());
  }
}

TEST_SUITE("replace_emoticons") {
  TEST_CASE("delimited glyphs are replaced") {
    const SubstitutionResult r = replace_emoticons("great :)", emoticons());
    CHECK(r.text == "great HAPPY FACE EMOTICON");
    CHECK(r.emoticons_replaced == 1);
  }

  TEST_CASE("glyphs inside tokens are left alone") {
    const SubstitutionResult r = replace_emoticons("ratio 1:2", emoticons());
    CHECK(r.text == "ratio 1:2");
    CHECK(r.emoticons_replaced == 0);
    CHECK(emoticon_text("a:) b") == "a:) b");
    CHECK(emoticon_text(":)b") == ":)b");
    CHECK(emoticon_text("http://x.org/") == "http://x.org/");
  }

  TEST_CASE("repeated glyphs") {
    const SubstitutionResult r = replace_emoticons(":-( :-(", emoticons());
    CHECK(r.text == "SAD FACE EMOTICON SAD FACE EMOTICON");
    CHECK(r.emoticons_replaced == 2);
  }

  TEST_CASE("longest match wins") {
    CHECK(emoticon_text(">:(") == "ANGRY FACE EMOTICON");
    CHECK(emoticon_text("</3") == "BROKEN HEART EMOTICON");
    CHECK(emoticon_text("<3") == "HEART EMOTICON");
  }

  TEST_CASE("non-ASCII neighbours delimit") {
    CHECK(emoticon_text(u8(U"\U0001F620:)")) == u8(U"\U0001F620 HAPPY FACE EMOTICON"));
    CHECK(emoticon_text(u8(U":)\u00E9")) == u8(U"HAPPY FACE EMOTICON \u00E9"));
  }

  TEST_CASE("strip and keep modes") {
    CHECK(apply_emoticons("ok :) go", emoticons(), SymbolMode::strip).text == "ok go");
    CHECK(apply_emoticons("ok :) go", emoticons(), SymbolMode::keep_raw).text == "ok :) go");
  }

  TEST_CASE("lexicon invariants") {
    CHECK(emoticons().size() >= 40);
    CHECK_FALSE(emoticons().version().empty());
    CHECK(emoticons().max_key_length() <= 5);
    const char* bad[] = {
        ":)\tHAPPY\n:)\tHAPPY\n",  // duplicate
        ":\tCOLON\n",               // too short
        ":-)))\tA\n:-))))\tB\n",    // too long
        ": )\tSPACED\n",            // contains a space
        "XD\tLAUGH\nQ\tXD WORD\n",  // name word equals a key
        ":)\thappy\n",              // lowercase name
    };
    for (const char* text : bad) {
      CAPTURE(text);
      std::istringstream in(text);
      CHECK_THROWS_AS(EmoticonLexicon::parse(in), FormatError);
    }
  }
}

TEST_SUITE("substitution properties") {
  TEST_CASE("idempotence, conservation, order and commutation on random text") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 5000; ++trial) {
      const std::string text = random_text(gen);
      CAPTURE(text);
      for (const SymbolMode mode : {SymbolMode::replace_with_text, SymbolMode::strip}) {
        const SubstitutionResult e = apply_emojis(text, table(), mode);
        const SubstitutionResult t = apply_emoticons(text, emoticons(), mode);

        CHECK(replace_emojis(e.text, table()).emoji_replaced == 0);
        CHECK(replace_emoticons(t.text, emoticons()).emoticons_replaced == 0);

        std::size_t keys = 0;
        for (const char32_t cp : utf8::to_u32(text)) keys += table().contains(cp);
        CHECK(e.emoji_replaced == keys);

        CHECK(is_subsequence(non_table_scalars(text), utf8::to_u32(e.text)));
        CHECK(utf8::is_valid(e.text));

        const std::string emoji_first = apply_emoticons(e.text, emoticons(), mode).text;
        const std::string emoticon_first = apply_emojis(t.text, table(), mode).text;
        CHECK(emoji_first == emoticon_first);
      }
    }
  }
}
