#include "tweetpol/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "tweetpol/bytes_literal.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/rng.hpp"
#include "tweetpol/text_io.hpp"
#include "tweetpol/utf8.hpp"

namespace tweetpol {
namespace {

constexpr std::array<std::string_view, 96> kWords = {
    "the", "new", "album", "show", "tonight", "tour", "video", "today", "check", "out",
    "live", "thanks", "everyone", "fans", "watch", "this", "week", "studio", "stage", "city",
    "night", "morning", "interview", "episode", "season", "premiere", "ticket", "link", "bio", "film",
    "song", "single", "radio", "podcast", "team", "family", "friends", "coffee", "flight", "hotel",
    "back", "home", "soon", "just", "got", "we", "you", "our", "my", "with",
    "for", "and", "at", "on", "in", "is", "are", "can", "not", "wait",
    "see", "all", "time", "big", "little", "day", "year", "first", "last", "next",
    "photo", "shoot", "dinner", "rehearsal", "crew", "set", "music", "magazine", "cover", "news",
    "love", "great", "happy", "sad", "tired", "wow", "crazy", "scared", "angry", "amazing",
    "proud", "miss", "excited", "sorry", "hate", "worried"};

// Emoji shared by both genders at the same rate.
constexpr std::array<char32_t, 12> kSharedEmoji = {
    0x1F602, 0x1F609, 0x1F622, 0x1F620, 0x1F62B, 0x1F635,
    0x1F389, 0x1F44D, 0x1F64F, 0x2764, 0x1F60A, 0x1F64C};
constexpr std::array<char32_t, 6> kFemaleEmoji = {
    0x1F496, 0x1F338, 0x1F485, 0x1F457, 0x1F484, 0x1F98B};
constexpr std::array<char32_t, 6> kMaleEmoji = {
    0x26BD, 0x1F3C8, 0x1F37A, 0x1F4AA, 0x1F3AE, 0x1F3C0};

constexpr std::array<std::string_view, 8> kSharedHandles = {
    "Spotify", "YouTube", "nytimes", "TheEllenShow", "jimmyfallon", "netflix", "BBCNews",
    "Grammys"};
constexpr std::array<std::string_view, 6> kFemaleHandles = {
    "VogueMagazine", "glamour", "ELLEmagazine", "Sephora", "womenshealth", "Cosmopolitan"};
constexpr std::array<std::string_view, 6> kMaleHandles = {
    "ESPN", "NFL", "SportsCenter", "MensHealthMag", "GQMagazine", "NBA"};

constexpr std::array<std::string_view, 8> kSharedEmoticons = {
    ":)", ":D", ";)", ":(", ":P", "<3", ":O", "xD"};

constexpr std::array<std::string_view, 6> kFemaleTokens = {
    "skincare", "bridesmaid", "mascara", "sundress", "manicure", "girlsnight"};
constexpr std::array<std::string_view, 6> kMaleTokens = {
    "touchdown", "beard", "barbecue", "fantasyleague", "workout", "boysnight"};

template <class Pool>
auto pick(const Pool& pool, Rng& rng) {
  return pool[static_cast<std::size_t>(rng.below(pool.size()))];
}

std::string emoji_token(char32_t cp) {
  std::string s;
  utf8::append(s, cp);
  return s;
}

// Splits `total` across `weights` by largest remainder.
std::vector<std::size_t> apportion(std::size_t total, const std::vector<double>& weights) {
  double sum = 0.0;
  for (const double w : weights) sum += w;
  std::vector<std::size_t> out(weights.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(total) * weights[i] / sum;
    out[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += out[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[remainders[k].second];
  return out;
}

std::vector<Account> make_accounts(std::size_t n_female, std::size_t n_male) {
  const std::vector<Account> reference = reference_accounts();
  std::vector<Account> female_pattern;
  std::vector<Account> male_pattern;
  for (const Account& a : reference) {
    (a.gender == Gender::female ? female_pattern : male_pattern).push_back(a);
  }
  std::vector<Account> accounts;
  const auto extend = [&](const std::vector<Account>& pattern, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      Account a = pattern[k % pattern.size()];
      if (k >= pattern.size()) a.handle += "_r" + std::to_string(k / pattern.size());
      accounts.push_back(std::move(a));
    }
  };
  extend(female_pattern, n_female);
  extend(male_pattern, n_male);
  return accounts;
}

std::string make_text(Gender gender, SignalProfile profile, double signal_rate, Rng& rng) {
  std::vector<std::string> tokens;
  const std::size_t n_words = 4 + static_cast<std::size_t>(rng.below(18));
  for (std::size_t i = 0; i < n_words; ++i) tokens.emplace_back(pick(kWords, rng));

  const auto insert = [&](std::string token) {
    const auto at = static_cast<std::ptrdiff_t>(rng.below(tokens.size() + 1));
    tokens.insert(tokens.begin() + at, std::move(token));
  };
  if (rng.bernoulli(0.3)) insert("@" + std::string(pick(kSharedHandles, rng)));
  if (rng.bernoulli(0.3)) insert(emoji_token(pick(kSharedEmoji, rng)));
  if (rng.bernoulli(0.15)) insert(std::string(pick(kSharedEmoticons, rng)));

  const bool female = gender == Gender::female;
  if (profile != SignalProfile::none && rng.bernoulli(signal_rate)) {
    switch (profile) {
      case SignalProfile::emoji:
        insert(emoji_token(female ? pick(kFemaleEmoji, rng) : pick(kMaleEmoji, rng)));
        break;
      case SignalProfile::mention:
        insert("@" + std::string(female ? pick(kFemaleHandles, rng) : pick(kMaleHandles, rng)));
        break;
      case SignalProfile::token:
        insert(std::string(female ? pick(kFemaleTokens, rng) : pick(kMaleTokens, rng)));
        break;
      case SignalProfile::none:
        break;
    }
  }

  std::string text;
  for (const std::string& t : tokens) {
    if (!text.empty()) text.push_back(' ');
    text += t;
  }
  return text;
}

}  // namespace

std::string_view to_string(SignalProfile p) {
  switch (p) {
    case SignalProfile::none: return "none";
    case SignalProfile::emoji: return "emoji";
    case SignalProfile::mention: return "mention";
    case SignalProfile::token: return "token";
  }
  return "none";
}

std::optional<SignalProfile> parse_signal_profile(std::string_view s) {
  if (s == "none") return SignalProfile::none;
  if (s == "emoji" || s == "emoji-signal") return SignalProfile::emoji;
  if (s == "mention" || s == "mention-signal") return SignalProfile::mention;
  if (s == "token" || s == "token-signal") return SignalProfile::token;
  return std::nullopt;
}

Corpus generate_synthetic_corpus(const SyntheticOptions& options) {
  if (options.n_accounts < 2) throw InvalidArgument("synthetic corpus needs >= 2 accounts");
  if (options.n_tweets < 2) throw InvalidArgument("synthetic corpus needs >= 2 tweets");
  const auto in_open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_open_unit(options.female_share) || !in_open_unit(options.female_account_share)) {
    throw InvalidArgument("gender shares must lie strictly between 0 and 1");
  }
  if (!(options.signal_rate >= 0.0 && options.signal_rate <= 1.0) ||
      !(options.retweet_rate >= 0.0 && options.retweet_rate < 1.0)) {
    throw InvalidArgument("signal_rate must lie in [0, 1] and retweet_rate in [0, 1)");
  }
  if (options.min_account_tweets == 0 || options.max_account_tweets < options.min_account_tweets) {
    throw InvalidArgument("account tweet range must satisfy 1 <= min <= max");
  }

  Rng rng(options.seed);
  const auto n_female_accounts = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(static_cast<double>(options.n_accounts) *
                                            options.female_account_share)),
      1, options.n_accounts - 1);
  const auto n_female_tweets = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(static_cast<double>(options.n_tweets) *
                                            options.female_share)),
      1, options.n_tweets - 1);

  Corpus corpus;
  corpus.format = TextFormat::bytes_literal;
  corpus.accounts = make_accounts(n_female_accounts, options.n_accounts - n_female_accounts);

  const double log_lo = std::log(static_cast<double>(options.min_account_tweets));
  const double log_hi = std::log(static_cast<double>(options.max_account_tweets));
  std::vector<double> weights(corpus.accounts.size());
  for (double& w : weights) w = std::exp(log_lo + (log_hi - log_lo) * rng.uniform());

  std::vector<std::size_t> counts(corpus.accounts.size(), 0);
  for (const Gender g : {Gender::female, Gender::male}) {
    std::vector<std::size_t> members;
    std::vector<double> member_weights;
    for (std::size_t i = 0; i < corpus.accounts.size(); ++i) {
      if (corpus.accounts[i].gender == g) {
        members.push_back(i);
        member_weights.push_back(weights[i]);
      }
    }
    const std::size_t total =
        g == Gender::female ? n_female_tweets : options.n_tweets - n_female_tweets;
    const auto shares = apportion(total, member_weights);
    for (std::size_t k = 0; k < members.size(); ++k) counts[members[k]] = shares[k];
  }

  for (std::size_t a = 0; a < corpus.accounts.size(); ++a) {
    const Account& account = corpus.accounts[a];
    for (std::size_t k = 0; k < counts[a]; ++k) {
      std::string text = make_text(account.gender, options.profile, options.signal_rate, rng);
      if (rng.bernoulli(options.retweet_rate)) {
        text = "RT @" + std::string(pick(kSharedHandles, rng)) + ": " + text;
      }
      RawRecord rec;
      rec.id = corpus.tweets.size();
      rec.account = account.handle;
      rec.gender = account.gender;
      rec.career = account.career;
      rec.text = quote_bytes_literal(std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
      rec.is_literal = true;
      corpus.tweets.push_back(std::move(rec));
    }
  }
  // Empty accounts carry no rows and would not survive a file round trip.
  std::erase_if(corpus.accounts, [&](const Account& a) {
    return std::none_of(corpus.tweets.begin(), corpus.tweets.end(),
                        [&](const RawRecord& r) { return r.account == a.handle; });
  });
  corpus.digest = io::digest_hex(render_corpus(corpus));
  return corpus;
}

}  // namespace tweetpol
