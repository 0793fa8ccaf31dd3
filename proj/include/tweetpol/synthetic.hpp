#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "tweetpol/dataset.hpp"

namespace tweetpol {

/// Which feature family carries the gender signal in a synthetic corpus.
enum class SignalProfile { none, emoji, mention, token };

std::string_view to_string(SignalProfile p);
std::optional<SignalProfile> parse_signal_profile(std::string_view s);

struct SyntheticOptions {
  std::uint64_t seed = 0;
  std::size_t n_accounts = 37;
  std::size_t n_tweets = 10000;
  SignalProfile profile = SignalProfile::none;
  double female_share = 0.5;             // tweet level, exact up to rounding
  double female_account_share = 21.0 / 37.0;
  double signal_rate = 0.6;              // chance a tweet carries its class marker
  double retweet_rate = 0.05;
  std::size_t min_account_tweets = 20;   // per-account volume is log-uniform
  std::size_t max_account_tweets = 4000; // between these before rescaling
};

/// Bytes-literal corpus of account-skewed tweets. Both genders draw text
/// from the same distribution except for the family chosen by `profile`:
/// class-specific emoji, mentioned handles or tokens, inserted with
/// probability `signal_rate`. Deterministic in the options.
/// Throws InvalidArgument for fewer than 2 accounts or tweets, or shares
/// outside (0, 1).
Corpus generate_synthetic_corpus(const SyntheticOptions& options);

}  // namespace tweetpol
