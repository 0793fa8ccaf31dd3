#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tweetpol/types.hpp"

namespace tweetpol {

struct Account {
  std::string handle;
  Gender gender = Gender::female;
  Career career = Career::other;

  bool operator==(const Account&) const = default;
};

enum class TextFormat {
  bytes_literal,  // text fields shaped like b'...' are parsed, others verbatim
  decoded,        // every text field is already UTF-8
};

/// Labelled tweets plus their accounts. Record ids are the 0-based row
/// order of the tweets in the source file.
struct Corpus {
  std::vector<Account> accounts;
  std::vector<RawRecord> tweets;
  std::string digest;
  TextFormat format = TextFormat::bytes_literal;
};

/// Corpus file: `account<TAB>gender<TAB>career<TAB>text`, one tweet per line,
/// `#` comments, optional `# format: bytes-literal|text` header (default
/// bytes-literal). Accounts are collected in first-seen order; a handle that
/// appears with two genders or careers is a FormatError.
Corpus parse_corpus(std::string_view content);
Corpus load_corpus(const std::filesystem::path& path);
std::string render_corpus(const Corpus& corpus);

/// Accounts file: the corpus fields without the text.
std::vector<Account> parse_accounts(std::string_view content);
std::vector<Account> load_accounts(const std::filesystem::path& path);

/// Throws FormatError when a corpus account is missing from `accounts` or
/// disagrees with it.
void cross_check_accounts(const Corpus& corpus, std::span<const Account> accounts);

/// Rows: career; columns: female, male.
using CareerTable = std::array<std::array<std::size_t, 2>, kCareerCount>;
CareerTable career_table(std::span<const Account> accounts);

/// The 37 reference account slots by career (21 female, 16 male) with
/// placeholder handles.
std::vector<Account> reference_accounts();

struct DistributionSummary {
  std::size_t n_tweets = 0;
  double female_fraction = 0.0;
  double mean_len = 0.0;  // Unicode scalars
  std::size_t max_len = 0;
};

/// Lengths are summed as integers and divided once, so the result does not
/// depend on tweet order.
DistributionSummary summarize(std::span<const NormalizedTweet> tweets);

struct BalanceViolation {
  std::string statistic;  // "female_fraction" or "mean_len"
  double train_value = 0.0;
  double val_value = 0.0;
};

inline constexpr double kDefaultTolGender = 0.02;
inline constexpr double kDefaultTolLenRel = 0.05;

/// max_len is reported in summaries but never checked.
std::vector<BalanceViolation> check_balance(const DistributionSummary& train,
                                            const DistributionSummary& val,
                                            double tol_gender = kDefaultTolGender,
                                            double tol_len_rel = kDefaultTolLenRel);

struct Split {
  std::vector<TweetId> train;
  std::vector<TweetId> val;
  std::uint64_t seed = 0;
  double val_fraction = 0.25;

  bool operator==(const Split&) const = default;
};

/// Fisher-Yates shuffle of `ids` with Rng(seed); the first
/// floor(n * val_fraction) shuffled ids form the validation set.
/// Throws EmptyCorpus for no ids, InvalidArgument unless 0 < val_fraction < 1.
Split shuffle_split(std::span<const TweetId> ids, std::uint64_t seed,
                    double val_fraction);
Split shuffle_split(const Corpus& corpus, std::uint64_t seed, double val_fraction);

/// Account-level variant: accounts are shuffled and whole accounts move to
/// validation while they fit under floor(n * val_fraction) tweets, so no
/// author appears on both sides. |val| may fall short of the target.
Split shuffle_split_by_account(std::span<const std::pair<TweetId, std::string>> ids,
                               std::uint64_t seed, double val_fraction);

/// `id<TAB>train|val` records sorted by id, after a header carrying seed,
/// val_fraction and any extra `key: value` lines.
std::string render_split(const Split& split,
                         std::span<const std::pair<std::string, std::string>> extra_header = {});
Split parse_split(std::string_view content);

}  // namespace tweetpol
