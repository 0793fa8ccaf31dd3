#include "tweetpol/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "tweetpol/bytes_literal.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/rng.hpp"
#include "tweetpol/text_io.hpp"
#include "tweetpol/utf8.hpp"

namespace tweetpol {
namespace {

template <class Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    fn(io::chomp(content.substr(start, end - start)), line_no);
    start = end + 1;
  }
}

std::string where(std::string_view file, std::size_t line_no) {
  return std::string(file) + " line " + std::to_string(line_no) + ": ";
}

Account parse_account_fields(std::span<const std::string_view> fields,
                             std::string_view file, std::size_t line_no) {
  Account a;
  a.handle = std::string(io::trim(fields[0]));
  if (a.handle.empty()) throw FormatError(where(file, line_no) + "empty account");
  const auto gender = parse_gender(io::trim(fields[1]));
  if (!gender) {
    throw FormatError(where(file, line_no) + "bad gender '" + std::string(fields[1]) + "'");
  }
  a.gender = *gender;
  const auto career = parse_career(io::trim(fields[2]));
  if (!career) {
    throw FormatError(where(file, line_no) + "bad career '" + std::string(fields[2]) + "'");
  }
  a.career = *career;
  return a;
}

}  // namespace

Corpus parse_corpus(std::string_view content) {
  Corpus corpus;
  corpus.digest = io::digest_hex(content);
  std::unordered_map<std::string, std::size_t> account_index;
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (io::trim(line).empty()) return;
    if (line.front() == '#') {
      if (auto fmt = io::comment_value(line, "format")) {
        if (*fmt == "bytes-literal") {
          corpus.format = TextFormat::bytes_literal;
        } else if (*fmt == "text") {
          corpus.format = TextFormat::decoded;
        } else {
          throw FormatError(where("corpus", line_no) + "unknown format '" + *fmt + "'");
        }
      }
      return;
    }
    const auto fields = io::split_tabs(line);
    if (fields.size() != 4) {
      throw FormatError(where("corpus", line_no) +
                        "expected account<TAB>gender<TAB>career<TAB>text");
    }
    const Account account = parse_account_fields(fields, "corpus", line_no);
    const auto [it, inserted] =
        account_index.emplace(account.handle, corpus.accounts.size());
    if (inserted) {
      corpus.accounts.push_back(account);
    } else if (!(corpus.accounts[it->second] == account)) {
      throw FormatError(where("corpus", line_no) + "account '" + account.handle +
                        "' changes gender or career");
    }
    RawRecord rec;
    rec.id = corpus.tweets.size();
    rec.account = account.handle;
    rec.gender = account.gender;
    rec.career = account.career;
    rec.text = std::string(fields[3]);
    rec.is_literal = corpus.format == TextFormat::bytes_literal &&
                     looks_like_bytes_literal(rec.text);
    corpus.tweets.push_back(std::move(rec));
  });
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(io::read_file(path));
}

std::string render_corpus(const Corpus& corpus) {
  std::string out = "# format: ";
  out += corpus.format == TextFormat::bytes_literal ? "bytes-literal" : "text";
  out += "\n";
  for (const RawRecord& r : corpus.tweets) {
    if (r.text.find_first_of("\t\n") != std::string::npos) {
      throw FormatError("tweet " + std::to_string(r.id) +
                        " contains a tab or newline and cannot be written verbatim");
    }
    out += r.account;
    out += '\t';
    out += to_string(r.gender);
    out += '\t';
    out += to_string(r.career);
    out += '\t';
    out += r.text;
    out += '\n';
  }
  return out;
}

std::vector<Account> parse_accounts(std::string_view content) {
  std::vector<Account> accounts;
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (io::trim(line).empty() || line.front() == '#') return;
    const auto fields = io::split_tabs(line);
    if (fields.size() != 3) {
      throw FormatError(where("accounts", line_no) +
                        "expected account<TAB>gender<TAB>career");
    }
    accounts.push_back(parse_account_fields(fields, "accounts", line_no));
  });
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    for (std::size_t j = i + 1; j < accounts.size(); ++j) {
      if (accounts[i].handle == accounts[j].handle) {
        throw FormatError("accounts: duplicate handle '" + accounts[i].handle + "'");
      }
    }
  }
  return accounts;
}

std::vector<Account> load_accounts(const std::filesystem::path& path) {
  return parse_accounts(io::read_file(path));
}

void cross_check_accounts(const Corpus& corpus, std::span<const Account> accounts) {
  std::unordered_map<std::string_view, const Account*> by_handle;
  for (const Account& a : accounts) by_handle.emplace(a.handle, &a);
  for (const Account& a : corpus.accounts) {
    const auto it = by_handle.find(a.handle);
    if (it == by_handle.end()) {
      throw FormatError("corpus account '" + a.handle + "' missing from accounts file");
    }
    if (!(*it->second == a)) {
      throw FormatError("corpus account '" + a.handle + "' disagrees with accounts file");
    }
  }
}

CareerTable career_table(std::span<const Account> accounts) {
  CareerTable table{};
  for (const Account& a : accounts) {
    ++table[static_cast<std::size_t>(a.career)][a.gender == Gender::female ? 0 : 1];
  }
  return table;
}

std::vector<Account> reference_accounts() {
  struct Row {
    Career career;
    int female;
    int male;
  };
  static constexpr Row kRows[] = {
      {Career::singer, 13, 9},
      {Career::actor_actress, 5, 1},
      {Career::media_personality, 3, 4},
      {Career::athlete_sport_analyst, 0, 2},
  };
  std::vector<Account> accounts;
  for (const Gender g : {Gender::female, Gender::male}) {
    int serial = 0;
    for (const Row& row : kRows) {
      const int count = g == Gender::female ? row.female : row.male;
      for (int k = 0; k < count; ++k) {
        std::string handle = g == Gender::female ? "f_" : "m_";
        handle += to_string(row.career);
        handle += "_";
        handle += std::to_string(++serial);
        accounts.push_back({std::move(handle), g, row.career});
      }
    }
  }
  return accounts;
}

DistributionSummary summarize(std::span<const NormalizedTweet> tweets) {
  DistributionSummary s;
  s.n_tweets = tweets.size();
  if (tweets.empty()) return s;
  std::size_t female = 0;
  std::uint64_t total_len = 0;
  for (const NormalizedTweet& t : tweets) {
    if (t.gender == Gender::female) ++female;
    const std::size_t len = utf8::length(t.text);
    total_len += len;
    s.max_len = std::max(s.max_len, len);
  }
  s.female_fraction = static_cast<double>(female) / static_cast<double>(s.n_tweets);
  s.mean_len = static_cast<double>(total_len) / static_cast<double>(s.n_tweets);
  return s;
}

std::vector<BalanceViolation> check_balance(const DistributionSummary& train,
                                            const DistributionSummary& val,
                                            double tol_gender, double tol_len_rel) {
  std::vector<BalanceViolation> out;
  if (std::fabs(train.female_fraction - val.female_fraction) > tol_gender) {
    out.push_back({"female_fraction", train.female_fraction, val.female_fraction});
  }
  if (std::fabs(train.mean_len - val.mean_len) > tol_len_rel * train.mean_len) {
    out.push_back({"mean_len", train.mean_len, val.mean_len});
  }
  return out;
}

namespace {

void validate_split_args(std::size_t n, double val_fraction) {
  if (n == 0) throw EmptyCorpus("cannot split an empty corpus");
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw InvalidArgument("val_fraction must lie strictly between 0 and 1");
  }
}

std::size_t val_target(std::size_t n, double val_fraction) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * val_fraction));
}

}  // namespace

Split shuffle_split(std::span<const TweetId> ids, std::uint64_t seed,
                    double val_fraction) {
  validate_split_args(ids.size(), val_fraction);
  std::vector<TweetId> order(ids.begin(), ids.end());
  Rng rng(seed);
  shuffle(std::span<TweetId>(order), rng);
  const std::size_t n_val = val_target(order.size(), val_fraction);
  Split split;
  split.seed = seed;
  split.val_fraction = val_fraction;
  split.val.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
  return split;
}

Split shuffle_split(const Corpus& corpus, std::uint64_t seed, double val_fraction) {
  std::vector<TweetId> ids;
  ids.reserve(corpus.tweets.size());
  for (const RawRecord& r : corpus.tweets) ids.push_back(r.id);
  return shuffle_split(ids, seed, val_fraction);
}

Split shuffle_split_by_account(std::span<const std::pair<TweetId, std::string>> ids,
                               std::uint64_t seed, double val_fraction) {
  validate_split_args(ids.size(), val_fraction);
  std::vector<std::string> accounts;
  std::map<std::string, std::vector<TweetId>> members;
  for (const auto& [id, account] : ids) {
    auto& bucket = members[account];
    if (bucket.empty()) accounts.push_back(account);
    bucket.push_back(id);
  }
  Rng rng(seed);
  shuffle(std::span<std::string>(accounts), rng);
  const std::size_t target = val_target(ids.size(), val_fraction);
  Split split;
  split.seed = seed;
  split.val_fraction = val_fraction;
  for (const std::string& account : accounts) {
    const auto& bucket = members[account];
    auto& side = split.val.size() + bucket.size() <= target ? split.val : split.train;
    side.insert(side.end(), bucket.begin(), bucket.end());
  }
  return split;
}

std::string render_split(const Split& split,
                         std::span<const std::pair<std::string, std::string>> extra_header) {
  std::string out = "# split\n";
  out += "# seed: " + std::to_string(split.seed) + "\n";
  out += "# val_fraction: " + io::exact(split.val_fraction) + "\n";
  for (const auto& [key, value] : extra_header) out += "# " + key + ": " + value + "\n";
  std::vector<std::pair<TweetId, bool>> rows;
  rows.reserve(split.train.size() + split.val.size());
  for (const TweetId id : split.train) rows.emplace_back(id, false);
  for (const TweetId id : split.val) rows.emplace_back(id, true);
  std::sort(rows.begin(), rows.end());
  for (const auto& [id, is_val] : rows) {
    out += std::to_string(id);
    out += is_val ? "\tval\n" : "\ttrain\n";
  }
  return out;
}

Split parse_split(std::string_view content) {
  Split split;
  bool have_seed = false;
  bool have_fraction = false;
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (io::trim(line).empty()) return;
    if (line.front() == '#') {
      if (auto v = io::comment_value(line, "seed")) {
        split.seed = io::parse_u64(*v, "split seed");
        have_seed = true;
      } else if (auto f = io::comment_value(line, "val_fraction")) {
        split.val_fraction = io::parse_double(*f, "split val_fraction");
        have_fraction = true;
      }
      return;
    }
    const auto fields = io::split_tabs(line);
    if (fields.size() != 2) throw FormatError(where("split", line_no) + "expected id<TAB>train|val");
    const TweetId id = io::parse_u64(fields[0], "split id");
    if (fields[1] == "train") {
      split.train.push_back(id);
    } else if (fields[1] == "val") {
      split.val.push_back(id);
    } else {
      throw FormatError(where("split", line_no) + "tag must be train or val");
    }
  });
  if (!have_seed || !have_fraction) {
    throw FormatError("split file header lacks seed or val_fraction");
  }
  return split;
}

}  // namespace tweetpol
