#include "tweetpol/ablation.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <set>
#include <unordered_map>

#include "tweetpol/errors.hpp"
#include "tweetpol/text_io.hpp"

namespace tweetpol {
namespace {

// Runs fn(i) for i in [0, n), concurrently when asked. Results land in
// index order so scheduling cannot change the output.
template <class Fn>
auto map_indexed(std::size_t n, bool parallel, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> out;
  out.reserve(n);
  if (!parallel || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<Result>> futures;
  futures.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    futures.push_back(std::async(std::launch::async, [&fn, i] { return fn(i); }));
  }
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

void add_stats(TweetStats& into, const TweetStats& s) {
  into.emoji_replaced += s.emoji_replaced;
  into.emoticons_replaced += s.emoticons_replaced;
  into.mentions_stripped += s.mentions_stripped;
  into.decode_replacements += s.decode_replacements;
  into.unknown_emoji_like += s.unknown_emoji_like;
}

std::string describe(const Hyperparams& hp) {
  return "dims=" + std::to_string(hp.dims) + " word_ngrams=" +
         std::to_string(hp.word_ngrams.min) + "-" + std::to_string(hp.word_ngrams.max) +
         " char_ngrams=" + std::to_string(hp.char_ngrams.min) + "-" +
         std::to_string(hp.char_ngrams.max) + " lr=" + io::exact(hp.lr) +
         " epochs=" + std::to_string(hp.epochs) + " l2=" + io::exact(hp.l2) +
         " dropout=" + io::exact(hp.dropout) + " seed=" + std::to_string(hp.seed);
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.grid.empty()) throw InvalidArgument("experiment grid is empty");
  std::set<std::string> names;
  std::set<std::string> slugs;
  for (const NamedConfig& c : spec.grid) {
    if (!names.insert(c.name).second) {
      throw InvalidArgument("duplicate grid config name '" + c.name + "'");
    }
    if (!slugs.insert(slug(c.name)).second) {
      throw InvalidArgument("grid config names collide after slugging: '" + c.name + "'");
    }
  }
  if (spec.max_attempts == 0) throw InvalidArgument("max_attempts must be >= 1");
  if (spec.backend == Backend::baseline) spec.hp.validate();
}

}  // namespace

Resources Resources::load(const std::filesystem::path& data_dir) {
  return Resources{EmojiTable::load(data_dir / "emoji_table.tsv"),
                   EmoticonLexicon::load(data_dir / "emoticons.tsv"),
                   EmotionLexicon::load(data_dir / "emotion_lexicon.tsv")};
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("TWEETPOL_DATA_DIR"); env && *env) return env;
  return TWEETPOL_DATA_DIR;
}

std::string_view to_string(Backend b) {
  return b == Backend::baseline ? "baseline" : "external_predictions";
}

std::string config_digest(const NormalizationConfig& config) {
  return io::digest_hex(describe(config));
}

PreparedGrid prepare_grid(const ExperimentSpec& spec, const Corpus& corpus,
                          const Resources& resources) {
  validate_spec(spec);
  if (corpus.tweets.empty()) throw EmptyCorpus("corpus has no tweets");

  const std::size_t n_records = corpus.tweets.size();
  const std::size_t n_configs = spec.grid.size();
  std::vector<NormalizedCorpus> normalized = map_indexed(n_configs, spec.parallel, [&](std::size_t c) {
    return normalize_all(corpus.tweets, spec.grid[c].config, resources.emoji, resources.emoticons);
  });

  // Position of every record in each config's output, or npos when dropped.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::unordered_map<TweetId, std::size_t> row_of;
  for (std::size_t r = 0; r < n_records; ++r) row_of.emplace(corpus.tweets[r].id, r);
  std::vector<std::vector<std::size_t>> where(n_configs, std::vector<std::size_t>(n_records, npos));
  for (std::size_t c = 0; c < n_configs; ++c) {
    for (std::size_t k = 0; k < normalized[c].tweets.size(); ++k) {
      where[c][row_of.at(normalized[c].tweets[k].id)] = k;
    }
  }

  std::vector<TweetId> common;
  std::vector<std::pair<TweetId, std::string>> common_accounts;
  bool genders[2] = {false, false};
  for (std::size_t r = 0; r < n_records; ++r) {
    const bool everywhere = std::all_of(where.begin(), where.end(),
                                        [r](const auto& w) { return w[r] != npos; });
    if (!everywhere) continue;
    common.push_back(corpus.tweets[r].id);
    common_accounts.emplace_back(corpus.tweets[r].id, corpus.tweets[r].account);
    genders[corpus.tweets[r].gender == Gender::female ? 0 : 1] = true;
  }
  if (common.empty()) throw EmptyCorpus("no tweet survives normalization under every config");
  if (!genders[0] || !genders[1]) {
    throw SingleClassCorpus("corpus needs tweets from both genders after cleaning");
  }

  PreparedGrid grid;
  grid.seed_requested = spec.seed;
  grid.n_records = n_records;
  grid.n_common = common.size();
  grid.corpus_digest = corpus.digest;
  grid.configs.resize(n_configs);
  for (std::size_t c = 0; c < n_configs; ++c) {
    PreparedConfig& pc = grid.configs[c];
    pc.named = spec.grid[c];
    pc.dropped_retweets = normalized[c].dropped_retweets;
    pc.dropped_empty = normalized[c].dropped_empty;
    pc.excluded = normalized[c].tweets.size() - common.size();
  }

  const auto fill = [&](const Split& split) {
    for (std::size_t c = 0; c < n_configs; ++c) {
      PreparedConfig& pc = grid.configs[c];
      pc.train.clear();
      pc.val.clear();
      for (const TweetId id : split.train) pc.train.push_back(normalized[c].tweets[where[c][row_of.at(id)]]);
      for (const TweetId id : split.val) pc.val.push_back(normalized[c].tweets[where[c][row_of.at(id)]]);
      pc.train_summary = summarize(pc.train);
      pc.val_summary = summarize(pc.val);
    }
  };

  std::string last_failure;
  for (unsigned attempt = 0; attempt < spec.max_attempts; ++attempt) {
    const std::uint64_t seed = spec.seed + attempt;
    Split split = spec.account_level_split
                      ? shuffle_split_by_account(common_accounts, seed, spec.val_fraction)
                      : shuffle_split(common, seed, spec.val_fraction);
    fill(split);
    last_failure.clear();
    for (const PreparedConfig& pc : grid.configs) {
      for (const BalanceViolation& v :
           check_balance(pc.train_summary, pc.val_summary, spec.tol_gender, spec.tol_len_rel)) {
        last_failure += "[" + pc.named.name + "] " + v.statistic + " train=" +
                        io::fixed(v.train_value, 4) + " val=" + io::fixed(v.val_value, 4) + "; ";
      }
    }
    if (last_failure.empty()) {
      grid.split = std::move(split);
      grid.attempts = attempt + 1;
      for (PreparedConfig& pc : grid.configs) {
        for (const auto* side : {&pc.train, &pc.val}) {
          for (const NormalizedTweet& t : *side) add_stats(pc.totals, t.stats);
        }
      }
      return grid;
    }
  }
  throw BalanceRetriesExhausted("no balanced split after " + std::to_string(spec.max_attempts) +
                                " seeds starting at " + std::to_string(spec.seed) +
                                "; last: " + last_failure);
}

ConfigResult score_config(const PreparedConfig& prepared,
                          std::span<const std::pair<TweetId, double>> predictions,
                          const Resources& resources, double threshold) {
  const std::string& name = prepared.named.name;
  std::unordered_map<TweetId, double> by_id;
  for (const auto& [id, p] : predictions) {
    if (!by_id.emplace(id, p).second) {
      throw FormatError("[" + name + "] duplicate prediction for id " + std::to_string(id));
    }
  }
  ConfigResult result;
  result.prepared = prepared;
  std::vector<double> probs;
  std::vector<int> labels;
  std::vector<std::pair<EmotionScores, Gender>> emotions;
  for (const NormalizedTweet& t : prepared.val) {
    const auto it = by_id.find(t.id);
    if (it == by_id.end()) {
      throw FormatError("[" + name + "] no prediction for val id " + std::to_string(t.id));
    }
    const double p = it->second;
    if (!(p >= 0.0 && p <= 1.0)) {
      throw FormatError("[" + name + "] probability out of [0, 1] for id " + std::to_string(t.id));
    }
    probs.push_back(p);
    labels.push_back(label_of(t.gender));
    result.predictions.emplace_back(t.id, p);
    emotions.emplace_back(tag(t.text, resources.emotions),
                          p >= threshold ? Gender::female : Gender::male);
  }
  if (by_id.size() != prepared.val.size()) {
    throw FormatError("[" + name + "] predictions contain ids outside the validation set");
  }
  result.metrics = scores(confusion(probs, labels, threshold), name);
  result.emotion = emotion_gender_report(emotions);
  return result;
}

ExperimentResult evaluate_grid(const ExperimentSpec& spec, PreparedGrid grid,
                               const Resources& resources) {
  ExperimentResult result;
  result.rows = map_indexed(grid.configs.size(), spec.parallel, [&](std::size_t c) {
    const PreparedConfig& pc = grid.configs[c];
    std::vector<std::pair<TweetId, double>> predictions;
    if (spec.backend == Backend::baseline) {
      std::vector<LabeledText> train;
      train.reserve(pc.train.size());
      for (const NormalizedTweet& t : pc.train) train.push_back({t.text, label_of(t.gender)});
      const Model model = tweetpol::train(train, spec.hp);
      for (const NormalizedTweet& t : pc.val) predictions.emplace_back(t.id, predict(model, t.text));
    } else {
      const auto path = spec.predictions_dir / slug(pc.named.name) / "predictions.tsv";
      predictions = parse_predictions(io::read_file(path));
    }
    return score_config(pc, predictions, resources, spec.threshold);
  });
  result.grid = std::move(grid);
  return result;
}

ExperimentResult run_grid(const ExperimentSpec& spec, const Corpus& corpus,
                          const Resources& resources) {
  return evaluate_grid(spec, prepare_grid(spec, corpus, resources), resources);
}

namespace {

std::vector<std::pair<std::string, std::string>> split_header(const ExperimentSpec& spec,
                                                              const PreparedGrid& grid) {
  return {{"seed_requested", std::to_string(grid.seed_requested)},
          {"attempts", std::to_string(grid.attempts)},
          {"split_level", spec.account_level_split ? "account" : "tweet"},
          {"n_ids", std::to_string(grid.n_common)}};
}

}  // namespace

ReportBundle render_report(const ExperimentSpec& spec, const ExperimentResult& result,
                           const Resources& resources) {
  const PreparedGrid& grid = result.grid;
  std::string header = "# tweetpol ablation report\n";
  const auto kv = [&](const std::string& k, const std::string& v) { header += k + ": " + v + "\n"; };
  kv("corpus_digest", grid.corpus_digest);
  kv("records", std::to_string(grid.n_records));
  kv("ids_in_every_config", std::to_string(grid.n_common));
  kv("seed_requested", std::to_string(grid.seed_requested));
  kv("seed_used", std::to_string(grid.split.seed));
  kv("split_attempts", std::to_string(grid.attempts));
  kv("val_fraction", io::exact(spec.val_fraction));
  kv("split_level", spec.account_level_split ? "account" : "tweet");
  kv("train_size", std::to_string(grid.split.train.size()));
  kv("val_size", std::to_string(grid.split.val.size()));
  kv("tol_gender", io::exact(spec.tol_gender));
  kv("tol_len_rel", io::exact(spec.tol_len_rel));
  kv("threshold", io::exact(spec.threshold));
  kv("backend", std::string(to_string(spec.backend)));
  if (spec.backend == Backend::baseline) kv("hyperparams", describe(spec.hp));
  kv("emoji_table", resources.emoji.version() + " (" + std::to_string(resources.emoji.size()) + " entries)");
  kv("emoticon_lexicon", resources.emoticons.version() + " (" +
                             std::to_string(resources.emoticons.size()) + " entries)");
  kv("emotion_lexicon", resources.emotions.version() + " (" +
                            std::to_string(resources.emotions.size()) + " entries)");
  for (std::size_t c = 0; c < grid.configs.size(); ++c) {
    const NamedConfig& nc = grid.configs[c].named;
    kv("config[" + std::to_string(c) + "]",
       nc.name + " | " + describe(nc.config) + " | " + config_digest(nc.config));
  }

  std::vector<MetricsRow> rows;
  for (const ConfigResult& r : result.rows) rows.push_back(r.metrics);

  std::string summaries =
      "config_name,split,n_tweets,female_fraction,mean_len,max_len,dropped_retweets,"
      "dropped_empty,excluded,emoji_replaced,emoticons_replaced,mentions_stripped,"
      "decode_replacements,unknown_emoji_like\n";
  for (const ConfigResult& r : result.rows) {
    const PreparedConfig& pc = r.prepared;
    for (const auto& [side, s] : {std::pair{"train", pc.train_summary}, std::pair{"val", pc.val_summary}}) {
      summaries += "\"" + pc.named.name + "\"," + side + "," + std::to_string(s.n_tweets) + "," +
                   io::fixed(s.female_fraction, 6) + "," + io::fixed(s.mean_len, 4) + "," +
                   std::to_string(s.max_len) + "," + std::to_string(pc.dropped_retweets) + "," +
                   std::to_string(pc.dropped_empty) + "," + std::to_string(pc.excluded) + "," +
                   std::to_string(pc.totals.emoji_replaced) + "," +
                   std::to_string(pc.totals.emoticons_replaced) + "," +
                   std::to_string(pc.totals.mentions_stripped) + "," +
                   std::to_string(pc.totals.decode_replacements) + "," +
                   std::to_string(pc.totals.unknown_emoji_like) + "\n";
    }
  }

  ReportBundle bundle;
  bundle.emplace_back("header.txt", header);
  bundle.emplace_back("metrics.txt", render_table(rows));
  bundle.emplace_back("metrics.csv", render_records(rows));
  bundle.emplace_back("metrics_by_class.csv", render_class_records(rows));
  bundle.emplace_back("summaries.csv", summaries);
  for (const ConfigResult& r : result.rows) {
    const std::string s = slug(r.metrics.config_name);
    bundle.emplace_back("confusion/" + s + ".txt",
                        render_confusion(r.metrics.cm, "Confusion matrix: " + r.metrics.config_name));
    bundle.emplace_back("confusion/" + s + ".csv", render_confusion_records(r.metrics.cm));
    bundle.emplace_back("emotion/" + s + ".txt",
                        render_crosstab(r.emotion, "Emotion vs predicted gender: " + r.metrics.config_name));
    bundle.emplace_back("emotion/" + s + ".csv", render_crosstab_records(r.emotion));
    bundle.emplace_back("predictions/" + s + ".tsv", render_predictions(r.predictions));
  }
  const auto extra = split_header(spec, grid);
  bundle.emplace_back("split.tsv", render_split(grid.split, extra));
  return bundle;
}

ReportBundle render_interchange_bundle(const ExperimentSpec& spec, const PreparedGrid& grid) {
  ReportBundle bundle;
  for (const PreparedConfig& pc : grid.configs) {
    const std::string s = slug(pc.named.name);
    bundle.emplace_back(s + "/train.tsv", render_interchange(pc.train));
    bundle.emplace_back(s + "/val.tsv", render_interchange(pc.val));
  }
  const auto extra = split_header(spec, grid);
  bundle.emplace_back("split.tsv", render_split(grid.split, extra));
  return bundle;
}

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& out_dir) {
  for (const auto& [name, content] : bundle) io::write_file(out_dir / name, content);
}

std::string render_interchange(std::span<const NormalizedTweet> tweets) {
  std::string out;
  for (const NormalizedTweet& t : tweets) {
    if (t.text.find_first_of("\t\n\r") != std::string::npos) {
      throw FormatError("normalized text of id " + std::to_string(t.id) + " contains a tab or newline");
    }
    out += std::to_string(t.id);
    out += '\t';
    out += std::to_string(label_of(t.gender));
    out += '\t';
    out += t.text;
    out += '\n';
  }
  return out;
}

std::vector<InterchangeRecord> parse_interchange(std::string_view content) {
  std::vector<InterchangeRecord> out;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    const std::string_view line = io::chomp(content.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = io::split_tabs(line);
    if (fields.size() != 3 || (fields[1] != "0" && fields[1] != "1")) {
      throw FormatError("interchange line " + std::to_string(line_no) +
                        ": expected id<TAB>0|1<TAB>text");
    }
    out.push_back({io::parse_u64(fields[0], "interchange id"), fields[1] == "1" ? 1 : 0,
                   std::string(fields[2])});
  }
  return out;
}

std::string render_predictions(std::span<const std::pair<TweetId, double>> predictions) {
  std::string out;
  for (const auto& [id, p] : predictions) {
    out += std::to_string(id);
    out += '\t';
    out += io::exact(p);
    out += '\n';
  }
  return out;
}

std::vector<std::pair<TweetId, double>> parse_predictions(std::string_view content) {
  std::vector<std::pair<TweetId, double>> out;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    const std::string_view line = io::chomp(content.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = io::split_tabs(line);
    if (fields.size() != 2) {
      throw FormatError("predictions line " + std::to_string(line_no) +
                        ": expected id<TAB>probability_female");
    }
    out.emplace_back(io::parse_u64(fields[0], "prediction id"),
                     io::parse_double(fields[1], "probability"));
  }
  return out;
}

}  // namespace tweetpol
