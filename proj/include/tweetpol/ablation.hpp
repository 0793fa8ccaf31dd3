#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tweetpol/classifier.hpp"
#include "tweetpol/dataset.hpp"
#include "tweetpol/emoji_mapper.hpp"
#include "tweetpol/emotion.hpp"
#include "tweetpol/metrics.hpp"
#include "tweetpol/tweet_cleaner.hpp"

namespace tweetpol {

/// The three data files every run needs.
struct Resources {
  EmojiTable emoji;
  EmoticonLexicon emoticons;
  EmotionLexicon emotions;

  /// Loads emoji_table.tsv, emoticons.tsv and emotion_lexicon.tsv.
  static Resources load(const std::filesystem::path& data_dir);
};

/// Data directory: $TWEETPOL_DATA_DIR if set, else the source tree's data/.
std::filesystem::path default_data_dir();

enum class Backend { baseline, external_predictions };

std::string_view to_string(Backend b);

struct ExperimentSpec {
  std::uint64_t seed = 0;
  double val_fraction = 0.25;
  Hyperparams hp;
  std::vector<NamedConfig> grid = ablation_grid();
  Backend backend = Backend::baseline;
  // External backend: predictions are read from <dir>/<slug(name)>/predictions.tsv.
  std::filesystem::path predictions_dir;
  double tol_gender = kDefaultTolGender;
  double tol_len_rel = kDefaultTolLenRel;
  unsigned max_attempts = 100;
  bool account_level_split = false;
  double threshold = kDefaultThreshold;
  bool parallel = true;
};

/// One grid entry after normalization and splitting, before any model runs.
struct PreparedConfig {
  NamedConfig named;
  std::vector<NormalizedTweet> train;
  std::vector<NormalizedTweet> val;
  DistributionSummary train_summary;
  DistributionSummary val_summary;
  std::size_t dropped_retweets = 0;
  std::size_t dropped_empty = 0;
  // Survived this config but were dropped by another grid entry.
  std::size_t excluded = 0;
  TweetStats totals;
};

struct PreparedGrid {
  std::vector<PreparedConfig> configs;
  Split split;
  std::uint64_t seed_requested = 0;
  unsigned attempts = 0;
  std::size_t n_records = 0;
  std::size_t n_common = 0;
  std::string corpus_digest;
};

/// Normalizes the corpus under every grid entry, keeps the ids that survive
/// all of them, and splits those ids once. The split is retried with seed+1,
/// seed+2, ... until every config passes check_balance, at most
/// spec.max_attempts times (BalanceRetriesExhausted otherwise).
PreparedGrid prepare_grid(const ExperimentSpec& spec, const Corpus& corpus,
                          const Resources& resources);

struct ConfigResult {
  PreparedConfig prepared;
  MetricsRow metrics;
  EmotionCrossTab emotion;
  std::vector<std::pair<TweetId, double>> predictions;  // val order
};

struct ExperimentResult {
  PreparedGrid grid;
  std::vector<ConfigResult> rows;  // grid order
};

/// Scores one config from per-id female probabilities. Throws FormatError
/// when a val id is missing, repeated or unknown.
ConfigResult score_config(const PreparedConfig& prepared,
                          std::span<const std::pair<TweetId, double>> predictions,
                          const Resources& resources, double threshold);

/// prepare_grid, then train-and-predict (baseline) or read predictions
/// (external) for every config and score them.
ExperimentResult run_grid(const ExperimentSpec& spec, const Corpus& corpus,
                          const Resources& resources);
ExperimentResult evaluate_grid(const ExperimentSpec& spec, PreparedGrid grid,
                               const Resources& resources);

/// Named files of a report bundle, in a fixed order.
using ReportBundle = std::vector<std::pair<std::string, std::string>>;

ReportBundle render_report(const ExperimentSpec& spec, const ExperimentResult& result,
                           const Resources& resources);

/// Interchange files for an external model: <slug>/train.tsv, <slug>/val.tsv
/// per config plus split.tsv.
ReportBundle render_interchange_bundle(const ExperimentSpec& spec, const PreparedGrid& grid);

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& out_dir);

// Interchange formats shared with external models.

struct InterchangeRecord {
  TweetId id = 0;
  int label = 0;  // 1 = female
  std::string text;
};

/// `id<TAB>label<TAB>normalized_text`.
std::string render_interchange(std::span<const NormalizedTweet> tweets);
std::vector<InterchangeRecord> parse_interchange(std::string_view content);

/// `id<TAB>probability_female`, probabilities in shortest round-trip form.
std::string render_predictions(std::span<const std::pair<TweetId, double>> predictions);
std::vector<std::pair<TweetId, double>> parse_predictions(std::string_view content);

/// Stable digest of a normalization config, for run headers.
std::string config_digest(const NormalizationConfig& config);

}  // namespace tweetpol
