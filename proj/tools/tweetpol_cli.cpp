// tweetpol: command-line front end for normalization, splitting, training,
// scoring and the mention x emoji ablation grid.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tweetpol/ablation.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/experiment_config.hpp"
#include "tweetpol/synthetic.hpp"
#include "tweetpol/text_io.hpp"

namespace fs = std::filesystem;
using namespace tweetpol;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  double val_fraction = 0.25;
  std::string out_dir = "tweetpol-out";
  std::string data_dir;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* val_fraction_opt = nullptr;
};

struct CleaningOptions {
  bool strip_mentions = false;
  std::string emoji_mode = "replace";
  std::string emoticon_mode;
  bool keep_retweets = false;

  bool any_set(const CLI::App& app) const {
    return app.count("--strip-mentions") || app.count("--emoji-mode") ||
           app.count("--emoticon-mode") || app.count("--keep-retweets");
  }
};

struct HyperOptions {
  std::uint32_t dims = 0;
  std::string word_ngrams;
  std::string char_ngrams;
  double lr = 0;
  unsigned epochs = 0;
  double l2 = 0;
  double dropout = 0;
  std::uint64_t model_seed = 0;
};

void add_cleaning_flags(CLI::App* app, CleaningOptions& o) {
  app->add_flag("--strip-mentions", o.strip_mentions, "Remove @handle mentions");
  app->add_option("--emoji-mode", o.emoji_mode, "replace | strip | keep")
      ->check(CLI::IsMember({"replace", "replace_with_text", "strip", "keep", "keep_raw"}));
  app->add_option("--emoticon-mode", o.emoticon_mode, "replace | strip | keep (default: emoji mode)")
      ->check(CLI::IsMember({"replace", "replace_with_text", "strip", "keep", "keep_raw"}));
  app->add_flag("--keep-retweets", o.keep_retweets, "Keep tweets starting with RT");
}

NormalizationConfig cleaning_config(const CleaningOptions& o) {
  NormalizationConfig c;
  c.strip_mentions = o.strip_mentions;
  c.emoji_mode = *parse_symbol_mode(o.emoji_mode);
  c.emoticon_mode = o.emoticon_mode.empty() ? c.emoji_mode : *parse_symbol_mode(o.emoticon_mode);
  c.drop_retweets = !o.keep_retweets;
  return c;
}

void add_hyper_flags(CLI::App* app, HyperOptions& o) {
  app->add_option("--dims", o.dims, "Hashed feature dimension (power of two)");
  app->add_option("--word-ngrams", o.word_ngrams, "Word n-gram orders MIN:MAX, 0:0 disables");
  app->add_option("--char-ngrams", o.char_ngrams, "Char n-gram orders MIN:MAX, 0:0 disables");
  app->add_option("--lr", o.lr, "SGD learning rate");
  app->add_option("--epochs", o.epochs, "Training passes");
  app->add_option("--l2", o.l2, "L2 penalty");
  app->add_option("--dropout", o.dropout, "Input-feature dropout rate");
  app->add_option("--model-seed", o.model_seed, "Seed for training order and dropout");
}

NgramRange parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidArgument("n-gram range must be MIN:MAX, got " + s);
  return {static_cast<unsigned>(io::parse_u64(s.substr(0, colon), "n-gram min")),
          static_cast<unsigned>(io::parse_u64(s.substr(colon + 1), "n-gram max"))};
}

void apply_hyper_flags(const CLI::App& app, const HyperOptions& o, Hyperparams& hp) {
  if (app.count("--dims")) hp.dims = o.dims;
  if (app.count("--word-ngrams")) hp.word_ngrams = parse_range(o.word_ngrams);
  if (app.count("--char-ngrams")) hp.char_ngrams = parse_range(o.char_ngrams);
  if (app.count("--lr")) hp.lr = o.lr;
  if (app.count("--epochs")) hp.epochs = o.epochs;
  if (app.count("--l2")) hp.l2 = o.l2;
  if (app.count("--dropout")) hp.dropout = o.dropout;
  if (app.count("--model-seed")) hp.seed = o.model_seed;
  hp.validate();
}

// Config file first, explicit global flags on top.
ExperimentConfig base_config(const GlobalOptions& g) {
  ExperimentConfig cfg;
  if (!g.config_path.empty()) cfg = load_experiment_config(g.config_path);
  if (g.seed_opt->count()) cfg.spec.seed = g.seed;
  if (g.val_fraction_opt->count()) cfg.spec.val_fraction = g.val_fraction;
  return cfg;
}

fs::path corpus_path(const std::string& flag, const ExperimentConfig& cfg) {
  if (!flag.empty()) return flag;
  if (cfg.corpus) return *cfg.corpus;
  throw InvalidArgument("no corpus given (use --corpus or a config file with \"corpus\")");
}

Resources load_resources(const GlobalOptions& g) {
  return Resources::load(g.data_dir.empty() ? default_data_dir() : fs::path(g.data_dir));
}

std::vector<NormalizedTweet> as_tweets(const std::vector<InterchangeRecord>& records) {
  std::vector<NormalizedTweet> out;
  out.reserve(records.size());
  for (const InterchangeRecord& r : records) {
    NormalizedTweet t;
    t.id = r.id;
    t.gender = gender_of_label(r.label);
    t.text = r.text;
    out.push_back(std::move(t));
  }
  return out;
}

void print_stats(const std::string& name, const NormalizedCorpus& nc) {
  TweetStats s;
  for (const NormalizedTweet& t : nc.tweets) {
    s.emoji_replaced += t.stats.emoji_replaced;
    s.emoticons_replaced += t.stats.emoticons_replaced;
    s.mentions_stripped += t.stats.mentions_stripped;
    s.decode_replacements += t.stats.decode_replacements;
    s.unknown_emoji_like += t.stats.unknown_emoji_like;
  }
  std::cout << name << ": kept " << nc.tweets.size() << ", dropped retweets "
            << nc.dropped_retweets << ", dropped empty " << nc.dropped_empty
            << ", emoji " << s.emoji_replaced << ", emoticons " << s.emoticons_replaced
            << ", mentions " << s.mentions_stripped << ", decode replacements "
            << s.decode_replacements << ", unknown emoji-like " << s.unknown_emoji_like << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gender-polarity tweet classification: cleaning, baseline model and ablation grid"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  g.seed_opt = app.add_option("--seed", g.seed, "Split and generator seed");
  g.val_fraction_opt = app.add_option("--val-fraction", g.val_fraction, "Validation share")
                           ->check(CLI::Range(0.0, 1.0));
  app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();
  app.add_option("--data-dir", g.data_dir, "Directory with the emoji, emoticon and emotion tables");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic bytes-literal corpus");
  SyntheticOptions synth_opts;
  std::string profile = "none";
  std::string synth_output;
  synth->add_option("--profile", profile, "none | emoji | mention | token")->capture_default_str();
  synth->add_option("--n-tweets", synth_opts.n_tweets)->capture_default_str();
  synth->add_option("--n-accounts", synth_opts.n_accounts)->capture_default_str();
  synth->add_option("--signal-rate", synth_opts.signal_rate)->capture_default_str();
  synth->add_option("--retweet-rate", synth_opts.retweet_rate)->capture_default_str();
  synth->add_option("--output", synth_output, "Corpus file (default: <out-dir>/corpus.tsv)");

  // normalize
  auto* normalize_cmd = app.add_subcommand("normalize", "Clean a corpus under one config");
  std::string corpus_flag;
  CleaningOptions cleaning;
  normalize_cmd->add_option("--corpus", corpus_flag, "Corpus file");
  add_cleaning_flags(normalize_cmd, cleaning);

  // split
  auto* split_cmd = app.add_subcommand("split", "Clean, split and balance-check one config");
  bool account_level = false;
  split_cmd->add_option("--corpus", corpus_flag, "Corpus file");
  split_cmd->add_flag("--account-level", account_level, "Keep each account on one side");
  add_cleaning_flags(split_cmd, cleaning);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train the baseline on an interchange file");
  std::string train_file;
  std::string model_file;
  HyperOptions hyper;
  train_cmd->add_option("--train", train_file, "id<TAB>label<TAB>text file")->required();
  train_cmd->add_option("--model", model_file, "Model output (default: <out-dir>/model.txt)");
  add_hyper_flags(train_cmd, hyper);

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a model or a predictions file");
  std::string val_file;
  std::string predictions_file;
  std::string eval_name = "model";
  double threshold = kDefaultThreshold;
  eval_cmd->add_option("--val", val_file, "id<TAB>label<TAB>text file")->required();
  auto* eval_model = eval_cmd->add_option("--model", model_file, "Model from `train`");
  eval_cmd->add_option("--predictions", predictions_file, "id<TAB>probability_female file")
      ->excludes(eval_model);
  eval_cmd->add_option("--name", eval_name, "Row name in the report")->capture_default_str();
  eval_cmd->add_option("--threshold", threshold)->capture_default_str();

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Run the mention x emoji grid end to end");
  std::string backend = "baseline";
  std::string predictions_dir;
  bool export_only = false;
  bool sequential = false;
  ablate->add_option("--corpus", corpus_flag, "Corpus file");
  ablate->add_option("--backend", backend, "baseline | external")
      ->check(CLI::IsMember({"baseline", "external", "external_predictions"}));
  ablate->add_option("--predictions-dir", predictions_dir,
                     "External backend: <dir>/<config slug>/predictions.tsv");
  ablate->add_flag("--export-only", export_only,
                   "Write train/val interchange files per config and stop");
  ablate->add_flag("--account-level", account_level, "Keep each account on one side");
  ablate->add_flag("--sequential", sequential, "Run grid rows one after another");
  ablate->add_option("--threshold", threshold);
  add_cleaning_flags(ablate, cleaning);
  add_hyper_flags(ablate, hyper);

  // emotion-report
  auto* emotion_cmd = app.add_subcommand("emotion-report",
                                         "Cross-tab lexicon emotions against gender");
  std::string emotion_input;
  emotion_cmd->add_option("--input", emotion_input, "id<TAB>label<TAB>text file")->required();
  emotion_cmd->add_option("--predictions", predictions_file,
                          "Use predicted gender from this file instead of labels");
  emotion_cmd->add_option("--threshold", threshold)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out_dir = g.out_dir;

    if (synth->parsed()) {
      const auto p = parse_signal_profile(profile);
      if (!p) throw InvalidArgument("unknown signal profile '" + profile + "'");
      synth_opts.profile = *p;
      synth_opts.seed = base_config(g).spec.seed;
      const Corpus corpus = generate_synthetic_corpus(synth_opts);
      const fs::path path = synth_output.empty() ? out_dir / "corpus.tsv" : fs::path(synth_output);
      io::write_file(path, render_corpus(corpus));
      std::cout << "wrote " << corpus.tweets.size() << " tweets from " << corpus.accounts.size()
                << " accounts to " << path.string() << " (" << corpus.digest << ")\n";
      return 0;
    }

    if (normalize_cmd->parsed()) {
      const ExperimentConfig cfg = base_config(g);
      const Resources res = load_resources(g);
      const Corpus corpus = load_corpus(corpus_path(corpus_flag, cfg));
      const NormalizationConfig config = cleaning_config(cleaning);
      const NormalizedCorpus nc = normalize_all(corpus.tweets, config, res.emoji, res.emoticons);
      io::write_file(out_dir / "normalized.tsv", render_interchange(nc.tweets));
      print_stats(describe(config), nc);
      return 0;
    }

    if (split_cmd->parsed()) {
      ExperimentConfig cfg = base_config(g);
      const Resources res = load_resources(g);
      const Corpus corpus = load_corpus(corpus_path(corpus_flag, cfg));
      cfg.spec.grid = {{"custom", cleaning_config(cleaning)}};
      cfg.spec.account_level_split = cfg.spec.account_level_split || account_level;
      const PreparedGrid grid = prepare_grid(cfg.spec, corpus, res);
      write_bundle(render_interchange_bundle(cfg.spec, grid), out_dir);
      std::cout << "train " << grid.split.train.size() << ", val " << grid.split.val.size()
                << ", seed used " << grid.split.seed << " after " << grid.attempts
                << " attempt(s)\n";
      return 0;
    }

    if (train_cmd->parsed()) {
      Hyperparams hp = base_config(g).spec.hp;
      apply_hyper_flags(*train_cmd, hyper, hp);
      std::vector<LabeledText> data;
      for (const InterchangeRecord& r : parse_interchange(io::read_file(train_file))) {
        data.push_back({r.text, r.label});
      }
      std::vector<double> losses;
      const Model model = train(data, hp, &losses);
      const fs::path path = model_file.empty() ? out_dir / "model.txt" : fs::path(model_file);
      save_model(path, model);
      for (std::size_t e = 0; e < losses.size(); ++e) {
        std::cout << "epoch " << e + 1 << " loss " << io::fixed(losses[e], 6) << "\n";
      }
      std::cout << "wrote " << path.string() << "\n";
      return 0;
    }

    if (eval_cmd->parsed()) {
      const auto val = parse_interchange(io::read_file(val_file));
      std::vector<double> probs;
      std::vector<int> labels;
      if (!model_file.empty()) {
        const Model model = load_model(model_file);
        for (const InterchangeRecord& r : val) probs.push_back(predict(model, r.text));
      } else if (!predictions_file.empty()) {
        const auto tweets = as_tweets(val);
        PreparedConfig pc;
        pc.named.name = eval_name;
        pc.val = tweets;
        const auto preds = parse_predictions(io::read_file(predictions_file));
        const Resources res = load_resources(g);
        for (const auto& [id, p] : score_config(pc, preds, res, threshold).predictions) {
          probs.push_back(p);
        }
      } else {
        throw InvalidArgument("evaluate needs --model or --predictions");
      }
      for (const InterchangeRecord& r : val) labels.push_back(r.label);
      const std::vector<MetricsRow> rows{scores(confusion(probs, labels, threshold), eval_name)};
      io::write_file(out_dir / "metrics.txt", render_table(rows));
      io::write_file(out_dir / "metrics.csv", render_records(rows));
      io::write_file(out_dir / "metrics_by_class.csv", render_class_records(rows));
      io::write_file(out_dir / "confusion.txt", render_confusion(rows[0].cm, "Confusion matrix: " + eval_name));
      std::cout << render_table(rows) << render_confusion(rows[0].cm, "Confusion matrix: " + eval_name);
      return 0;
    }

    if (ablate->parsed()) {
      ExperimentConfig cfg = base_config(g);
      ExperimentSpec& spec = cfg.spec;
      const Resources res = load_resources(g);
      const Corpus corpus = load_corpus(corpus_path(corpus_flag, cfg));
      if (ablate->count("--backend")) {
        spec.backend = backend == "baseline" ? Backend::baseline : Backend::external_predictions;
      }
      if (!predictions_dir.empty()) spec.predictions_dir = predictions_dir;
      if (account_level) spec.account_level_split = true;
      if (sequential) spec.parallel = false;
      if (ablate->count("--threshold")) spec.threshold = threshold;
      if (cleaning.any_set(*ablate)) spec.grid = {{"custom", cleaning_config(cleaning)}};
      apply_hyper_flags(*ablate, hyper, spec.hp);

      PreparedGrid grid = prepare_grid(spec, corpus, res);
      if (export_only) {
        write_bundle(render_interchange_bundle(spec, grid), out_dir);
        std::cout << "wrote interchange files for " << grid.configs.size() << " configs to "
                  << out_dir.string() << "\n";
        return 0;
      }
      if (spec.backend == Backend::external_predictions && spec.predictions_dir.empty()) {
        throw InvalidArgument("external backend needs --predictions-dir");
      }
      const ExperimentResult result = evaluate_grid(spec, std::move(grid), res);
      write_bundle(render_report(spec, result, res), out_dir);
      std::vector<MetricsRow> rows;
      for (const ConfigResult& r : result.rows) rows.push_back(r.metrics);
      std::cout << render_table(rows) << "seed used " << result.grid.split.seed << " after "
                << result.grid.attempts << " attempt(s); report in " << out_dir.string() << "\n";
      return 0;
    }

    if (emotion_cmd->parsed()) {
      const Resources res = load_resources(g);
      const auto records = parse_interchange(io::read_file(emotion_input));
      std::vector<std::pair<EmotionScores, Gender>> items;
      if (!predictions_file.empty()) {
        PreparedConfig pc;
        pc.named.name = "predictions";
        pc.val = as_tweets(records);
        const auto preds = parse_predictions(io::read_file(predictions_file));
        const ConfigResult r = score_config(pc, preds, res, threshold);
        io::write_file(out_dir / "emotion.txt", render_crosstab(r.emotion, "Emotion vs predicted gender"));
        io::write_file(out_dir / "emotion.csv", render_crosstab_records(r.emotion));
        std::cout << render_crosstab(r.emotion, "Emotion vs predicted gender");
        return 0;
      }
      for (const InterchangeRecord& r : records) {
        items.emplace_back(tag(r.text, res.emotions), gender_of_label(r.label));
      }
      const EmotionCrossTab tab = emotion_gender_report(items);
      io::write_file(out_dir / "emotion.txt", render_crosstab(tab, "Emotion vs labelled gender"));
      io::write_file(out_dir / "emotion.csv", render_crosstab_records(tab));
      std::cout << render_crosstab(tab, "Emotion vs labelled gender");
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "tweetpol: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tweetpol: unexpected failure: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
