#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tweetpol/ablation.hpp"
#include "tweetpol/errors.hpp"
#include "tweetpol/synthetic.hpp"
#include "tweetpol/text_io.hpp"

using namespace tweetpol;

namespace {

Corpus synthetic(SignalProfile profile, std::size_t n, std::uint64_t seed) {
  SyntheticOptions opt;
  opt.seed = seed;
  opt.n_tweets = n;
  opt.profile = profile;
  return generate_synthetic_corpus(opt);
}

ExperimentSpec fast_spec(std::uint64_t seed) {
  ExperimentSpec spec;
  spec.seed = seed;
  spec.hp.dims = 1u << 16;
  spec.hp.epochs = 5;
  return spec;
}

std::vector<TweetId> ids_of(const std::vector<NormalizedTweet>& ts) {
  std::vector<TweetId> ids;
  for (const auto& t : ts) ids.push_back(t.id);
  return ids;
}

std::string file(const ReportBundle& bundle, const std::string& name) {
  for (const auto& [n, content] : bundle) {
    if (n == name) return content;
  }
  FAIL("bundle has no " << name);
  return {};
}

// Deterministic pseudo-probabilities that depend only on the id.
std::vector<std::pair<TweetId, double>> fake_predictions(const std::vector<NormalizedTweet>& val) {
  std::vector<std::pair<TweetId, double>> out;
  for (const auto& t : val) out.emplace_back(t.id, static_cast<double>((t.id * 7919) % 1000) / 999.0);
  return out;
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("default grid yields the four reference rows on one shared split") {
    const Corpus corpus = synthetic(SignalProfile::emoji, 2000, 1);
    const ExperimentResult r = run_grid(fast_spec(3), corpus, fixtures::resources());
    REQUIRE(r.rows.size() == 4);
    const char* names[] = {"With mention+no emoji", "With mention+with emoji", "No mention+no emoji",
                           "No mention+with emoji"};
    for (std::size_t i = 0; i < 4; ++i) CHECK(r.rows[i].metrics.config_name == names[i]);

    const auto val0 = ids_of(r.rows[0].prepared.val);
    for (const ConfigResult& row : r.rows) {
      CHECK(ids_of(row.prepared.val) == val0);
      CHECK(ids_of(row.prepared.train) == ids_of(r.rows[0].prepared.train));
      CHECK(row.metrics.cm.total() == val0.size());
      const PreparedConfig& pc = row.prepared;
      CHECK(pc.train.size() + pc.val.size() + pc.excluded + pc.dropped_retweets + pc.dropped_empty ==
            r.grid.n_records);
      CHECK(check_balance(pc.train_summary, pc.val_summary).empty());
    }
    std::set<TweetId> train(r.grid.split.train.begin(), r.grid.split.train.end());
    for (const TweetId id : r.grid.split.val) CHECK(train.count(id) == 0);
    CHECK(r.grid.split.val.size() == r.grid.n_common / 4);
    CHECK(r.grid.split.seed == r.grid.seed_requested + r.grid.attempts - 1);
  }

  TEST_CASE("report is byte identical across runs and scheduling") {
    const Corpus corpus = synthetic(SignalProfile::mention, 1500, 2);
    ExperimentSpec spec = fast_spec(4);
    const ReportBundle a = render_report(spec, run_grid(spec, corpus, fixtures::resources()), fixtures::resources());
    const ReportBundle b = render_report(spec, run_grid(spec, corpus, fixtures::resources()), fixtures::resources());
    CHECK(a == b);
    spec.parallel = false;
    const ReportBundle c = render_report(spec, run_grid(spec, corpus, fixtures::resources()), fixtures::resources());
    CHECK(a == c);
  }

  TEST_CASE("planted emoji signal separates the emoji rows") {
    const Corpus corpus = synthetic(SignalProfile::emoji, 4000, 5);
    const ExperimentResult r = run_grid(fast_spec(6), corpus, fixtures::resources());
    CHECK(r.rows[3].metrics.accuracy - r.rows[2].metrics.accuracy >= 0.05);
    CHECK(r.rows[1].metrics.accuracy - r.rows[0].metrics.accuracy >= 0.05);
  }

  TEST_CASE("no signal stays at chance") {
    const Corpus corpus = synthetic(SignalProfile::none, 5000, 7);
    const ExperimentResult r = run_grid(fast_spec(8), corpus, fixtures::resources());
    for (const ConfigResult& row : r.rows) {
      CAPTURE(row.metrics.config_name);
      CHECK(row.metrics.accuracy >= 0.45);
      CHECK(row.metrics.accuracy <= 0.55);
    }
  }

  TEST_CASE("header carries the audit fields") {
    const Corpus corpus = synthetic(SignalProfile::none, 800, 9);
    const ExperimentSpec spec = fast_spec(10);
    const ExperimentResult r = run_grid(spec, corpus, fixtures::resources());
    const ReportBundle bundle = render_report(spec, r, fixtures::resources());
    const std::string header = file(bundle, "header.txt");
    for (const char* key : {"corpus_digest: fnv1a64:", "seed_requested: 10\n", "seed_used: ", "split_attempts: ",
                            "val_fraction: 0.25\n", "tol_gender: 0.02\n", "tol_len_rel: 0.05\n",
                            "backend: baseline\n", "config[3]: No mention+with emoji | "}) {
      CAPTURE(key);
      CHECK(header.find(key) != std::string::npos);
    }
    CHECK(header.find(config_digest(spec.grid[0].config)) != std::string::npos);
    CHECK(header.find(corpus.digest) != std::string::npos);
    const Split split = parse_split(file(bundle, "split.tsv"));
    CHECK(split.seed == r.grid.split.seed);
    CHECK(split.val.size() == r.grid.split.val.size());
    CHECK(file(bundle, "metrics.txt").find("No mention+with emoji") != std::string::npos);
    CHECK(parse_predictions(file(bundle, "predictions/no_mention_with_emoji.tsv")) == r.rows[3].predictions);
  }

  TEST_CASE("retry budget") {
    const Corpus corpus = synthetic(SignalProfile::none, 800, 11);
    ExperimentSpec spec = fast_spec(12);
    spec.tol_gender = 0.0;
    spec.tol_len_rel = 0.0;
    spec.max_attempts = 3;
    CHECK_THROWS_AS(prepare_grid(spec, corpus, fixtures::resources()), BalanceRetriesExhausted);
    spec.max_attempts = 0;
    CHECK_THROWS_AS(prepare_grid(spec, corpus, fixtures::resources()), InvalidArgument);
  }

  TEST_CASE("account-level split keeps accounts on one side") {
    const Corpus corpus = synthetic(SignalProfile::none, 3000, 13);
    ExperimentSpec spec = fast_spec(14);
    spec.account_level_split = true;
    spec.tol_gender = 0.2;
    spec.tol_len_rel = 0.2;
    const PreparedGrid g = prepare_grid(spec, corpus, fixtures::resources());
    std::set<std::string> train_accounts;
    for (const auto& t : g.configs[0].train) train_accounts.insert(t.account);
    for (const auto& t : g.configs[0].val) CHECK(train_accounts.count(t.account) == 0);
  }

  TEST_CASE("bad inputs") {
    const Corpus corpus = synthetic(SignalProfile::none, 200, 15);
    ExperimentSpec spec = fast_spec(1);
    spec.grid.push_back(spec.grid[0]);
    CHECK_THROWS_AS(prepare_grid(spec, corpus, fixtures::resources()), InvalidArgument);
    CHECK_THROWS_AS(prepare_grid(fast_spec(1), Corpus{}, fixtures::resources()), EmptyCorpus);
    const Corpus one_class = parse_corpus("a\tfemale\tsinger\tb'x y'\na\tfemale\tsinger\tb'z'\n");
    CHECK_THROWS_AS(prepare_grid(fast_spec(1), one_class, fixtures::resources()), SingleClassCorpus);
    const Corpus retweets = parse_corpus("a\tfemale\tsinger\tRT @x: hi\nb\tmale\tother\tRT @y: yo\n");
    CHECK_THROWS_AS(prepare_grid(fast_spec(1), retweets, fixtures::resources()), EmptyCorpus);
  }
}

TEST_SUITE("external predictions") {
  TEST_CASE("scoring a predictions file equals scoring in process") {
    const Corpus corpus = synthetic(SignalProfile::emoji, 1200, 16);
    ExperimentSpec spec = fast_spec(17);
    const PreparedGrid grid = prepare_grid(spec, corpus, fixtures::resources());

    const auto dir = fixtures::scratch_dir("external_predictions");
    write_bundle(render_interchange_bundle(spec, grid), dir / "interchange");
    for (const PreparedConfig& pc : grid.configs) {
      const auto preds = fake_predictions(pc.val);
      io::write_file(dir / "preds" / slug(pc.named.name) / "predictions.tsv", render_predictions(preds));
    }
    spec.backend = Backend::external_predictions;
    spec.predictions_dir = dir / "preds";
    const ExperimentResult r = evaluate_grid(spec, grid, fixtures::resources());
    REQUIRE(r.rows.size() == grid.configs.size());
    for (std::size_t c = 0; c < grid.configs.size(); ++c) {
      const PreparedConfig& pc = grid.configs[c];
      // The interchange file carries exactly the prepared val records.
      const auto records = parse_interchange(io::read_file(dir / "interchange" / slug(pc.named.name) / "val.tsv"));
      REQUIRE(records.size() == pc.val.size());
      std::vector<double> p;
      std::vector<int> y;
      for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].id == pc.val[i].id);
        CHECK(records[i].text == pc.val[i].text);
        CHECK(records[i].label == (pc.val[i].gender == Gender::female ? 1 : 0));
        p.push_back(static_cast<double>((records[i].id * 7919) % 1000) / 999.0);
        y.push_back(records[i].label);
      }
      const oracle::Recount expect = oracle::recount(p, y, spec.threshold);
      const MetricsRow& m = r.rows[c].metrics;
      CHECK(m.cm == ConfusionMatrix{expect.tp, expect.fp, expect.fn, expect.tn});
      CHECK(m.accuracy == expect.accuracy);
      CHECK(m.precision == expect.precision);
      CHECK(m.recall == expect.recall);
    }
  }

  TEST_CASE("missing predictions file") {
    const Corpus corpus = synthetic(SignalProfile::none, 400, 18);
    ExperimentSpec spec = fast_spec(19);
    spec.backend = Backend::external_predictions;
    spec.predictions_dir = fixtures::scratch_dir("no_predictions");
    CHECK_THROWS_AS(run_grid(spec, corpus, fixtures::resources()), FormatError);
  }

  TEST_CASE("score_config rejects inconsistent predictions") {
    const Corpus corpus = synthetic(SignalProfile::none, 400, 20);
    const PreparedGrid grid = prepare_grid(fast_spec(21), corpus, fixtures::resources());
    const PreparedConfig& pc = grid.configs[0];
    const auto good = fake_predictions(pc.val);
    CHECK_NOTHROW(score_config(pc, good, fixtures::resources(), 0.5));

    auto missing = good;
    missing.pop_back();
    CHECK_THROWS_AS(score_config(pc, missing, fixtures::resources(), 0.5), FormatError);
    auto duplicate = good;
    duplicate.push_back(good.front());
    CHECK_THROWS_AS(score_config(pc, duplicate, fixtures::resources(), 0.5), FormatError);
    auto extra = good;
    extra.emplace_back(pc.train.front().id, 0.5);
    CHECK_THROWS_AS(score_config(pc, extra, fixtures::resources(), 0.5), FormatError);
    auto out_of_range = good;
    out_of_range.front().second = 1.5;
    CHECK_THROWS_AS(score_config(pc, out_of_range, fixtures::resources(), 0.5), FormatError);

    // Order of the predictions file does not matter.
    auto reversed = good;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(score_config(pc, reversed, fixtures::resources(), 0.5).metrics.cm ==
          score_config(pc, good, fixtures::resources(), 0.5).metrics.cm);
  }
}

TEST_SUITE("interchange formats") {
  TEST_CASE("train/val records round trip") {
    std::vector<NormalizedTweet> ts(3);
    ts[0] = {5, "a", Gender::female, "hi WINKING FACE", {}};
    ts[1] = {9, "b", Gender::male, fixtures::u8(U"café \U0001F609"), {}};
    ts[2] = {12, "a", Gender::female, "x", {}};
    const std::string text = render_interchange(ts);
    CHECK(text.find("5\t1\thi WINKING FACE\n") != std::string::npos);
    const auto back = parse_interchange(text);
    REQUIRE(back.size() == 3);
    CHECK(back[1].id == 9);
    CHECK(back[1].label == 0);
    CHECK(back[1].text == ts[1].text);
    ts[2].text = "tab\there";
    CHECK_THROWS_AS(render_interchange(ts), FormatError);
    CHECK_THROWS_AS(parse_interchange("1\t2\tx\n"), FormatError);
    CHECK_THROWS_AS(parse_interchange("1\t1\n"), FormatError);
    CHECK_THROWS_AS(parse_interchange("z\t1\tx\n"), FormatError);
  }

  TEST_CASE("predictions round trip bit exactly") {
    std::mt19937_64 gen(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<TweetId, double>> preds;
    for (TweetId i = 0; i < 2000; ++i) preds.emplace_back(i * 3, u(gen));
    preds.emplace_back(7, 0.0);
    preds.emplace_back(8, 1.0);
    CHECK(parse_predictions(render_predictions(preds)) == preds);
    CHECK_THROWS_AS(parse_predictions("1\t0.5\t2\n"), FormatError);
    CHECK_THROWS_AS(parse_predictions("1\thalf\n"), FormatError);
    CHECK(parse_predictions("# produced elsewhere\n3\t0.25\n") ==
          std::vector<std::pair<TweetId, double>>{{3, 0.25}});
  }
}
