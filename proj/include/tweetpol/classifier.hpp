#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tweetpol {

/// Inclusive n-gram order range. {0, 0} disables the family.
struct NgramRange {
  unsigned min = 1;
  unsigned max = 2;

  bool enabled() const { return min >= 1 && max >= min; }
  static NgramRange off() { return {0, 0}; }
  bool operator==(const NgramRange&) const = default;
};

struct Hyperparams {
  std::uint32_t dims = 1u << 18;  // power of two
  NgramRange word_ngrams{1, 2};
  NgramRange char_ngrams{3, 5};
  double lr = 0.1;
  unsigned epochs = 10;
  double l2 = 1e-6;
  double dropout = 0.1;  // input-feature dropout rate, training only
  std::uint64_t seed = 0;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
  bool operator==(const Hyperparams&) const = default;
};

/// Sorted, duplicate-free (index, value) pairs.
struct SparseVector {
  std::uint32_t dims = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  double dot(std::span<const double> dense) const;
  bool operator==(const SparseVector&) const = default;
};

/// Single sigmoid unit over hashed features.
struct Model {
  std::vector<double> weights;
  double bias = 0.0;
  Hyperparams hp;

  static Model zero(const Hyperparams& hp);
  bool operator==(const Model&) const = default;
};

/// label: 1 = female, 0 = male.
struct Example {
  SparseVector x;
  int label = 0;
};

struct LabeledText {
  std::string text;
  int label = 0;
};

double sigmoid(double z);

/// 64-bit gram hash: the SplitMix64 finalizer applied to FNV-1a-64 of the
/// gram's UTF-8 bytes. Word grams are hashed as "w:" + tokens joined by one
/// space; char grams as "c:" + the scalars of "<token>".
std::uint64_t gram_hash(std::string_view gram);

/// Whitespace tokens; word n-grams over them and character n-grams inside
/// each token. Bucket = hash mod dims, sign = +1 if the hash's top bit is 0
/// else -1, value = signed count. Buckets that cancel to 0 are dropped.
SparseVector featurize(std::string_view text, const Hyperparams& hp);

struct Gradient {
  double loss = 0.0;
  std::vector<double> weights;
  double bias = 0.0;
};

/// Mean binary cross-entropy plus (l2 / 2) * |w|^2 and its exact gradient.
/// Throws EmptyInput for an empty batch.
Gradient loss_and_gradient(const Model& model, std::span<const Example> batch);
double loss(const Model& model, std::span<const Example> batch);

/// Per-example SGD for hp.epochs passes, reshuffling the order each epoch
/// and applying inverted feature dropout, all driven by Rng(hp.seed).
/// `epoch_losses`, when given, receives the full regularized loss after every
/// epoch (evaluated without dropout). Throws SingleClassCorpus unless both
/// labels occur (when epochs > 0).
Model train_examples(std::span<const Example> examples, const Hyperparams& hp,
                     std::vector<double>* epoch_losses = nullptr);
Model train(std::span<const LabeledText> data, const Hyperparams& hp,
            std::vector<double>* epoch_losses = nullptr);

/// Probability of the female class, always strictly inside (0, 1).
double predict(const Model& model, const SparseVector& x);
double predict(const Model& model, std::string_view text);

/// Text dump: header, hyperparameters, bias and the weights whose magnitude
/// exceeds `prune_threshold` (at 0, every weight except +0.0). Numbers use
/// shortest round-trip notation so a threshold of 0 round-trips bit-exactly.
std::string serialize_model(const Model& model, double prune_threshold = 0.0);
Model deserialize_model(std::string_view text);
void save_model(const std::filesystem::path& path, const Model& model,
                double prune_threshold = 0.0);
Model load_model(const std::filesystem::path& path);

}  // namespace tweetpol
