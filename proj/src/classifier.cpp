#include "tweetpol/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "tweetpol/errors.hpp"
#include "tweetpol/rng.hpp"
#include "tweetpol/text_io.hpp"
#include "tweetpol/utf8.hpp"

namespace tweetpol {
namespace {

std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::string_view> tokenize(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  std::size_t start = std::string_view::npos;
  while (pos < text.size()) {
    const std::size_t at = pos;
    const bool space = utf8::is_space(utf8::next(text, pos));
    if (space) {
      if (start != std::string_view::npos) tokens.push_back(text.substr(start, at - start));
      start = std::string_view::npos;
    } else if (start == std::string_view::npos) {
      start = at;
    }
  }
  if (start != std::string_view::npos) tokens.push_back(text.substr(start));
  return tokens;
}

// log(1 + exp(-|z|)) + max(z, 0) - y z
double bce_from_logit(double z, int label) {
  return std::log1p(std::exp(-std::fabs(z))) + std::max(z, 0.0) - label * z;
}

double l2_norm_sq(std::span<const double> w) {
  double s = 0.0;
  for (const double v : w) s += v * v;
  return s;
}

void require_same_dims(const Model& model, const SparseVector& x) {
  if (x.dims != model.weights.size()) {
    throw InvalidArgument("feature vector has " + std::to_string(x.dims) +
                          " dims, model has " + std::to_string(model.weights.size()));
  }
}

}  // namespace

void Hyperparams::validate() const {
  if (dims < 2 || !std::has_single_bit(dims)) {
    throw InvalidArgument("dims must be a power of two >= 2");
  }
  const auto range_ok = [](const NgramRange& r) {
    return r == NgramRange::off() || r.enabled();
  };
  if (!range_ok(word_ngrams) || !range_ok(char_ngrams)) {
    throw InvalidArgument("n-gram range must satisfy 1 <= min <= max, or be 0-0");
  }
  if (!(lr > 0.0) || !std::isfinite(lr)) throw InvalidArgument("lr must be > 0");
  if (!(l2 >= 0.0) || !(lr * l2 < 1.0)) {
    throw InvalidArgument("l2 must be >= 0 with lr * l2 < 1");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw InvalidArgument("dropout must lie in [0, 1)");
  }
}

double SparseVector::dot(std::span<const double> dense) const {
  double s = 0.0;
  for (const auto& [i, v] : entries) s += dense[i] * v;
  return s;
}

Model Model::zero(const Hyperparams& hp) {
  hp.validate();
  Model m;
  m.weights.assign(hp.dims, 0.0);
  m.hp = hp;
  return m;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::uint64_t gram_hash(std::string_view gram) {
  return splitmix_finalize(io::fnv1a64(gram));
}

SparseVector featurize(std::string_view text, const Hyperparams& hp) {
  std::map<std::uint32_t, double> buckets;
  const auto add = [&](std::string_view gram) {
    const std::uint64_t h = gram_hash(gram);
    const auto bucket = static_cast<std::uint32_t>(h % hp.dims);
    buckets[bucket] += (h >> 63) ? -1.0 : 1.0;
  };

  const auto tokens = tokenize(text);
  std::string gram;
  if (hp.word_ngrams.enabled()) {
    for (unsigned n = hp.word_ngrams.min; n <= hp.word_ngrams.max; ++n) {
      for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        gram = "w:";
        for (std::size_t k = 0; k < n; ++k) {
          if (k) gram.push_back(' ');
          gram.append(tokens[i + k]);
        }
        add(gram);
      }
    }
  }
  if (hp.char_ngrams.enabled()) {
    std::u32string padded;
    for (const std::string_view token : tokens) {
      padded = U"<";
      padded += utf8::to_u32(token);
      padded.push_back(U'>');
      for (unsigned n = hp.char_ngrams.min; n <= hp.char_ngrams.max; ++n) {
        for (std::size_t i = 0; i + n <= padded.size(); ++i) {
          gram = "c:";
          for (std::size_t k = 0; k < n; ++k) utf8::append(gram, padded[i + k]);
          add(gram);
        }
      }
    }
  }

  SparseVector x;
  x.dims = hp.dims;
  x.entries.reserve(buckets.size());
  for (const auto& [i, v] : buckets) {
    if (v != 0.0) x.entries.emplace_back(i, v);
  }
  return x;
}

Gradient loss_and_gradient(const Model& model, std::span<const Example> batch) {
  if (batch.empty()) throw EmptyInput("loss_and_gradient needs a nonempty batch");
  Gradient g;
  g.weights.assign(model.weights.size(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  double data_loss = 0.0;
  for (const Example& ex : batch) {
    require_same_dims(model, ex.x);
    const double z = ex.x.dot(model.weights) + model.bias;
    data_loss += bce_from_logit(z, ex.label);
    const double residual = (sigmoid(z) - ex.label) * inv_n;
    for (const auto& [i, v] : ex.x.entries) g.weights[i] += residual * v;
    g.bias += residual;
  }
  const double l2 = model.hp.l2;
  for (std::size_t i = 0; i < g.weights.size(); ++i) g.weights[i] += l2 * model.weights[i];
  g.loss = data_loss * inv_n + 0.5 * l2 * l2_norm_sq(model.weights);
  return g;
}

double loss(const Model& model, std::span<const Example> batch) {
  if (batch.empty()) throw EmptyInput("loss needs a nonempty batch");
  double data_loss = 0.0;
  for (const Example& ex : batch) {
    require_same_dims(model, ex.x);
    data_loss += bce_from_logit(ex.x.dot(model.weights) + model.bias, ex.label);
  }
  return data_loss / static_cast<double>(batch.size()) +
         0.5 * model.hp.l2 * l2_norm_sq(model.weights);
}

Model train_examples(std::span<const Example> examples, const Hyperparams& hp,
                     std::vector<double>* epoch_losses) {
  Model model = Model::zero(hp);
  if (epoch_losses) epoch_losses->clear();
  if (hp.epochs == 0) return model;

  bool seen[2] = {false, false};
  for (const Example& ex : examples) {
    if (ex.label != 0 && ex.label != 1) throw InvalidArgument("labels must be 0 or 1");
    require_same_dims(model, ex.x);
    seen[ex.label] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw SingleClassCorpus("training data must contain both classes");
  }

  // Weights are kept as scale * v so the L2 shrink is O(1) per step.
  std::vector<double>& v = model.weights;
  double scale = 1.0;
  const double keep = 1.0 - hp.dropout;
  const double decay = 1.0 - hp.lr * hp.l2;

  Rng rng(hp.seed);
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::pair<std::uint32_t, double>> active;

  for (unsigned epoch = 0; epoch < hp.epochs; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    for (const std::size_t idx : order) {
      const Example& ex = examples[idx];
      active.clear();
      for (const auto& [i, x] : ex.x.entries) {
        if (hp.dropout > 0.0 && rng.bernoulli(hp.dropout)) continue;
        active.emplace_back(i, x / keep);
      }
      double z = 0.0;
      for (const auto& [i, x] : active) z += v[i] * x;
      z = z * scale + model.bias;
      const double residual = sigmoid(z) - ex.label;

      scale *= decay;
      const double step = hp.lr * residual / scale;
      for (const auto& [i, x] : active) v[i] -= step * x;
      model.bias -= hp.lr * residual;

      if (scale < 1e-150) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
    }
    if (epoch_losses) {
      Model snapshot = model;
      for (double& w : snapshot.weights) w *= scale;
      epoch_losses->push_back(loss(snapshot, examples));
    }
  }
  if (scale != 1.0) {
    for (double& w : v) w *= scale;
  }
  return model;
}

Model train(std::span<const LabeledText> data, const Hyperparams& hp,
            std::vector<double>* epoch_losses) {
  hp.validate();
  std::vector<Example> examples;
  examples.reserve(data.size());
  for (const LabeledText& item : data) {
    examples.push_back({featurize(item.text, hp), item.label});
  }
  return train_examples(examples, hp, epoch_losses);
}

double predict(const Model& model, const SparseVector& x) {
  require_same_dims(model, x);
  const double p = sigmoid(x.dot(model.weights) + model.bias);
  return std::clamp(p, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

double predict(const Model& model, std::string_view text) {
  return predict(model, featurize(text, model.hp));
}

std::string serialize_model(const Model& model, double prune_threshold) {
  const Hyperparams& hp = model.hp;
  std::vector<std::uint32_t> kept;
  for (std::uint32_t i = 0; i < model.weights.size(); ++i) {
    const double w = model.weights[i];
    const bool drop = prune_threshold > 0.0 ? std::fabs(w) <= prune_threshold
                                            : (w == 0.0 && !std::signbit(w));
    if (!drop) kept.push_back(i);
  }
  std::string out = "tweetpol-model 1\n";
  out += "dims " + std::to_string(hp.dims) + "\n";
  out += "word_ngrams " + std::to_string(hp.word_ngrams.min) + " " +
         std::to_string(hp.word_ngrams.max) + "\n";
  out += "char_ngrams " + std::to_string(hp.char_ngrams.min) + " " +
         std::to_string(hp.char_ngrams.max) + "\n";
  out += "lr " + io::exact(hp.lr) + "\n";
  out += "epochs " + std::to_string(hp.epochs) + "\n";
  out += "l2 " + io::exact(hp.l2) + "\n";
  out += "dropout " + io::exact(hp.dropout) + "\n";
  out += "seed " + std::to_string(hp.seed) + "\n";
  out += "bias " + io::exact(model.bias) + "\n";
  out += "weights " + std::to_string(kept.size()) + "\n";
  for (const std::uint32_t i : kept) {
    out += std::to_string(i);
    out += ' ';
    out += io::exact(model.weights[i]);
    out += '\n';
  }
  return out;
}

Model deserialize_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  const auto expect = [&](std::string_view key) {
    if (!std::getline(in, line)) throw FormatError("model file truncated before " + std::string(key));
    std::string_view view = io::chomp(line);
    if (view.substr(0, key.size() + 1) != std::string(key) + " ") {
      throw FormatError("model file: expected '" + std::string(key) + "'");
    }
    return std::string(view.substr(key.size() + 1));
  };
  const auto pair_of = [](const std::string& s, std::string_view what) {
    const auto space = s.find(' ');
    if (space == std::string::npos) throw FormatError("model file: bad " + std::string(what));
    return NgramRange{static_cast<unsigned>(io::parse_u64(s.substr(0, space), what)),
                      static_cast<unsigned>(io::parse_u64(s.substr(space + 1), what))};
  };

  if (expect("tweetpol-model") != "1") throw FormatError("unsupported model version");
  Hyperparams hp;
  hp.dims = static_cast<std::uint32_t>(io::parse_u64(expect("dims"), "dims"));
  hp.word_ngrams = pair_of(expect("word_ngrams"), "word_ngrams");
  hp.char_ngrams = pair_of(expect("char_ngrams"), "char_ngrams");
  hp.lr = io::parse_double(expect("lr"), "lr");
  hp.epochs = static_cast<unsigned>(io::parse_u64(expect("epochs"), "epochs"));
  hp.l2 = io::parse_double(expect("l2"), "l2");
  hp.dropout = io::parse_double(expect("dropout"), "dropout");
  hp.seed = io::parse_u64(expect("seed"), "seed");
  try {
    hp.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("model file: ") + e.what());
  }
  Model model = Model::zero(hp);
  model.bias = io::parse_double(expect("bias"), "bias");
  const std::uint64_t count = io::parse_u64(expect("weights"), "weights");
  for (std::uint64_t k = 0; k < count; ++k) {
    if (!std::getline(in, line)) throw FormatError("model file truncated in weights");
    const std::string_view view = io::chomp(line);
    const auto space = view.find(' ');
    if (space == std::string_view::npos) throw FormatError("model file: bad weight line");
    const std::uint64_t i = io::parse_u64(view.substr(0, space), "weight index");
    if (i >= hp.dims) throw FormatError("model file: weight index out of range");
    const double w = io::parse_double(view.substr(space + 1), "weight");
    if (!std::isfinite(w)) throw FormatError("model file: non-finite weight");
    model.weights[i] = w;
  }
  while (std::getline(in, line)) {
    if (!io::chomp(line).empty()) throw FormatError("model file: content after the weights");
  }
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model,
                double prune_threshold) {
  io::write_file(path, serialize_model(model, prune_threshold));
}

Model load_model(const std::filesystem::path& path) {
  return deserialize_model(io::read_file(path));
}

}  // namespace tweetpol
