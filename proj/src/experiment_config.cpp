#include "tweetpol/experiment_config.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "tweetpol/errors.hpp"
#include "tweetpol/text_io.hpp"

namespace tweetpol {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    const std::set<std::string, std::less<>>& known) {
  if (!obj.is_object()) throw FormatError(std::string(where) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      throw FormatError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

// nlohmann converts between number kinds silently (-1 to uint64, 1.5 to 1),
// so the JSON type is checked before converting.
template <class T>
bool has_type(const json& v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v.is_boolean();
  } else if constexpr (std::is_same_v<T, std::string>) {
    return v.is_string();
  } else if constexpr (std::is_floating_point_v<T>) {
    return v.is_number();
  } else if constexpr (std::is_unsigned_v<T>) {
    return v.is_number_unsigned() && v.get<std::uint64_t>() <= std::numeric_limits<T>::max();
  } else {
    return v.is_array() && std::all_of(v.begin(), v.end(), has_type<typename T::value_type>);
  }
}

template <class T>
T get(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) throw FormatError(std::string(where) + ": missing '" + key + "'");
  const json& v = obj.at(key);
  if (!has_type<T>(v)) throw FormatError(std::string(where) + ": bad value for '" + key + "'");
  return v.get<T>();
}

NgramRange ngram_range(const json& obj, const char* key) {
  const auto v = get<std::vector<unsigned>>(obj, key, "hyperparams");
  if (v.size() != 2) throw FormatError(std::string("hyperparams: '") + key + "' must be [min, max]");
  return {v[0], v[1]};
}

SymbolMode symbol_mode(const json& obj, const char* key) {
  const auto s = get<std::string>(obj, key, "grid entry");
  const auto mode = parse_symbol_mode(s);
  if (!mode) throw FormatError("grid entry: unknown symbol mode '" + s + "'");
  return *mode;
}

Hyperparams parse_hyperparams(const json& obj) {
  reject_unknown(obj, "hyperparams",
                 {"dims", "word_ngrams", "char_ngrams", "lr", "epochs", "l2", "dropout", "seed"});
  Hyperparams hp;
  if (obj.contains("dims")) hp.dims = get<std::uint32_t>(obj, "dims", "hyperparams");
  if (obj.contains("word_ngrams")) hp.word_ngrams = ngram_range(obj, "word_ngrams");
  if (obj.contains("char_ngrams")) hp.char_ngrams = ngram_range(obj, "char_ngrams");
  if (obj.contains("lr")) hp.lr = get<double>(obj, "lr", "hyperparams");
  if (obj.contains("epochs")) hp.epochs = get<unsigned>(obj, "epochs", "hyperparams");
  if (obj.contains("l2")) hp.l2 = get<double>(obj, "l2", "hyperparams");
  if (obj.contains("dropout")) hp.dropout = get<double>(obj, "dropout", "hyperparams");
  if (obj.contains("seed")) hp.seed = get<std::uint64_t>(obj, "seed", "hyperparams");
  try {
    hp.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("hyperparams: ") + e.what());
  }
  return hp;
}

NamedConfig parse_grid_entry(const json& obj) {
  reject_unknown(obj, "grid entry",
                 {"name", "strip_mentions", "emoji_mode", "emoticon_mode", "drop_retweets"});
  NamedConfig nc;
  nc.name = get<std::string>(obj, "name", "grid entry");
  if (nc.name.empty()) throw FormatError("grid entry: empty name");
  if (obj.contains("strip_mentions")) {
    nc.config.strip_mentions = get<bool>(obj, "strip_mentions", "grid entry");
  }
  if (obj.contains("emoji_mode")) nc.config.emoji_mode = symbol_mode(obj, "emoji_mode");
  // The emoticon mode follows the emoji mode unless given.
  nc.config.emoticon_mode = obj.contains("emoticon_mode") ? symbol_mode(obj, "emoticon_mode")
                                                          : nc.config.emoji_mode;
  if (obj.contains("drop_retweets")) {
    nc.config.drop_retweets = get<bool>(obj, "drop_retweets", "grid entry");
  }
  return nc;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("experiment config: ") + e.what());
  }
  reject_unknown(root, "experiment config",
                 {"corpus", "seed", "val_fraction", "backend", "predictions_dir", "tol_gender",
                  "tol_len_rel", "max_attempts", "account_level_split", "threshold", "parallel",
                  "hyperparams", "grid"});
  const auto path_of = [&](const char* key) {
    std::filesystem::path p = get<std::string>(root, key, "experiment config");
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  constexpr std::string_view top = "experiment config";

  ExperimentConfig out;
  ExperimentSpec& spec = out.spec;
  if (root.contains("corpus")) out.corpus = path_of("corpus");
  if (root.contains("seed")) spec.seed = get<std::uint64_t>(root, "seed", top);
  if (root.contains("val_fraction")) spec.val_fraction = get<double>(root, "val_fraction", top);
  if (root.contains("backend")) {
    const auto b = get<std::string>(root, "backend", top);
    if (b == "baseline") {
      spec.backend = Backend::baseline;
    } else if (b == "external" || b == "external_predictions") {
      spec.backend = Backend::external_predictions;
    } else {
      throw FormatError("experiment config: unknown backend '" + b + "'");
    }
  }
  if (root.contains("predictions_dir")) spec.predictions_dir = path_of("predictions_dir");
  if (root.contains("tol_gender")) spec.tol_gender = get<double>(root, "tol_gender", top);
  if (root.contains("tol_len_rel")) spec.tol_len_rel = get<double>(root, "tol_len_rel", top);
  if (root.contains("max_attempts")) spec.max_attempts = get<unsigned>(root, "max_attempts", top);
  if (root.contains("account_level_split")) {
    spec.account_level_split = get<bool>(root, "account_level_split", top);
  }
  if (root.contains("threshold")) spec.threshold = get<double>(root, "threshold", top);
  if (root.contains("parallel")) spec.parallel = get<bool>(root, "parallel", top);
  if (!(spec.val_fraction > 0.0 && spec.val_fraction < 1.0)) {
    throw FormatError("experiment config: 'val_fraction' must lie strictly between 0 and 1");
  }
  if (!(spec.tol_gender >= 0.0) || !(spec.tol_len_rel >= 0.0)) {
    throw FormatError("experiment config: tolerances must be >= 0");
  }
  if (!(spec.threshold >= 0.0 && spec.threshold <= 1.0)) {
    throw FormatError("experiment config: 'threshold' must lie in [0, 1]");
  }
  if (spec.max_attempts == 0) throw FormatError("experiment config: 'max_attempts' must be >= 1");
  if (root.contains("hyperparams")) spec.hp = parse_hyperparams(root.at("hyperparams"));
  if (root.contains("grid")) {
    const json& grid = root.at("grid");
    if (!grid.is_array() || grid.empty()) {
      throw FormatError("experiment config: 'grid' must be a nonempty array");
    }
    spec.grid.clear();
    std::set<std::string> names;
    for (const json& entry : grid) {
      spec.grid.push_back(parse_grid_entry(entry));
      if (!names.insert(spec.grid.back().name).second) {
        throw FormatError("experiment config: duplicate grid name '" + spec.grid.back().name + "'");
      }
    }
  }
  return out;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(io::read_file(path), path.parent_path());
}

}  // namespace tweetpol
