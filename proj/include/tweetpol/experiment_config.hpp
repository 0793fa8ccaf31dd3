#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "tweetpol/ablation.hpp"

namespace tweetpol {

/// An ExperimentSpec plus the corpus it runs on, as read from a JSON file.
struct ExperimentConfig {
  ExperimentSpec spec;
  std::optional<std::filesystem::path> corpus;
};

/// Strict JSON reader: unknown keys and wrongly typed values are FormatError.
/// Recognized top-level keys: corpus, seed, val_fraction, backend
/// ("baseline" | "external"), predictions_dir, tol_gender, tol_len_rel,
/// max_attempts, account_level_split, threshold, parallel, hyperparams, grid.
/// Relative paths resolve against `base_dir`.
ExperimentConfig parse_experiment_config(std::string_view json,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace tweetpol
