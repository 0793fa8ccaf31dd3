#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tweetpol {

/// Positive class = female = label 1.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct MetricsRow {
  std::string config_name;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  // Set when the denominator was zero and the metric was reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  ConfusionMatrix cm;  // all zero for rows not derived from a matrix
};

inline constexpr double kDefaultThreshold = 0.5;

/// p >= threshold predicts female. Throws LengthMismatch / EmptyInput.
ConfusionMatrix confusion(std::span<const double> preds, std::span<const int> labels,
                          double threshold = kDefaultThreshold);

MetricsRow scores(const ConfusionMatrix& cm, std::string config_name = {});

/// Precision/recall from both sides of the matrix plus their macro means.
struct ClassScores {
  double female_precision = 0.0;
  double female_recall = 0.0;
  double male_precision = 0.0;
  double male_recall = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
};
ClassScores class_scores(const ConfusionMatrix& cm);

/// Fixed-width table, 4 decimals, rows in the given order. Throws EmptyInput.
std::string render_table(std::span<const MetricsRow> rows);

/// `config_name,accuracy,precision,recall,tp,fp,fn,tn` with a header line.
std::string render_records(std::span<const MetricsRow> rows);

/// Per-class and macro scores for each row, one CSV line per row.
std::string render_class_records(std::span<const MetricsRow> rows);

/// 2x2 confusion matrix laid out actual (rows) x predicted (columns).
std::string render_confusion(const ConfusionMatrix& cm, const std::string& title);

/// `actual,predicted,count` records for external plotting.
std::string render_confusion_records(const ConfusionMatrix& cm);

}  // namespace tweetpol
