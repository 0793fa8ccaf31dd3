#include "tweetpol/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tweetpol/errors.hpp"
#include "tweetpol/text_io.hpp"

namespace tweetpol {
namespace {

double ratio(std::uint64_t num, std::uint64_t den, bool* undefined) {
  if (den == 0) {
    if (undefined) *undefined = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

ConfusionMatrix confusion(std::span<const double> preds, std::span<const int> labels,
                          double threshold) {
  if (preds.size() != labels.size()) {
    throw LengthMismatch("confusion: " + std::to_string(preds.size()) +
                         " predictions vs " + std::to_string(labels.size()) + " labels");
  }
  if (preds.empty()) throw EmptyInput("confusion: no examples");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw InvalidArgument("confusion: label " + std::to_string(labels[i]) + " is not 0 or 1");
    }
    if (std::isnan(preds[i])) throw InvalidArgument("confusion: NaN prediction");
    const bool predicted_female = preds[i] >= threshold;
    const bool female = labels[i] == 1;
    if (predicted_female && female) ++cm.tp;
    else if (predicted_female) ++cm.fp;
    else if (female) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

MetricsRow scores(const ConfusionMatrix& cm, std::string config_name) {
  MetricsRow row;
  row.config_name = std::move(config_name);
  row.cm = cm;
  row.accuracy = ratio(cm.tp + cm.tn, cm.total(), nullptr);
  row.precision = ratio(cm.tp, cm.tp + cm.fp, &row.precision_undefined);
  row.recall = ratio(cm.tp, cm.tp + cm.fn, &row.recall_undefined);
  return row;
}

ClassScores class_scores(const ConfusionMatrix& cm) {
  ClassScores s;
  s.female_precision = ratio(cm.tp, cm.tp + cm.fp, nullptr);
  s.female_recall = ratio(cm.tp, cm.tp + cm.fn, nullptr);
  s.male_precision = ratio(cm.tn, cm.tn + cm.fn, nullptr);
  s.male_recall = ratio(cm.tn, cm.tn + cm.fp, nullptr);
  s.macro_precision = 0.5 * (s.female_precision + s.male_precision);
  s.macro_recall = 0.5 * (s.female_recall + s.male_recall);
  return s;
}

std::string render_table(std::span<const MetricsRow> rows) {
  if (rows.empty()) throw EmptyInput("render_table: no rows");
  std::size_t name_width = 6;  // "config"
  for (const MetricsRow& r : rows) name_width = std::max(name_width, r.config_name.size());
  constexpr std::size_t kCol = 10;
  std::string out = pad_right("config", name_width) + pad_left("Accuracy", kCol + 2) +
                    pad_left("Precision", kCol + 2) + pad_left("Recall", kCol + 2) + "\n";
  out += std::string(name_width + 3 * (kCol + 2), '-') + "\n";
  for (const MetricsRow& r : rows) {
    out += pad_right(r.config_name, name_width);
    out += pad_left(io::fixed(r.accuracy, 4), kCol + 2);
    out += pad_left(io::fixed(r.precision, 4) + (r.precision_undefined ? "*" : ""), kCol + 2);
    out += pad_left(io::fixed(r.recall, 4) + (r.recall_undefined ? "*" : ""), kCol + 2);
    out += "\n";
  }
  const bool any_undefined = std::any_of(rows.begin(), rows.end(), [](const MetricsRow& r) {
    return r.precision_undefined || r.recall_undefined;
  });
  if (any_undefined) out += "* undefined (zero denominator), reported as 0\n";
  return out;
}

std::string render_records(std::span<const MetricsRow> rows) {
  std::string out = "config_name,accuracy,precision,recall,tp,fp,fn,tn\n";
  for (const MetricsRow& r : rows) {
    out += csv_field(r.config_name) + "," + io::fixed(r.accuracy, 4) + "," +
           io::fixed(r.precision, 4) + "," + io::fixed(r.recall, 4) + "," +
           std::to_string(r.cm.tp) + "," + std::to_string(r.cm.fp) + "," +
           std::to_string(r.cm.fn) + "," + std::to_string(r.cm.tn) + "\n";
  }
  return out;
}

std::string render_class_records(std::span<const MetricsRow> rows) {
  std::string out =
      "config_name,female_precision,female_recall,male_precision,male_recall,"
      "macro_precision,macro_recall\n";
  for (const MetricsRow& r : rows) {
    const ClassScores s = class_scores(r.cm);
    out += csv_field(r.config_name);
    for (const double v : {s.female_precision, s.female_recall, s.male_precision,
                           s.male_recall, s.macro_precision, s.macro_recall}) {
      out += "," + io::fixed(v, 4);
    }
    out += "\n";
  }
  return out;
}

std::string render_confusion(const ConfusionMatrix& cm, const std::string& title) {
  constexpr std::size_t kLabel = 15;
  constexpr std::size_t kCol = 18;
  std::string out = title + "\n";
  out += pad_right("", kLabel) + pad_left("predicted female", kCol) +
         pad_left("predicted male", kCol) + "\n";
  out += pad_right("actual female", kLabel) + pad_left(std::to_string(cm.tp), kCol) +
         pad_left(std::to_string(cm.fn), kCol) + "\n";
  out += pad_right("actual male", kLabel) + pad_left(std::to_string(cm.fp), kCol) +
         pad_left(std::to_string(cm.tn), kCol) + "\n";
  return out;
}

std::string render_confusion_records(const ConfusionMatrix& cm) {
  std::string out = "actual,predicted,count\n";
  out += "female,female," + std::to_string(cm.tp) + "\n";
  out += "female,male," + std::to_string(cm.fn) + "\n";
  out += "male,female," + std::to_string(cm.fp) + "\n";
  out += "male,male," + std::to_string(cm.tn) + "\n";
  return out;
}

}  // namespace tweetpol
