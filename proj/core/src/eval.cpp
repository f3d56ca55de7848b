#include "spcm/eval.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "spcm/errors.hpp"

namespace spcm {

double average_precision(const Relevance &rel, std::size_t cutoff) {
  if (rel.empty()) {
    throw ParameterError("average_precision: empty ranked list");
  }
  const std::size_t length = cutoff > 0 ? std::min(cutoff, rel.size()) : rel.size();
  double ap_sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < length; ++k) {
    if (rel[k]) {
      ++hits;
      ap_sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  return hits == 0 ? 0.0 : ap_sum / static_cast<double>(hits);
}

double mean_average_precision(const std::vector<Relevance> &queries, std::size_t cutoff) {
  if (queries.empty()) {
    throw ParameterError("mean_average_precision: no queries");
  }
  double sum = 0.0;
  for (const Relevance &rel : queries) sum += average_precision(rel, cutoff);
  return sum / static_cast<double>(queries.size());
}

std::vector<double> default_recall_levels() {
  std::vector<double> levels(11);
  for (int i = 0; i <= 10; ++i) levels[i] = 0.1 * i;
  return levels;
}

PRCurve precision_recall(const Relevance &rel, std::span<const double> levels) {
  if (rel.empty()) {
    throw ParameterError("precision_recall: empty ranked list");
  }
  std::size_t total_relevant = 0;
  for (std::uint8_t r : rel) total_relevant += r;
  if (total_relevant == 0) {
    throw ParameterError("precision_recall: no relevant documents, curve undefined");
  }

  PRCurve curve;
  curve.recall.assign(levels.begin(), levels.end());
  curve.precision.resize(levels.size(), 0.0);

  std::size_t hits = 0;
  std::vector<double> recall_at(rel.size());
  std::vector<double> precision_at(rel.size());
  for (std::size_t k = 0; k < rel.size(); ++k) {
    hits += rel[k];
    recall_at[k] = static_cast<double>(hits) / static_cast<double>(total_relevant);
    precision_at[k] = static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  for (std::size_t li = 0; li < levels.size(); ++li) {
    double best = 0.0;
    for (std::size_t k = 0; k < rel.size(); ++k)
      if (recall_at[k] >= curve.recall[li]) best = std::max(best, precision_at[k]);
    curve.precision[li] = best;
  }
  return curve;
}

Relevance relevance_bits(std::span<const std::size_t> ranked_indices, int query_label,
                         const std::vector<int> &db_labels) {
  Relevance rel(ranked_indices.size());
  for (std::size_t k = 0; k < ranked_indices.size(); ++k) {
    const std::size_t idx = ranked_indices[k];
    if (idx >= db_labels.size()) {
      throw DimensionError("relevance_bits: ranked index " + std::to_string(idx) +
                           " outside database of size " + std::to_string(db_labels.size()));
    }
    rel[k] = db_labels[idx] == query_label ? 1 : 0;
  }
  return rel;
}

TaskMetrics evaluate_rankings(const std::string &task,
                              const std::vector<std::vector<std::size_t>> &rankings,
                              const std::vector<int> &query_labels,
                              const std::vector<int> &db_labels, std::size_t cutoff) {
  if (rankings.empty()) {
    throw ParameterError("evaluate_rankings: no queries");
  }
  if (rankings.size() != query_labels.size()) {
    throw DimensionError("evaluate_rankings: " + std::to_string(rankings.size()) +
                         " rankings but " + std::to_string(query_labels.size()) +
                         " query labels");
  }

  TaskMetrics out;
  out.task = task;
  out.cutoff = cutoff;
  out.per_query_ap.reserve(rankings.size());

  const std::vector<double> levels = default_recall_levels();
  std::vector<double> precision_sum(levels.size(), 0.0);
  std::size_t curve_queries = 0;

  for (std::size_t q = 0; q < rankings.size(); ++q) {
    const Relevance rel = relevance_bits(rankings[q], query_labels[q], db_labels);
    out.per_query_ap.push_back(average_precision(rel, cutoff));
    bool any = false;
    for (std::uint8_t r : rel)
      if (r) {
        any = true;
        break;
      }
    if (any) {
      const PRCurve curve = precision_recall(rel, levels);
      for (std::size_t i = 0; i < levels.size(); ++i) precision_sum[i] += curve.precision[i];
      ++curve_queries;
    }
  }

  double ap_sum = 0.0;
  for (double ap : out.per_query_ap) ap_sum += ap;
  out.map = ap_sum / static_cast<double>(out.per_query_ap.size());

  out.pr.recall = levels;
  out.pr.precision.resize(levels.size(), 0.0);
  if (curve_queries > 0) {
    for (std::size_t i = 0; i < levels.size(); ++i)
      out.pr.precision[i] = precision_sum[i] / static_cast<double>(curve_queries);
  }
  return out;
}

std::string metrics_to_json(const TaskMetrics &metrics,
                            const std::vector<std::pair<std::string, std::string>> &extras) {
  nlohmann::json doc;
  doc["task"] = metrics.task;
  doc["map"] = metrics.map;
  doc["cutoff"] = metrics.cutoff;
  doc["queries"] = metrics.per_query_ap.size();
  doc["per_query_ap"] = metrics.per_query_ap;
  doc["pr_curve"]["recall"] = metrics.pr.recall;
  doc["pr_curve"]["precision"] = metrics.pr.precision;
  for (const auto &[key, raw] : extras) doc[key] = nlohmann::json::parse(raw);
  return doc.dump(2);
}

void write_pr_csv(const std::filesystem::path &path, const PRCurve &curve) {
  std::ofstream os(path);
  if (!os) throw IoError("write_pr_csv: cannot open " + path.string());
  os << "recall,precision\n";
  for (std::size_t i = 0; i < curve.recall.size(); ++i)
    os << curve.recall[i] << "," << curve.precision[i] << "\n";
  if (!os) throw IoError("write_pr_csv: write failed for " + path.string());
}

} // namespace spcm
