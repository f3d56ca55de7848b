#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spcm {

/// Relevance bits over a ranked list: rel[k] is 1 when the k-th retrieved
/// item shares the query's class label.
using Relevance = std::vector<std::uint8_t>;

/// AP = sum_k P(k) r(k) / sum_k r(k) over the list (truncated to `cutoff`
/// entries when cutoff > 0). A list with no relevant entries scores 0.
double average_precision(const Relevance &rel, std::size_t cutoff = 0);

/// Arithmetic mean of per-query AP values.
double mean_average_precision(const std::vector<Relevance> &queries, std::size_t cutoff = 0);

struct PRCurve {
  std::vector<double> recall;    // strictly ascending levels in [0, 1]
  std::vector<double> precision; // interpolated precision at each level
};

/// The standard 11-point grid 0.0, 0.1, ..., 1.0.
std::vector<double> default_recall_levels();

/// Interpolated precision-recall curve: at each recall level, the maximum
/// precision attained at or beyond that recall. Requires at least one
/// relevant entry.
PRCurve precision_recall(const Relevance &rel, std::span<const double> levels);

/// Relevance bits for a ranked list of database indices.
Relevance relevance_bits(std::span<const std::size_t> ranked_indices, int query_label,
                         const std::vector<int> &db_labels);

/// Everything the metrics report carries for one retrieval task. The PR
/// curve averages interpolated precision over the queries that have at
/// least one relevant database item.
struct TaskMetrics {
  std::string task;
  double map = 0.0;
  std::vector<double> per_query_ap;
  PRCurve pr;
  std::size_t cutoff = 0; // 0 = full database ranking
};

TaskMetrics evaluate_rankings(const std::string &task,
                              const std::vector<std::vector<std::size_t>> &rankings,
                              const std::vector<int> &query_labels,
                              const std::vector<int> &db_labels, std::size_t cutoff = 0);

/// JSON metrics document; each extra is a (key, raw JSON) pair merged into
/// the top-level object (the CLI passes the effective config through here).
std::string metrics_to_json(const TaskMetrics &metrics,
                            const std::vector<std::pair<std::string, std::string>> &extras = {});

/// Two-column "recall,precision" CSV for external plotting.
void write_pr_csv(const std::filesystem::path &path, const PRCurve &curve);

} // namespace spcm
