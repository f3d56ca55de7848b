#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spcm/matrix.hpp"

namespace spcm {

enum class Split : std::uint8_t { train, database, query };

std::string to_string(Split s);
Split split_from_string(const std::string &s);

/// Two feature matrices with columns paired index-by-index, optional class
/// labels (evaluation only), and a split tag per column.
struct PairedDataset {
  Matrix x; // D_x x N
  Matrix y; // D_y x N
  std::optional<std::vector<int>> labels;
  std::vector<Split> splits;

  std::size_t size() const { return x.cols(); }
  std::vector<std::size_t> indices_of(Split s) const;
  /// Database columns: the database-tagged ones, or the training columns
  /// when nothing carries the database tag.
  std::vector<std::size_t> database_indices() const;
};

/// Training-set statistics needed to preprocess database/query columns
/// later. Normalization mode is fixed: per-column L2, then mean centering.
struct PreprocessStats {
  std::vector<double> mean_x;
  std::vector<double> mean_y;
};

/// L2-normalizes every column of both modalities to unit length, then
/// subtracts the per-dimension mean computed over the training columns
/// only. Returns the processed dataset plus the stats for query-time use.
std::pair<PairedDataset, PreprocessStats> normalize_center(const PairedDataset &data);

/// Query-time path: L2-normalize each raw column and subtract the stored
/// training mean. Matches what normalize_center did to training columns.
Matrix preprocess_columns(const Matrix &raw, std::span<const double> mean);

/// Binary matrix file ("SPCX"): magic, version u32, rows and cols as u64,
/// then little-endian doubles in row-major order. Round-trips bit-exactly.
void save_matrix(const std::filesystem::path &path, const Matrix &m);
Matrix load_matrix(const std::filesystem::path &path);

/// CSV matrix: header row is the dimension count, then one sample per row.
/// Comma-separated, '.' decimal, no quoting. Samples become columns.
void save_matrix_csv(const std::filesystem::path &path, const Matrix &m);
Matrix load_matrix_csv(const std::filesystem::path &path);

/// Label sidecar: lines of "index,class_id" covering every column exactly once.
void save_labels_csv(const std::filesystem::path &path, const std::vector<int> &labels);
std::vector<int> load_labels_csv(const std::filesystem::path &path, std::size_t n);

/// Split sidecar: lines of "index,tag" with tag in {train,database,query}.
void save_splits_csv(const std::filesystem::path &path, const std::vector<Split> &splits);
std::vector<Split> load_splits_csv(const std::filesystem::path &path, std::size_t n);

struct DatasetPaths {
  std::filesystem::path x;
  std::filesystem::path y;
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> splits;
};

/// Loads the paired matrices (format by extension: ".csv" is the CSV
/// dialect, anything else the SPCX binary) plus optional sidecars. Columns
/// default to the train split when no split file is given.
PairedDataset load_dataset(const DatasetPaths &paths);

/// Seeded synthetic paired-modality generator: one independent standard
/// normal center per cluster and modality, samples are center plus
/// N(0, noise_sigma^2) noise, the cluster id is the class label. The last
/// round(query_fraction * per_cluster) samples of each cluster are tagged
/// query, the rest train.
PairedDataset synth_clusters(std::size_t n_clusters, std::size_t per_cluster, std::size_t d_x,
                             std::size_t d_y, double noise_sigma, std::uint64_t seed,
                             double query_fraction = 0.25);

/// Copies the given columns, preserving order.
Matrix select_columns(const Matrix &m, const std::vector<std::size_t> &cols);

} // namespace spcm
