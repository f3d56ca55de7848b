#include "spcm/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "binio.hpp"

namespace spcm {

namespace {

double parse_double(std::string_view field, std::size_t line_no, const char *what) {
  double value = 0.0;
  const char *first = field.data();
  const char *last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(std::string(what) + ": malformed number '" + std::string(field) +
                     "' at line " + std::to_string(line_no));
  }
  return value;
}

long parse_long(std::string_view field, std::size_t line_no, const char *what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(std::string(what) + ": malformed integer '" + std::string(field) +
                     "' at line " + std::to_string(line_no));
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

void normalize_columns_in_place(Matrix &m, const char *modality) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) norm_sq += m(i, j) * m(i, j);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) {
      throw ParameterError(std::string("normalize: column ") + std::to_string(j) + " of " +
                           modality + " has zero norm");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= norm;
  }
}

std::vector<double> train_mean(const Matrix &m, const std::vector<std::size_t> &train_cols) {
  std::vector<double> mean(m.rows(), 0.0);
  for (std::size_t j : train_cols)
    for (std::size_t i = 0; i < m.rows(); ++i) mean[i] += m(i, j);
  for (double &v : mean) v /= static_cast<double>(train_cols.size());
  return mean;
}

void subtract_mean(Matrix &m, const std::vector<double> &mean) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) -= mean[i];
}

} // namespace

std::string to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::database: return "database";
    case Split::query: return "query";
  }
  return "train";
}

Split split_from_string(const std::string &s) {
  if (s == "train") return Split::train;
  if (s == "database") return Split::database;
  if (s == "query") return Split::query;
  throw ParseError("unknown split tag '" + s + "'");
}

std::vector<std::size_t> PairedDataset::indices_of(Split s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < splits.size(); ++i)
    if (splits[i] == s) out.push_back(i);
  return out;
}

std::vector<std::size_t> PairedDataset::database_indices() const {
  std::vector<std::size_t> db = indices_of(Split::database);
  return db.empty() ? indices_of(Split::train) : db;
}

std::pair<PairedDataset, PreprocessStats> normalize_center(const PairedDataset &data) {
  if (data.x.cols() != data.y.cols()) {
    throw DimensionError("normalize_center: modality column counts differ");
  }
  if (data.splits.size() != data.x.cols()) {
    throw DimensionError("normalize_center: split tags do not cover every column");
  }

  PairedDataset out = data;
  normalize_columns_in_place(out.x, "X");
  normalize_columns_in_place(out.y, "Y");

  const std::vector<std::size_t> train_cols = out.indices_of(Split::train);
  if (train_cols.empty()) {
    throw ParameterError("normalize_center: dataset has zero training columns");
  }

  PreprocessStats stats;
  stats.mean_x = train_mean(out.x, train_cols);
  stats.mean_y = train_mean(out.y, train_cols);
  subtract_mean(out.x, stats.mean_x);
  subtract_mean(out.y, stats.mean_y);
  return {std::move(out), std::move(stats)};
}

Matrix preprocess_columns(const Matrix &raw, std::span<const double> mean) {
  if (mean.size() != raw.rows()) {
    throw DimensionError("preprocess_columns: mean size " + std::to_string(mean.size()) +
                         " does not match dimension " + std::to_string(raw.rows()));
  }
  Matrix out = raw;
  normalize_columns_in_place(out, "input");
  for (std::size_t j = 0; j < out.cols(); ++j)
    for (std::size_t i = 0; i < out.rows(); ++i) out(i, j) -= mean[i];
  return out;
}

void save_matrix(const std::filesystem::path &path, const Matrix &m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("save_matrix: cannot open " + path.string());
  binio::write_magic(os, "SPCX");
  binio::write_u32(os, 1);
  binio::write_u64(os, m.rows());
  binio::write_u64(os, m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) binio::write_f64(os, m.data()[i]);
  if (!os) throw IoError("save_matrix: write failed for " + path.string());
}

Matrix load_matrix(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("load_matrix: cannot open " + path.string());
  binio::expect_magic(is, "SPCX", "load_matrix");
  const std::uint32_t version = binio::read_u32(is, "load_matrix");
  if (version != 1) {
    throw ParseError("load_matrix: unsupported format version " + std::to_string(version));
  }
  const std::uint64_t rows = binio::read_u64(is, "load_matrix");
  const std::uint64_t cols = binio::read_u64(is, "load_matrix");
  if (rows == 0 || cols == 0) {
    throw ParseError("load_matrix: zero dimension in header");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = binio::read_f64(is, "load_matrix");
  return m;
}

void save_matrix_csv(const std::filesystem::path &path, const Matrix &m) {
  std::ofstream os(path);
  if (!os) throw IoError("save_matrix_csv: cannot open " + path.string());
  os << m.rows() << "\n";
  char buf[64];
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      os << (i ? "," : "") << buf;
    }
    os << "\n";
  }
  if (!os) throw IoError("save_matrix_csv: write failed for " + path.string());
}

Matrix load_matrix_csv(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) throw IoError("load_matrix_csv: cannot open " + path.string());

  std::string line;
  if (!std::getline(is, line)) {
    throw ParseError("load_matrix_csv: empty file " + path.string());
  }
  const long dims = parse_long(strip_cr(line), 1, "load_matrix_csv header");
  if (dims < 1) {
    throw ParseError("load_matrix_csv: header dimension must be positive, got " +
                     std::to_string(dims));
  }

  std::vector<std::vector<double>> samples;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view body = strip_cr(line);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (fields.size() != static_cast<std::size_t>(dims)) {
      throw ParseError("load_matrix_csv: row at line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(dims));
    }
    std::vector<double> sample(dims);
    for (std::size_t i = 0; i < fields.size(); ++i)
      sample[i] = parse_double(fields[i], line_no, "load_matrix_csv");
    samples.push_back(std::move(sample));
  }
  if (samples.empty()) {
    throw ParseError("load_matrix_csv: no sample rows in " + path.string());
  }

  Matrix m(dims, samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j)
    for (std::size_t i = 0; i < static_cast<std::size_t>(dims); ++i) m(i, j) = samples[j][i];
  return m;
}

void save_labels_csv(const std::filesystem::path &path, const std::vector<int> &labels) {
  std::ofstream os(path);
  if (!os) throw IoError("save_labels_csv: cannot open " + path.string());
  for (std::size_t i = 0; i < labels.size(); ++i) os << i << "," << labels[i] << "\n";
  if (!os) throw IoError("save_labels_csv: write failed for " + path.string());
}

std::vector<int> load_labels_csv(const std::filesystem::path &path, std::size_t n) {
  std::ifstream is(path);
  if (!is) throw IoError("load_labels_csv: cannot open " + path.string());

  std::vector<int> labels(n, 0);
  std::vector<bool> seen(n, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view body = strip_cr(line);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (fields.size() != 2) {
      throw ParseError("load_labels_csv: line " + std::to_string(line_no) +
                       " must be 'index,class_id'");
    }
    const long index = parse_long(fields[0], line_no, "load_labels_csv");
    const long cls = parse_long(fields[1], line_no, "load_labels_csv");
    if (index < 0 || static_cast<std::size_t>(index) >= n) {
      throw ParseError("load_labels_csv: index " + std::to_string(index) + " at line " +
                       std::to_string(line_no) + " is out of range [0, " + std::to_string(n) +
                       ")");
    }
    if (seen[index]) {
      throw ParseError("load_labels_csv: duplicate index " + std::to_string(index) + " at line " +
                       std::to_string(line_no));
    }
    seen[index] = true;
    labels[index] = static_cast<int>(cls);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      throw ParseError("load_labels_csv: column " + std::to_string(i) + " has no label");
    }
  }
  return labels;
}

void save_splits_csv(const std::filesystem::path &path, const std::vector<Split> &splits) {
  std::ofstream os(path);
  if (!os) throw IoError("save_splits_csv: cannot open " + path.string());
  for (std::size_t i = 0; i < splits.size(); ++i) os << i << "," << to_string(splits[i]) << "\n";
  if (!os) throw IoError("save_splits_csv: write failed for " + path.string());
}

std::vector<Split> load_splits_csv(const std::filesystem::path &path, std::size_t n) {
  std::ifstream is(path);
  if (!is) throw IoError("load_splits_csv: cannot open " + path.string());

  std::vector<Split> splits(n, Split::train);
  std::vector<bool> seen(n, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view body = strip_cr(line);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (fields.size() != 2) {
      throw ParseError("load_splits_csv: line " + std::to_string(line_no) +
                       " must be 'index,tag'");
    }
    const long index = parse_long(fields[0], line_no, "load_splits_csv");
    if (index < 0 || static_cast<std::size_t>(index) >= n) {
      throw ParseError("load_splits_csv: index " + std::to_string(index) + " at line " +
                       std::to_string(line_no) + " is out of range [0, " + std::to_string(n) +
                       ")");
    }
    if (seen[index]) {
      throw ParseError("load_splits_csv: duplicate index " + std::to_string(index) + " at line " +
                       std::to_string(line_no));
    }
    seen[index] = true;
    try {
      splits[index] = split_from_string(std::string(fields[1]));
    } catch (const ParseError &) {
      throw ParseError("load_splits_csv: unknown tag '" + std::string(fields[1]) + "' at line " +
                       std::to_string(line_no));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      throw ParseError("load_splits_csv: column " + std::to_string(i) + " has no split tag");
    }
  }
  return splits;
}

PairedDataset load_dataset(const DatasetPaths &paths) {
  auto load_one = [](const std::filesystem::path &p) {
    return p.extension() == ".csv" ? load_matrix_csv(p) : load_matrix(p);
  };

  PairedDataset data;
  data.x = load_one(paths.x);
  data.y = load_one(paths.y);
  if (data.x.cols() != data.y.cols()) {
    throw DimensionError("load_dataset: X has " + std::to_string(data.x.cols()) +
                         " columns, Y has " + std::to_string(data.y.cols()));
  }
  if (!data.x.all_finite() || !data.y.all_finite()) {
    throw ParseError("load_dataset: non-finite feature values");
  }
  if (paths.labels) data.labels = load_labels_csv(*paths.labels, data.size());
  data.splits.assign(data.size(), Split::train);
  if (paths.splits) data.splits = load_splits_csv(*paths.splits, data.size());
  return data;
}

PairedDataset synth_clusters(std::size_t n_clusters, std::size_t per_cluster, std::size_t d_x,
                             std::size_t d_y, double noise_sigma, std::uint64_t seed,
                             double query_fraction) {
  if (n_clusters < 2) throw ParameterError("synth_clusters: need at least 2 clusters");
  if (per_cluster < 2) throw ParameterError("synth_clusters: need at least 2 samples per cluster");
  if (d_x < 1 || d_y < 1) throw ParameterError("synth_clusters: dimensions must be positive");
  if (noise_sigma < 0.0) throw ParameterError("synth_clusters: noise_sigma must be nonnegative");
  if (query_fraction < 0.0 || query_fraction >= 1.0) {
    throw ParameterError("synth_clusters: query_fraction must be in [0, 1)");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> standard_normal(0.0, 1.0);

  std::vector<std::vector<double>> centers_x(n_clusters, std::vector<double>(d_x));
  std::vector<std::vector<double>> centers_y(n_clusters, std::vector<double>(d_y));
  for (std::size_t c = 0; c < n_clusters; ++c) {
    for (double &v : centers_x[c]) v = standard_normal(rng);
    for (double &v : centers_y[c]) v = standard_normal(rng);
  }

  const std::size_t n = n_clusters * per_cluster;
  std::size_t n_query = static_cast<std::size_t>(std::llround(query_fraction * per_cluster));
  n_query = std::min(n_query, per_cluster - 1);

  PairedDataset data;
  data.x = Matrix(d_x, n);
  data.y = Matrix(d_y, n);
  data.labels = std::vector<int>(n);
  data.splits.assign(n, Split::train);

  for (std::size_t c = 0; c < n_clusters; ++c) {
    for (std::size_t s = 0; s < per_cluster; ++s) {
      const std::size_t col = c * per_cluster + s;
      for (std::size_t i = 0; i < d_x; ++i)
        data.x(i, col) = centers_x[c][i] + noise_sigma * standard_normal(rng);
      for (std::size_t i = 0; i < d_y; ++i)
        data.y(i, col) = centers_y[c][i] + noise_sigma * standard_normal(rng);
      (*data.labels)[col] = static_cast<int>(c);
      data.splits[col] = (s >= per_cluster - n_query) ? Split::query : Split::train;
    }
  }
  return data;
}

Matrix select_columns(const Matrix &m, const std::vector<std::size_t> &cols) {
  Matrix out(m.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, cols[j]);
  return out;
}

} // namespace spcm
