#include "spcm/hashing.hpp"

#include <bit>
#include <fstream>
#include <string>

#include "binio.hpp"
#include "spcm/dataio.hpp"

namespace spcm {

HashCodes encode(const Matrix &projection, std::span<const double> mean, const Matrix &features) {
  const std::size_t h = projection.rows();
  const std::size_t d = projection.cols();
  if (features.rows() != d) {
    throw DimensionError("encode: projection expects dimension " + std::to_string(d) +
                         ", features have " + std::to_string(features.rows()));
  }
  if (mean.size() != d) {
    throw DimensionError("encode: mean vector has size " + std::to_string(mean.size()) +
                         ", expected " + std::to_string(d));
  }

  const Matrix prepared = preprocess_columns(features, mean);
  HashCodes codes(h, prepared.cols());
  std::vector<double> column(d);
  for (std::size_t m = 0; m < prepared.cols(); ++m) {
    for (std::size_t r = 0; r < d; ++r) column[r] = prepared(r, m);
    for (std::size_t b = 0; b < h; ++b) {
      const double *pb = projection.data() + b * d;
      double s = 0.0;
      for (std::size_t r = 0; r < d; ++r) s += pb[r] * column[r];
      codes.set_bit(m, b, s >= 0.0);
    }
  }
  return codes;
}

unsigned hamming(CodeView a, CodeView b) {
  if (a.bits != b.bits) {
    throw DimensionError("hamming: code lengths " + std::to_string(a.bits) + " and " +
                         std::to_string(b.bits) + " differ");
  }
  unsigned d = 0;
  for (std::size_t w = 0; w < a.words.size(); ++w) d += std::popcount(a.words[w] ^ b.words[w]);
  return d;
}

RankedList rank(CodeView query, const HashCodes &db, std::size_t query_id) {
  if (db.count() == 0) {
    throw ParameterError("rank: database is empty");
  }
  const std::size_t n = db.count();
  std::vector<unsigned> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = hamming(query, db.code(i));

  // Counting sort over distance keeps equal-distance entries in index order.
  std::vector<std::size_t> bucket_sizes(db.bits() + 2, 0);
  for (unsigned d : dist) ++bucket_sizes[d + 1];
  for (std::size_t d = 1; d < bucket_sizes.size(); ++d) bucket_sizes[d] += bucket_sizes[d - 1];

  RankedList out;
  out.query_id = query_id;
  out.indices.resize(n);
  out.distances.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pos = bucket_sizes[dist[i]]++;
    out.indices[pos] = i;
    out.distances[pos] = dist[i];
  }
  return out;
}

void save_codes(const std::filesystem::path &path, const HashCodes &codes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("save_codes: cannot open " + path.string());

  binio::write_magic(os, "SPCH");
  binio::write_u32(os, 1);
  binio::write_u64(os, codes.bits());
  binio::write_u64(os, codes.count());
  for (std::uint64_t w : codes.raw_words()) binio::write_u64(os, w);
  if (!os) throw IoError("save_codes: write failed for " + path.string());
}

HashCodes load_codes(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("load_codes: cannot open " + path.string());

  binio::expect_magic(is, "SPCH", "load_codes");
  const std::uint32_t version = binio::read_u32(is, "load_codes");
  if (version != 1) {
    throw ParseError("load_codes: unsupported format version " + std::to_string(version));
  }
  const std::uint64_t bits = binio::read_u64(is, "load_codes");
  const std::uint64_t count = binio::read_u64(is, "load_codes");

  HashCodes codes(bits, count);
  const std::size_t words = codes.words_per_code() * count;
  std::vector<std::uint64_t> data(words);
  for (std::uint64_t &w : data) w = binio::read_u64(is, "load_codes");
  // Re-set through the bit interface so pad bits stay canonical.
  for (std::size_t c = 0; c < count; ++c)
    for (std::size_t b = 0; b < bits; ++b)
      codes.set_bit(c, b, (data[c * codes.words_per_code() + b / 64] >> (b % 64)) & 1u);
  return codes;
}

} // namespace spcm
