#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "spcm/matrix.hpp"

namespace spcm {

/// One packed binary code: bit b lives in word b/64 at position b%64.
/// Pad bits of the last word are always zero.
struct CodeView {
  std::span<const std::uint64_t> words;
  std::size_t bits = 0;
};

/// Column-aligned set of packed binary codes.
class HashCodes {
public:
  HashCodes() = default;
  HashCodes(std::size_t bits, std::size_t count)
      : bits_(bits), count_(count), words_((bits + 63) / 64 * count, 0) {}

  std::size_t bits() const { return bits_; }
  std::size_t count() const { return count_; }
  std::size_t words_per_code() const { return (bits_ + 63) / 64; }

  bool bit(std::size_t code, std::size_t b) const {
    return (words_[code * words_per_code() + b / 64] >> (b % 64)) & 1u;
  }
  void set_bit(std::size_t code, std::size_t b, bool value) {
    std::uint64_t &w = words_[code * words_per_code() + b / 64];
    const std::uint64_t mask = std::uint64_t{1} << (b % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  CodeView code(std::size_t i) const {
    return {{words_.data() + i * words_per_code(), words_per_code()}, bits_};
  }
  std::span<const std::uint64_t> raw_words() const { return words_; }

  bool operator==(const HashCodes &) const = default;

private:
  std::size_t bits_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Hash raw feature columns: L2-normalize each column, subtract the model's
/// stored mean, then bit b of column m is 1 iff row b of the projected
/// column is >= 0 (so a zero projection maps to 1).
HashCodes encode(const Matrix &projection, std::span<const double> mean, const Matrix &features);

/// Number of differing bits.
unsigned hamming(CodeView a, CodeView b);

struct RankedList {
  std::size_t query_id = 0;
  std::vector<std::size_t> indices;   // database indices, ascending distance
  std::vector<unsigned> distances;    // matching Hamming distances
};

/// Exact linear scan: every database code sorted by ascending Hamming
/// distance, ties broken by ascending database index.
RankedList rank(CodeView query, const HashCodes &db, std::size_t query_id = 0);

/// Code file ("SPCH"): magic, version u32, H and N as u64, then the packed
/// little-endian words of every code in index order.
void save_codes(const std::filesystem::path &path, const HashCodes &codes);
HashCodes load_codes(const std::filesystem::path &path);

} // namespace spcm
