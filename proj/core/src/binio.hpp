// Little-endian binary primitives shared by the model / code / matrix file
// formats. Byte order is pinned in the formats, so values are packed
// explicitly instead of memcpy'd.
#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "spcm/errors.hpp"

namespace spcm::binio {

inline void write_u32(std::ostream &os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char *>(b), 4);
}

inline void write_u64(std::ostream &os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char *>(b), 8);
}

inline void write_f64(std::ostream &os, double d) { write_u64(os, std::bit_cast<std::uint64_t>(d)); }

inline std::uint32_t read_u32(std::istream &is, const char *what) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char *>(b), 4)) {
    throw ParseError(std::string(what) + ": truncated file");
  }
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline std::uint64_t read_u64(std::istream &is, const char *what) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char *>(b), 8)) {
    throw ParseError(std::string(what) + ": truncated file");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

inline double read_f64(std::istream &is, const char *what) {
  return std::bit_cast<double>(read_u64(is, what));
}

inline void write_magic(std::ostream &os, const char (&magic)[5]) { os.write(magic, 4); }

inline void expect_magic(std::istream &is, const char (&magic)[5], const char *what) {
  char got[4];
  if (!is.read(got, 4)) {
    throw ParseError(std::string(what) + ": truncated file");
  }
  for (int i = 0; i < 4; ++i) {
    if (got[i] != magic[i]) {
      throw ParseError(std::string(what) + ": bad magic, expected \"" + magic + "\"");
    }
  }
}

} // namespace spcm::binio
