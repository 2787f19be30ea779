#include "irs/binio.hpp"

#include <bit>
#include <charconv>
#include <cstring>

#include "irs/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary containers assume a little-endian host");

namespace irs {

BinaryWriter::BinaryWriter(const std::string& path)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
  if (!out_) throw DataError("cannot open for writing: " + path);
}

BinaryWriter::~BinaryWriter() = default;

void BinaryWriter::write_bytes(const void* data, size_t n) {
  out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  if (!out_) throw DataError("write failed: " + path_);
}

void BinaryWriter::write_u32(uint32_t v) { write_bytes(&v, sizeof v); }
void BinaryWriter::write_u64(uint64_t v) { write_bytes(&v, sizeof v); }
void BinaryWriter::write_i64(int64_t v) { write_bytes(&v, sizeof v); }

void BinaryWriter::write_f64(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  write_u64(bits);
}

void BinaryWriter::write_f64_vec(const std::vector<double>& v) {
  write_u64(v.size());
  if (!v.empty()) write_bytes(v.data(), v.size() * sizeof(double));
}

void BinaryWriter::write_i64_vec(const std::vector<int64_t>& v) {
  write_u64(v.size());
  if (!v.empty()) write_bytes(v.data(), v.size() * sizeof(int64_t));
}

void BinaryWriter::close() {
  out_.close();
  if (!out_) throw DataError("close failed: " + path_);
}

BinaryReader::BinaryReader(const std::string& path)
    : in_(path, std::ios::binary), path_(path) {
  if (!in_) throw DataError("cannot open: " + path);
}

void BinaryReader::read_bytes(void* data, size_t n) {
  in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(in_.gcount()) != n)
    throw DataError("truncated or corrupt file: " + path_);
}

uint32_t BinaryReader::read_u32() {
  uint32_t v;
  read_bytes(&v, sizeof v);
  return v;
}

uint64_t BinaryReader::read_u64() {
  uint64_t v;
  read_bytes(&v, sizeof v);
  return v;
}

int64_t BinaryReader::read_i64() {
  int64_t v;
  read_bytes(&v, sizeof v);
  return v;
}

double BinaryReader::read_f64() {
  const uint64_t bits = read_u64();
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::vector<double> BinaryReader::read_f64_vec() {
  const uint64_t n = read_u64();
  std::vector<double> v(n);
  if (n) read_bytes(v.data(), n * sizeof(double));
  return v;
}

std::vector<int64_t> BinaryReader::read_i64_vec() {
  const uint64_t n = read_u64();
  std::vector<int64_t> v(n);
  if (n) read_bytes(v.data(), n * sizeof(int64_t));
  return v;
}

void BinaryReader::expect_magic(const char magic[8], const std::string& what) {
  char got[8];
  read_bytes(got, 8);
  if (std::memcmp(got, magic, 8) != 0)
    throw DataError("not a " + what + " file: " + path_);
}

uint64_t fnv1a64_bytes(const void* data, size_t n, uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  uint64_t h = 0xCBF29CE484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    const auto n = static_cast<size_t>(in.gcount());
    if (n) h = fnv1a64_bytes(buf, n, h);
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace irs
