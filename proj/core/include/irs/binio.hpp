#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace irs {

// Little-endian binary container IO for the processed-dataset and model
// files. Round-trips are bit-exact; doubles travel as raw IEEE-754 bits.
class BinaryWriter {
 public:
  explicit BinaryWriter(const std::string& path);
  ~BinaryWriter();

  void write_u32(uint32_t v);
  void write_u64(uint64_t v);
  void write_i64(int64_t v);
  void write_f64(double v);
  void write_bytes(const void* data, size_t n);
  void write_f64_vec(const std::vector<double>& v);
  void write_i64_vec(const std::vector<int64_t>& v);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const std::string& path);

  uint32_t read_u32();
  uint64_t read_u64();
  int64_t read_i64();
  double read_f64();
  void read_bytes(void* data, size_t n);
  std::vector<double> read_f64_vec();
  std::vector<int64_t> read_i64_vec();
  void expect_magic(const char magic[8], const std::string& what);

 private:
  std::ifstream in_;
  std::string path_;
};

// FNV-1a over a file's bytes; the reports echo it so a run can be tied to
// its exact inputs.
uint64_t fnv1a64_file(const std::string& path);
uint64_t fnv1a64_bytes(const void* data, size_t n, uint64_t seed = 0xCBF29CE484222325ULL);
std::string hex64(uint64_t v);

// Shortest round-trip decimal for a double (std::to_chars); keeps CSV and
// JSON output byte-stable across runs.
std::string format_double(double v);

}  // namespace irs
