#include "irs/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "irs/binio.hpp"
#include "irs/rng.hpp"

namespace irs {

namespace {

constexpr char kDatasetMagic[8] = {'I', 'R', 'S', 'D', 'A', 'T', 'A', '\0'};
constexpr uint32_t kDatasetVersion = 1;

[[noreturn]] void malformed(size_t line_no, const std::string& line, const std::string& why) {
  throw DataError("parse error at line " + std::to_string(line_no) + " (" + why +
                  "): \"" + line + "\"");
}

bool parse_i64(const std::string& s, int64_t& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

bool parse_f64(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

std::vector<std::string> split_fields(const std::string& line, RatingFormat format) {
  std::vector<std::string> fields;
  if (format == RatingFormat::DoubleColon) {
    size_t pos = 0;
    while (true) {
      const size_t next = line.find("::", pos);
      if (next == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, next - pos));
      pos = next + 2;
    }
  } else {
    const char sep = format == RatingFormat::Csv ? ',' : '\t';
    size_t pos = 0;
    while (true) {
      const size_t next = line.find(sep, pos);
      if (next == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, next - pos));
      pos = next + 1;
    }
  }
  return fields;
}

bool is_csv_header(const std::string& line) {
  return line.rfind("userId,", 0) == 0;
}

}  // namespace

RatingFormat rating_format_from_string(const std::string& s) {
  if (s == "double_colon" || s == "dat") return RatingFormat::DoubleColon;
  if (s == "csv") return RatingFormat::Csv;
  if (s == "tsv") return RatingFormat::Tsv;
  throw ConfigError("unknown rating file format: " + s);
}

std::string to_string(RatingFormat f) {
  switch (f) {
    case RatingFormat::DoubleColon: return "double_colon";
    case RatingFormat::Csv: return "csv";
    case RatingFormat::Tsv: return "tsv";
  }
  return "?";
}

int64_t Dataset::num_interactions() const {
  int64_t n = 0;
  for (const auto& u : users) n += static_cast<int64_t>(u.interactions.size());
  return n;
}

std::vector<RawRating> parse_ratings(std::istream& in, RatingFormat format) {
  std::vector<RawRating> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      malformed(line_no, line, "empty line");
    }
    if (line_no == 1 && format == RatingFormat::Csv && is_csv_header(line)) continue;
    const auto fields = split_fields(line, format);
    if (fields.size() != 4) malformed(line_no, line, "expected 4 fields, got " +
                                      std::to_string(fields.size()));
    RawRating r;
    if (!parse_i64(fields[0], r.user) || r.user < 0) malformed(line_no, line, "bad user id");
    if (!parse_i64(fields[1], r.item) || r.item < 0) malformed(line_no, line, "bad item id");
    if (!parse_f64(fields[2], r.rating)) malformed(line_no, line, "bad rating");
    if (!parse_i64(fields[3], r.timestamp) || r.timestamp < 0)
      malformed(line_no, line, "bad timestamp");
    out.push_back(r);
  }
  return out;
}

std::vector<RawRating> parse_ratings_file(const std::string& path, RatingFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ratings file: " + path);
  return parse_ratings(in, format);
}

std::string serialize_ratings(const std::vector<RawRating>& tuples, RatingFormat format) {
  const char* sep = format == RatingFormat::DoubleColon ? "::"
                    : format == RatingFormat::Csv       ? ","
                                                        : "\t";
  std::string out;
  for (const auto& t : tuples) {
    out += std::to_string(t.user);
    out += sep;
    out += std::to_string(t.item);
    out += sep;
    out += format_double(t.rating);
    out += sep;
    out += std::to_string(t.timestamp);
    out += '\n';
  }
  return out;
}

std::vector<RawRating> k_core_filter(std::vector<RawRating> tuples, int k) {
  if (k < 1) throw ConfigError("k_core requires k >= 1");
  bool changed = true;
  while (changed) {
    changed = false;
    std::unordered_map<int64_t, int64_t> user_count, item_count;
    for (const auto& t : tuples) {
      ++user_count[t.user];
      ++item_count[t.item];
    }
    std::vector<RawRating> kept;
    kept.reserve(tuples.size());
    for (const auto& t : tuples) {
      if (user_count[t.user] >= k && item_count[t.item] >= k) kept.push_back(t);
    }
    if (kept.size() != tuples.size()) {
      changed = true;
      tuples = std::move(kept);
    }
  }
  return tuples;
}

Dataset build_dataset(const std::vector<RawRating>& tuples, const RatingScale& scale) {
  if (!(scale.min < scale.positive_threshold && scale.positive_threshold <= scale.max))
    throw ConfigError("rating scale requires min < positive_threshold <= max");
  Dataset ds;
  ds.scale = scale;
  std::unordered_map<int64_t, int32_t> user_map, item_map;
  for (size_t idx = 0; idx < tuples.size(); ++idx) {
    const auto& t = tuples[idx];
    if (t.rating < scale.min || t.rating > scale.max)
      throw DataError("rating " + format_double(t.rating) + " outside scale [" +
                      format_double(scale.min) + ", " + format_double(scale.max) +
                      "] at tuple " + std::to_string(idx) + " (user " +
                      std::to_string(t.user) + ", item " + std::to_string(t.item) + ")");
    auto [uit, unew] = user_map.try_emplace(t.user, static_cast<int32_t>(ds.users.size()));
    if (unew) {
      ds.users.push_back(UserHistory{uit->second, {}});
      ds.raw_user_ids.push_back(t.user);
    }
    auto [iit, inew] = item_map.try_emplace(t.item, ds.num_items);
    if (inew) {
      ++ds.num_items;
      ds.raw_item_ids.push_back(t.item);
    }
    ds.users[static_cast<size_t>(uit->second)].interactions.push_back(
        Interaction{iit->second, t.rating, t.timestamp});
  }
  // Grouping already preserves file order within a user; stable sort keeps
  // it on timestamp ties.
  for (auto& u : ds.users) {
    std::stable_sort(u.interactions.begin(), u.interactions.end(),
                     [](const Interaction& a, const Interaction& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
  ds.item_popularity.assign(static_cast<size_t>(ds.num_items), 0);
  return ds;
}

Split split_users(const Dataset& dataset, const SplitFractions& fractions, uint64_t seed) {
  const auto n = dataset.users.size();
  if (n < 3) throw DataError("split requires at least 3 users, got " + std::to_string(n));
  const double sum = fractions.train + fractions.validation + fractions.test;
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split fractions must sum to 1");
  std::vector<int32_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = static_cast<int32_t>(i);
  Rng rng(seed);
  shuffle(order, rng);
  // Floor with a small epsilon so exact integer products (0.85 * 20) do not
  // land one below due to the binary representation of the fractions.
  const auto n_train = static_cast<size_t>(std::floor(fractions.train * static_cast<double>(n) + 1e-9));
  const auto n_val = static_cast<size_t>(std::floor(fractions.validation * static_cast<double>(n) + 1e-9));
  Split split;
  split.train.assign(order.begin(), order.begin() + static_cast<ptrdiff_t>(n_train));
  split.validation.assign(order.begin() + static_cast<ptrdiff_t>(n_train),
                          order.begin() + static_cast<ptrdiff_t>(n_train + n_val));
  split.test.assign(order.begin() + static_cast<ptrdiff_t>(n_train + n_val), order.end());
  return split;
}

void apply_train_popularity(Dataset& dataset, const Split& split) {
  dataset.item_popularity.assign(static_cast<size_t>(dataset.num_items), 0);
  for (const int32_t u : split.train) {
    for (const auto& it : dataset.users[static_cast<size_t>(u)].interactions)
      ++dataset.item_popularity[static_cast<size_t>(it.item)];
  }
}

DatasetStats compute_stats(const Dataset& dataset) {
  DatasetStats s;
  s.num_users = static_cast<int64_t>(dataset.users.size());
  s.num_items = dataset.num_items;
  s.num_interactions = dataset.num_interactions();
  s.avg_interactions = s.num_users == 0
                           ? 0.0
                           : static_cast<double>(s.num_interactions) /
                                 static_cast<double>(s.num_users);
  return s;
}

void save_dataset(const Dataset& dataset, const std::string& path) {
  BinaryWriter w(path);
  w.write_bytes(kDatasetMagic, 8);
  w.write_u32(kDatasetVersion);
  w.write_f64(dataset.scale.min);
  w.write_f64(dataset.scale.max);
  w.write_f64(dataset.scale.positive_threshold);
  w.write_u64(static_cast<uint64_t>(dataset.num_items));
  w.write_i64_vec(dataset.raw_item_ids);
  w.write_i64_vec(dataset.raw_user_ids);
  w.write_i64_vec(dataset.item_popularity);
  w.write_u64(dataset.users.size());
  for (const auto& u : dataset.users) {
    w.write_u64(u.interactions.size());
    for (const auto& it : u.interactions) {
      w.write_u32(static_cast<uint32_t>(it.item));
      w.write_f64(it.rating);
      w.write_i64(it.timestamp);
    }
  }
  w.close();
}

Dataset load_dataset(const std::string& path) {
  BinaryReader r(path);
  r.expect_magic(kDatasetMagic, "processed dataset");
  const uint32_t version = r.read_u32();
  if (version != kDatasetVersion)
    throw DataError("unsupported dataset file version " + std::to_string(version));
  Dataset ds;
  ds.scale.min = r.read_f64();
  ds.scale.max = r.read_f64();
  ds.scale.positive_threshold = r.read_f64();
  ds.num_items = static_cast<int32_t>(r.read_u64());
  ds.raw_item_ids = r.read_i64_vec();
  ds.raw_user_ids = r.read_i64_vec();
  ds.item_popularity = r.read_i64_vec();
  const uint64_t num_users = r.read_u64();
  ds.users.resize(num_users);
  for (uint64_t i = 0; i < num_users; ++i) {
    auto& u = ds.users[i];
    u.user = static_cast<int32_t>(i);
    const uint64_t m = r.read_u64();
    u.interactions.resize(m);
    for (auto& it : u.interactions) {
      it.item = static_cast<int32_t>(r.read_u32());
      it.rating = r.read_f64();
      it.timestamp = r.read_i64();
    }
  }
  return ds;
}

}  // namespace irs
