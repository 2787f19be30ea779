#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "irs/errors.hpp"

namespace irs {

/// One logged event: a recommended item and the feedback it received.
struct Interaction {
  int32_t item = 0;       // dense 0-based item index
  double rating = 0.0;    // feedback on the dataset's rating scale
  int64_t timestamp = 0;  // seconds since epoch
};

struct UserHistory {
  int32_t user = 0;  // dense 0-based user index
  std::vector<Interaction> interactions;  // non-decreasing timestamp, file-order ties
};

struct RatingScale {
  double min = 1.0;
  double max = 5.0;
  double positive_threshold = 4.0;  // "positive" means rating strictly above this

  double clamp(double r) const { return r < min ? min : (r > max ? max : r); }
};

/// A raw (pre-densification) record as read from a ratings file.
struct RawRating {
  int64_t user = 0;
  int64_t item = 0;
  double rating = 0.0;
  int64_t timestamp = 0;
};

enum class RatingFormat { DoubleColon, Csv, Tsv };

RatingFormat rating_format_from_string(const std::string& s);
std::string to_string(RatingFormat f);

struct Dataset {
  std::vector<UserHistory> users;
  int32_t num_items = 0;
  RatingScale scale;
  // Interaction counts per item over the training split; filled by
  // apply_train_popularity once a Split exists, zero before that.
  std::vector<int64_t> item_popularity;
  // Dense index -> original id; together these invert the densification.
  std::vector<int64_t> raw_user_ids;
  std::vector<int64_t> raw_item_ids;

  int64_t num_interactions() const;
};

struct DatasetStats {
  int64_t num_users = 0;
  int64_t num_items = 0;
  int64_t num_interactions = 0;
  double avg_interactions = 0.0;
};

struct Split {
  std::vector<int32_t> train;
  std::vector<int32_t> validation;
  std::vector<int32_t> test;
};

struct SplitFractions {
  double train = 0.85;
  double validation = 0.05;
  double test = 0.10;
};

/// Parses one rating record per line. Malformed lines raise DataError with
/// the line number and offending text; an empty stream yields an empty list.
std::vector<RawRating> parse_ratings(std::istream& in, RatingFormat format);
std::vector<RawRating> parse_ratings_file(const std::string& path, RatingFormat format);

/// Serializes tuples back to the given line format (tests use this for
/// round-trip checks; `ingest` uses it for fixture generation).
std::string serialize_ratings(const std::vector<RawRating>& tuples, RatingFormat format);

/// Iterates the >=k filter on users and items to a fixpoint. Re-running on
/// the output is the identity. k >= 1.
std::vector<RawRating> k_core_filter(std::vector<RawRating> tuples, int k);

/// Densifies ids in first-appearance order, groups interactions by user and
/// sorts each history by timestamp keeping file order on ties. Ratings
/// outside the scale raise DataError naming the tuple.
Dataset build_dataset(const std::vector<RawRating>& tuples, const RatingScale& scale);

/// Seeded uniform shuffle of the user indices followed by contiguous
/// slicing: |train| = floor(f_train*n), |validation| = floor(f_val*n),
/// the rest is test. Deterministic for a fixed seed. n >= 3.
Split split_users(const Dataset& dataset, const SplitFractions& fractions, uint64_t seed);

/// Counts training-split interactions per item into dataset.item_popularity.
void apply_train_popularity(Dataset& dataset, const Split& split);

DatasetStats compute_stats(const Dataset& dataset);

/// Versioned binary container for the processed dataset; bit-exact round-trip.
void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace irs
