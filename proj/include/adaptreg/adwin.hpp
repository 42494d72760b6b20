#pragma once

#include <cstddef>
#include <deque>
#include <vector>

namespace adaptreg {

/// Adaptive-windowing change detector over a scalar stream.
///
/// The window is stored as an exponential histogram: level k holds buckets that
/// summarize 2^k consecutive items, at most max_buckets_per_level per level.
/// After every insertion all bucket boundaries are tested as cut points between
/// an older sub-window W0 and a newer W1. A cut is a change when
///
///   |mean(W0) - mean(W1)| >= sqrt( ln(4 n / delta) / (2 m) ),
///   m = 1 / (1/|W0| + 1/|W1|),  n = |W0| + |W1|,
///
/// and the oldest buckets are dropped until no cut qualifies. The bound is a
/// Hoeffding bound and assumes values roughly in a unit range.
class Adwin {
 public:
  static constexpr std::size_t kDefaultMaxBuckets = 5;

  explicit Adwin(double delta, std::size_t max_buckets_per_level = kDefaultMaxBuckets);

  /// Inserts value; returns true when old data was dropped because of a change.
  bool update(double value);
  void reset();

  double delta() const noexcept { return delta_; }
  std::size_t max_buckets_per_level() const noexcept { return max_buckets_; }

  /// Number of items currently summarized by the window.
  std::size_t width() const noexcept { return total_count_; }
  double total() const noexcept { return total_sum_; }
  double mean() const noexcept;
  double variance() const noexcept;
  std::size_t bucket_count() const noexcept { return bucket_count_; }
  std::size_t level_count() const noexcept { return levels_.size(); }
  std::size_t detections() const noexcept { return detections_; }

 private:
  struct Bucket {
    std::size_t count;
    double sum;
    double sum_sq;
  };

  void compress();
  bool has_cut() const;
  void drop_oldest();

  double delta_;
  std::size_t max_buckets_;
  // levels_[0] holds single items; within a level the front is the oldest.
  std::vector<std::deque<Bucket>> levels_;
  std::size_t total_count_ = 0;
  double total_sum_ = 0.0;
  double total_sum_sq_ = 0.0;
  std::size_t bucket_count_ = 0;
  std::size_t detections_ = 0;
};

}  // namespace adaptreg
