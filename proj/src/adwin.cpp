#include "adaptreg/adwin.hpp"

#include <cmath>

#include "adaptreg/errors.hpp"

namespace adaptreg {

Adwin::Adwin(double delta, std::size_t max_buckets_per_level)
    : delta_(delta), max_buckets_(max_buckets_per_level) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ADWIN delta must lie in (0, 1)");
  }
  if (max_buckets_ < 2) {
    throw Error(ErrorCode::InvalidArgument, "ADWIN needs at least 2 buckets per level");
  }
}

double Adwin::mean() const noexcept {
  return total_count_ == 0 ? 0.0 : total_sum_ / static_cast<double>(total_count_);
}

double Adwin::variance() const noexcept {
  if (total_count_ == 0) return 0.0;
  const double n = static_cast<double>(total_count_);
  const double m = total_sum_ / n;
  const double v = total_sum_sq_ / n - m * m;
  return v > 0.0 ? v : 0.0;
}

bool Adwin::update(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFiniteInput, "ADWIN input is not finite");
  }
  if (levels_.empty()) levels_.emplace_back();
  levels_[0].push_back(Bucket{1, value, value * value});
  ++bucket_count_;
  ++total_count_;
  total_sum_ += value;
  total_sum_sq_ += value * value;
  compress();

  bool dropped = false;
  while (total_count_ > 1 && has_cut()) {
    drop_oldest();
    dropped = true;
  }
  if (dropped) ++detections_;
  return dropped;
}

void Adwin::reset() {
  levels_.clear();
  total_count_ = 0;
  total_sum_ = 0.0;
  total_sum_sq_ = 0.0;
  bucket_count_ = 0;
}

void Adwin::compress() {
  for (std::size_t level = 0; level < levels_.size(); ++level) {
    if (levels_[level].size() <= max_buckets_) break;
    auto& row = levels_[level];
    Bucket merged = row[0];
    merged.count += row[1].count;
    merged.sum += row[1].sum;
    merged.sum_sq += row[1].sum_sq;
    row.pop_front();
    row.pop_front();
    if (level + 1 == levels_.size()) levels_.emplace_back();
    // Everything on the next level is older, so the merged bucket is its newest.
    levels_[level + 1].push_back(merged);
    --bucket_count_;
  }
}

bool Adwin::has_cut() const {
  const double n = static_cast<double>(total_count_);
  const double log_term = std::log(4.0 * n / delta_);
  double n1 = 0.0;
  double s1 = 0.0;
  // Walk from the newest bucket towards the oldest; W1 grows, W0 shrinks.
  for (const auto& level : levels_) {
    for (auto it = level.rbegin(); it != level.rend(); ++it) {
      n1 += static_cast<double>(it->count);
      s1 += it->sum;
      const double n0 = n - n1;
      if (n0 < 1.0) return false;
      const double m = 1.0 / (1.0 / n0 + 1.0 / n1);
      const double eps = std::sqrt(log_term / (2.0 * m));
      const double diff = std::fabs((total_sum_ - s1) / n0 - s1 / n1);
      if (diff >= eps) return true;
    }
  }
  return false;
}

void Adwin::drop_oldest() {
  while (!levels_.empty() && levels_.back().empty()) levels_.pop_back();
  if (levels_.empty()) return;
  const Bucket oldest = levels_.back().front();
  levels_.back().pop_front();
  --bucket_count_;
  total_count_ -= oldest.count;
  total_sum_ -= oldest.sum;
  total_sum_sq_ -= oldest.sum_sq;
  while (!levels_.empty() && levels_.back().empty()) levels_.pop_back();
}

}  // namespace adaptreg
