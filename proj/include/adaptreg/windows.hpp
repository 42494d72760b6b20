#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "adaptreg/regression.hpp"

namespace adaptreg {

/// Fixed-capacity FIFO of the most recent rows, used for model fitting.
/// Backed by a ring so push/evict are O(1).
class SlidingWindow {
 public:
  explicit SlidingWindow(std::size_t capacity);

  /// Appends row; returns the evicted oldest row when the window was full.
  std::optional<LabeledRow> push(LabeledRow row);

  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return slots_.size(); }
  bool full() const noexcept { return size_ == slots_.size(); }
  std::optional<std::size_t> arity() const noexcept { return arity_; }

  /// i = 0 is the oldest row.
  const LabeledRow& operator[](std::size_t i) const { return slots_[(head_ + i) % slots_.size()]; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < size_; ++i) fn((*this)[i]);
  }

  template <typename Fn>
  void for_each_mut(Fn&& fn) {
    for (std::size_t i = 0; i < size_; ++i) fn(slots_[(head_ + i) % slots_.size()]);
  }

  std::vector<LabeledRow> rows() const;

 private:
  std::vector<LabeledRow> slots_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  std::optional<std::size_t> arity_;
};

/// Accumulates rows until capacity is reached; the owner then drains it.
class EvalBuffer {
 public:
  explicit EvalBuffer(std::size_t capacity);

  /// Returns true exactly when this push fills the buffer.
  bool push(LabeledRow row);
  std::vector<LabeledRow> drain();

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool full() const noexcept { return rows_.size() == capacity_; }
  bool empty() const noexcept { return rows_.empty(); }

  const std::vector<LabeledRow>& rows() const noexcept { return rows_; }
  std::vector<LabeledRow>& rows_mut() noexcept { return rows_; }

 private:
  std::size_t capacity_;
  std::vector<LabeledRow> rows_;
};

}  // namespace adaptreg
