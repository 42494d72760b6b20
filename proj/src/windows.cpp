#include "adaptreg/windows.hpp"

#include <string>
#include <utility>

#include "adaptreg/errors.hpp"

namespace adaptreg {

SlidingWindow::SlidingWindow(std::size_t capacity) : slots_(capacity) {
  if (capacity == 0) {
    throw Error(ErrorCode::InvalidArgument, "sliding window capacity must be positive");
  }
}

std::optional<LabeledRow> SlidingWindow::push(LabeledRow row) {
  if (arity_ && *arity_ != row.features.size()) {
    throw Error(ErrorCode::ArityMismatch, "window holds " + std::to_string(*arity_) +
                                              "-feature rows, got " +
                                              std::to_string(row.features.size()));
  }
  arity_ = row.features.size();

  if (size_ < slots_.size()) {
    slots_[(head_ + size_) % slots_.size()] = std::move(row);
    ++size_;
    return std::nullopt;
  }
  // Full: the oldest slot is overwritten and the head advances.
  std::optional<LabeledRow> evicted = std::exchange(slots_[head_], std::move(row));
  head_ = (head_ + 1) % slots_.size();
  return evicted;
}

std::vector<LabeledRow> SlidingWindow::rows() const {
  std::vector<LabeledRow> out;
  out.reserve(size_);
  for_each([&](const LabeledRow& r) { out.push_back(r); });
  return out;
}

EvalBuffer::EvalBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw Error(ErrorCode::InvalidArgument, "buffer capacity must be positive");
  }
  rows_.reserve(capacity);
}

bool EvalBuffer::push(LabeledRow row) {
  if (full()) {
    throw Error(ErrorCode::PushWhenFull, "buffer already holds " + std::to_string(capacity_) + " rows");
  }
  rows_.push_back(std::move(row));
  return full();
}

std::vector<LabeledRow> EvalBuffer::drain() {
  std::vector<LabeledRow> out;
  out.reserve(capacity_);
  out.swap(rows_);
  return out;
}

}  // namespace adaptreg
