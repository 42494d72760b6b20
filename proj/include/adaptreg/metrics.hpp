#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adaptreg/engine.hpp"

namespace adaptreg {

/// sqrt(mean((truth - prediction)^2)).
double rmse(std::span<const double> truths, std::span<const double> predictions);

struct TracePoint {
  std::size_t index = 0;
  double prediction = 0.0;
  double truth = 0.0;
  bool drift_event = false;

  bool operator==(const TracePoint&) const = default;
};

struct RunResult {
  std::string label;
  double rmse = 0.0;
  std::size_t model_updates = 0;
  std::size_t evaluation_cycles = 0;
  std::size_t regularized_fits = 0;
  double total_execution_seconds = 0.0;
  double processing_rate = 0.0;
  std::size_t prediction_count = 0;
  std::optional<std::vector<TracePoint>> trace;
};

/// Builds the end-of-stream result. Ground truth enters the computation here
/// and nowhere else.
RunResult finalize_run(const EngineSnapshot& snapshot, std::vector<TracePoint> trace,
                       double elapsed_seconds, bool keep_trace = true);

}  // namespace adaptreg
