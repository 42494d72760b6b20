#include "adaptreg/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "adaptreg/errors.hpp"

namespace adaptreg {

double rmse(std::span<const double> truths, std::span<const double> predictions) {
  if (truths.size() != predictions.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(truths.size()) + " truths vs " +
                                               std::to_string(predictions.size()) + " predictions");
  }
  if (truths.empty()) throw Error(ErrorCode::EmptyInput, "RMSE of an empty sequence");

  double sse = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const double r = truths[i] - predictions[i];
    sse += r * r;
  }
  if (!std::isfinite(sse)) throw Error(ErrorCode::NonFiniteInput, "RMSE inputs are not finite");
  return std::sqrt(sse / static_cast<double>(truths.size()));
}

RunResult finalize_run(const EngineSnapshot& snapshot, std::vector<TracePoint> trace,
                       double elapsed_seconds, bool keep_trace) {
  if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "no streaming predictions were recorded");

  std::vector<double> truths(trace.size());
  std::vector<double> predictions(trace.size());
  std::transform(trace.begin(), trace.end(), truths.begin(), [](const auto& p) { return p.truth; });
  std::transform(trace.begin(), trace.end(), predictions.begin(),
                 [](const auto& p) { return p.prediction; });

  RunResult result;
  result.rmse = rmse(truths, predictions);
  result.model_updates = snapshot.model_updates;
  result.evaluation_cycles = snapshot.evaluation_cycles;
  result.regularized_fits = snapshot.regularized_fits;
  result.prediction_count = trace.size();
  // Clamp to one nanosecond so the rate stays finite on trivially short runs.
  result.total_execution_seconds = std::max(elapsed_seconds, 1e-9);
  result.processing_rate =
      static_cast<double>(result.prediction_count) / result.total_execution_seconds;
  if (keep_trace) result.trace = std::move(trace);
  return result;
}

}  // namespace adaptreg
