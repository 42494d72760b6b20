#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "adaptreg/adwin.hpp"
#include "adaptreg/regression.hpp"
#include "adaptreg/rmse_delta.hpp"
#include "adaptreg/windows.hpp"

namespace adaptreg {

/// Which per-sample scalar the ADWIN gate watches.
struct AdwinInput {
  /// Unset: the model prediction. Set: this standardized feature column.
  std::optional<std::size_t> feature_index;
};

struct EngineConfig {
  std::size_t fit_window = 90;
  std::size_t buffer = 30;
  DetectorMode mode = DetectorMode::RmseOnly;
  double threshold = 0.0;
  Z1Policy z1_policy = Z1Policy::Advance;
  double adwin_delta = 0.002;
  std::size_t adwin_max_buckets = Adwin::kDefaultMaxBuckets;
  AdwinInput adwin_input;
  bool adwin_reset_on_replace = true;
};

enum class Phase { Priming, Streaming };

struct StepOutcome {
  std::optional<double> prediction;
  bool drift_event = false;
  bool model_replaced = false;
  /// Reference and candidate RMSE of the evaluation cycle this step closed, if any.
  std::optional<double> cycle_z1;
  std::optional<double> cycle_z2;

  bool operator==(const StepOutcome&) const = default;
};

struct EngineSnapshot {
  std::size_t predictions_made = 0;
  std::size_t model_updates = 0;
  std::size_t evaluation_cycles = 0;
  std::size_t regularized_fits = 0;
  std::optional<double> z_reference;
  std::optional<LinearModel> model;

  bool operator==(const EngineSnapshot&) const = default;
};

/// Label-free adaptive regression over a stream.
///
/// Priming consumes labeled rows: the fitting window fills first, then the
/// buffer. Once both are full the standardizer and the first model are fitted
/// and the reference RMSE is measured on the buffer. In the streaming phase
/// every sample is predicted, pseudo-labeled with that prediction, and pushed
/// into both stores; each time the buffer fills an evaluation cycle may fit a
/// candidate on the window and promote it when the RMSE delta detector fires.
class StreamEngine {
 public:
  explicit StreamEngine(EngineConfig config);

  /// Returns true on the call that completes priming.
  bool prime(const LabeledRow& row);

  /// Streaming-phase entry point. Takes features only: ground truth never
  /// reaches the engine after priming.
  StepOutcome step(std::span<const double> features);

  EngineSnapshot snapshot() const;

  Phase phase() const noexcept { return phase_; }
  const EngineConfig& config() const noexcept { return config_; }
  const SlidingWindow& fit_window() const noexcept { return fit_window_; }
  const EvalBuffer& buffer() const noexcept { return buffer_; }
  const std::optional<Standardizer>& standardizer() const noexcept { return standardizer_; }
  const std::optional<LinearModel>& current_model() const noexcept { return model_; }
  bool adwin_armed() const noexcept { return adwin_armed_; }
  const std::optional<Adwin>& adwin() const noexcept { return adwin_; }

 private:
  LinearModel fit_window_model();
  double buffer_rmse(const LinearModel& model) const;
  void finish_priming();
  StepOutcome run_cycle(StepOutcome outcome);

  EngineConfig config_;
  Phase phase_ = Phase::Priming;
  std::optional<Standardizer> standardizer_;
  std::optional<LinearModel> model_;
  SlidingWindow fit_window_;
  EvalBuffer buffer_;
  RmseDeltaDetector rmse_detector_;
  std::optional<Adwin> adwin_;
  bool adwin_armed_ = false;
  std::size_t model_updates_ = 0;
  std::size_t predictions_made_ = 0;
  std::size_t evaluation_cycles_ = 0;
  std::size_t regularized_fits_ = 0;
};

}  // namespace adaptreg
