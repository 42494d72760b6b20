#include "adaptreg/engine.hpp"

#include <vector>

#include "adaptreg/errors.hpp"
#include "adaptreg/metrics.hpp"

namespace adaptreg {

StreamEngine::StreamEngine(EngineConfig config)
    : config_(config),
      fit_window_(config.fit_window),
      buffer_(config.buffer),
      rmse_detector_(config.threshold, config.z1_policy) {
  if (config_.mode == DetectorMode::AdwinGatedRmse) {
    adwin_.emplace(config_.adwin_delta, config_.adwin_max_buckets);
  }
}

bool StreamEngine::prime(const LabeledRow& row) {
  if (phase_ != Phase::Priming) {
    throw Error(ErrorCode::WrongPhase, "prime() called after priming completed");
  }
  if (row.is_pseudo) {
    throw Error(ErrorCode::InvalidArgument, "priming rows must carry ground-truth targets");
  }
  if (!fit_window_.full()) {
    fit_window_.push(row);
    return false;
  }
  if (row.features.size() != *fit_window_.arity()) {
    throw Error(ErrorCode::ArityMismatch, "priming row arity differs from the fitting window");
  }
  if (!buffer_.push(row)) return false;
  finish_priming();
  return true;
}

void StreamEngine::finish_priming() {
  std::vector<LabeledRow> all = fit_window_.rows();
  all.insert(all.end(), buffer_.rows().begin(), buffer_.rows().end());
  standardizer_ = fit_standardizer(all);

  fit_window_.for_each_mut([&](LabeledRow& r) { standardizer_->apply_in_place(r.features); });
  for (auto& r : buffer_.rows_mut()) standardizer_->apply_in_place(r.features);

  if (config_.adwin_input.feature_index && *config_.adwin_input.feature_index >= standardizer_->arity()) {
    throw Error(ErrorCode::ConfigError, "ADWIN feature index is out of range");
  }
  model_ = fit_window_model();
  rmse_detector_.prime(buffer_rmse(*model_));
  buffer_.drain();
  phase_ = Phase::Streaming;
}

LinearModel StreamEngine::fit_window_model() {
  OlsAccumulator acc(*fit_window_.arity());
  fit_window_.for_each([&](const LabeledRow& r) { acc.add(r); });
  LinearModel m = acc.solve();
  if (m.regularized()) ++regularized_fits_;
  return m;
}

double StreamEngine::buffer_rmse(const LinearModel& model) const {
  const auto& rows = buffer_.rows();
  std::vector<double> targets;
  std::vector<double> predictions;
  targets.reserve(rows.size());
  predictions.reserve(rows.size());
  for (const auto& r : rows) {
    targets.push_back(r.target);
    predictions.push_back(model.predict(r.features));
  }
  return rmse(targets, predictions);
}

StepOutcome StreamEngine::step(std::span<const double> features) {
  if (phase_ != Phase::Streaming) {
    throw Error(ErrorCode::WrongPhase, "step() called before priming completed");
  }
  FeatureVector x = standardizer_->apply(features);
  const double y_hat = model_->predict(x);
  ++predictions_made_;

  StepOutcome outcome;
  outcome.prediction = y_hat;

  const double gate_signal =
      config_.adwin_input.feature_index ? x[*config_.adwin_input.feature_index] : y_hat;

  LabeledRow pseudo{std::move(x), y_hat, true};
  fit_window_.push(pseudo);
  const bool buffer_full = buffer_.push(std::move(pseudo));

  if (adwin_ && adwin_->update(gate_signal)) adwin_armed_ = true;

  if (buffer_full) return run_cycle(outcome);
  return outcome;
}

StepOutcome StreamEngine::run_cycle(StepOutcome outcome) {
  ++evaluation_cycles_;
  const bool skip = config_.mode == DetectorMode::None ||
                    (config_.mode == DetectorMode::AdwinGatedRmse && !adwin_armed_);
  if (skip) {
    buffer_.drain();
    return outcome;
  }

  LinearModel candidate = fit_window_model();
  const double z2 = buffer_rmse(candidate);
  outcome.cycle_z1 = rmse_detector_.reference();
  outcome.cycle_z2 = z2;
  if (rmse_detector_.check(z2)) {
    model_ = std::move(candidate);
    ++model_updates_;
    outcome.drift_event = true;
    outcome.model_replaced = true;
    if (adwin_ && config_.adwin_reset_on_replace) adwin_->reset();
  }
  buffer_.drain();
  adwin_armed_ = false;
  return outcome;
}

EngineSnapshot StreamEngine::snapshot() const {
  EngineSnapshot s;
  s.predictions_made = predictions_made_;
  s.model_updates = model_updates_;
  s.evaluation_cycles = evaluation_cycles_;
  s.regularized_fits = regularized_fits_;
  s.z_reference = rmse_detector_.reference();
  s.model = model_;
  return s;
}

}  // namespace adaptreg
