#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adaptreg/dataset.hpp"
#include "adaptreg/engine.hpp"
#include "adaptreg/errors.hpp"
#include "adaptreg/metrics.hpp"

namespace adaptreg {

/// One experiment: dataset/target selection plus every engine parameter.
struct ExperimentConfig {
  std::string label;
  std::string dataset;
  std::string target;
  DetectorMode detector = DetectorMode::RmseOnly;
  std::size_t working_points = 120;
  std::size_t fit_window = 90;
  std::size_t buffer = 30;
  /// Ignored when detector is None.
  double rmse_delta_threshold = 0.0;
  double adwin_delta = 0.002;
  Z1Policy z1_policy = Z1Policy::Advance;
  /// Unset: ADWIN watches the prediction.
  std::optional<std::size_t> adwin_feature;
  bool adwin_reset = true;
  SentinelMode sentinel = SentinelMode::Fidelity;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> trace_path;

  bool operator==(const ExperimentConfig&) const = default;
};

void to_json(nlohmann::json& j, const ExperimentConfig& cfg);
/// Numeric fields may also be given as strings such as "0.1e-4".
void from_json(const nlohmann::json& j, ExperimentConfig& cfg);

/// Reads a real from either a JSON number or a numeric string.
double parse_real(const nlohmann::json& value, const std::string& field);
double parse_real(const std::string& text, const std::string& field);

struct ExperimentMatrix {
  std::vector<ExperimentConfig> experiments;

  /// Rejects duplicate labels.
  static ExperimentMatrix parse(std::string_view json_text);
  static ExperimentMatrix load_file(const std::filesystem::path& path);
  std::string to_json_text() const;
};

EngineConfig engine_config(const ExperimentConfig& cfg);

/// Primes an engine on the labeled prefix and streams the remainder through it.
/// Only the streaming loop is timed.
RunResult run_stream(const EngineConfig& config, const StreamSplit& split, bool keep_trace = true);

/// load -> make_stream -> run_stream; writes the trace file when configured.
/// Errors are rethrown with the experiment label prefixed to the message.
RunResult run_experiment(const ExperimentConfig& cfg, const DatasetManifest& manifest,
                         const std::filesystem::path& data_dir, bool keep_trace = false);

struct ExperimentOutcome {
  ExperimentConfig config;
  std::optional<RunResult> result;
  std::optional<ErrorCode> error_code;
  std::string error;

  bool ok() const noexcept { return result.has_value(); }
};

/// Runs every experiment with independent state on up to `parallelism`
/// threads. Failures are recorded per experiment; results keep matrix order.
std::vector<ExperimentOutcome> run_matrix(const ExperimentMatrix& matrix,
                                          const DatasetManifest& manifest,
                                          const std::filesystem::path& data_dir,
                                          std::size_t parallelism, bool keep_traces = false);

/// Grouped by dataset/target, one column per experiment in that group.
std::string render_summary_table(const std::vector<ExperimentOutcome>& outcomes);
/// One JSON object per line.
void write_results_jsonl(const std::vector<ExperimentOutcome>& outcomes, std::ostream& out);
nlohmann::json result_to_json(const ExperimentOutcome& outcome);

/// CSV with header `index,predicted,truth,drift_flag`; numbers in shortest
/// round-trip form so output is byte-stable.
void emit_plot_data(const RunResult& result, const std::filesystem::path& path);

}  // namespace adaptreg
