#include "adaptreg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace adaptreg {

namespace {

nlohmann::json real_to_json(double v) {
  // JSON has no infinities; keep them as strings so configs round-trip.
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

double parse_real(const std::string& text, const std::string& field) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || std::isnan(v)) {
    throw Error(ErrorCode::ConfigError, field + ": '" + text + "' is not a number");
  }
  return v;
}

double parse_real(const nlohmann::json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_real(value.get<std::string>(), field);
  throw Error(ErrorCode::ConfigError, field + " must be a number or numeric string");
}

void to_json(nlohmann::json& j, const ExperimentConfig& cfg) {
  j = nlohmann::json{
      {"label", cfg.label},
      {"dataset", cfg.dataset},
      {"target", cfg.target},
      {"detector", std::string(to_string(cfg.detector))},
      {"working_points", cfg.working_points},
      {"fit_window", cfg.fit_window},
      {"buffer", cfg.buffer},
      {"threshold", real_to_json(cfg.rmse_delta_threshold)},
      {"adwin_delta", real_to_json(cfg.adwin_delta)},
      {"z1_policy", std::string(to_string(cfg.z1_policy))},
      {"adwin_feature", nullptr},
      {"adwin_reset", cfg.adwin_reset},
      {"sentinel", std::string(to_string(cfg.sentinel))},
      {"seed", nullptr},
      {"trace", nullptr},
  };
  if (cfg.adwin_feature) j["adwin_feature"] = *cfg.adwin_feature;
  if (cfg.seed) j["seed"] = *cfg.seed;
  if (cfg.trace_path) j["trace"] = cfg.trace_path->string();
}

void from_json(const nlohmann::json& j, ExperimentConfig& cfg) {
  try {
    cfg = ExperimentConfig{};
    cfg.label = j.at("label").get<std::string>();
    cfg.dataset = j.at("dataset").get<std::string>();
    cfg.target = j.at("target").get<std::string>();
    cfg.detector = parse_detector_mode(j.at("detector").get<std::string>());
    cfg.working_points = j.value("working_points", cfg.working_points);
    cfg.fit_window = j.value("fit_window", cfg.fit_window);
    cfg.buffer = j.value("buffer", cfg.buffer);
    if (j.contains("threshold") && !j["threshold"].is_null()) {
      const auto& t = j["threshold"];
      // Baseline rows carry "N/A" for thresholds.
      const bool not_applicable = t.is_string() && t.get<std::string>() == "N/A";
      if (!not_applicable) cfg.rmse_delta_threshold = parse_real(t, "threshold");
    }
    if (j.contains("adwin_delta") && !j["adwin_delta"].is_null()) {
      const auto& d = j["adwin_delta"];
      if (!(d.is_string() && d.get<std::string>() == "N/A")) cfg.adwin_delta = parse_real(d, "adwin_delta");
    }
    if (j.contains("z1_policy")) cfg.z1_policy = parse_z1_policy(j["z1_policy"].get<std::string>());
    if (j.contains("adwin_feature") && !j["adwin_feature"].is_null()) {
      cfg.adwin_feature = j["adwin_feature"].get<std::size_t>();
    }
    cfg.adwin_reset = j.value("adwin_reset", cfg.adwin_reset);
    if (j.contains("sentinel")) cfg.sentinel = parse_sentinel_mode(j["sentinel"].get<std::string>());
    if (j.contains("seed") && !j["seed"].is_null()) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("trace") && !j["trace"].is_null()) cfg.trace_path = j["trace"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed experiment config: ") + e.what());
  }
}

ExperimentMatrix ExperimentMatrix::parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("experiments") || !doc["experiments"].is_array()) {
    throw Error(ErrorCode::ConfigError, "matrix file needs an 'experiments' array");
  }
  ExperimentMatrix m;
  for (const auto& item : doc["experiments"]) m.experiments.push_back(item.get<ExperimentConfig>());

  std::vector<std::string> labels;
  for (const auto& e : m.experiments) labels.push_back(e.label);
  std::sort(labels.begin(), labels.end());
  const auto dup = std::adjacent_find(labels.begin(), labels.end());
  if (dup != labels.end()) throw Error(ErrorCode::ConfigError, "duplicate experiment label '" + *dup + "'");
  return m;
}

ExperimentMatrix ExperimentMatrix::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentMatrix::to_json_text() const {
  nlohmann::json doc;
  doc["experiments"] = experiments;
  return doc.dump(2);
}

EngineConfig engine_config(const ExperimentConfig& cfg) {
  if (cfg.working_points != cfg.fit_window + cfg.buffer) {
    throw Error(ErrorCode::ConfigError,
                "working points (" + std::to_string(cfg.working_points) +
                    ") must equal fit window + buffer (" +
                    std::to_string(cfg.fit_window + cfg.buffer) + ")");
  }
  EngineConfig e;
  e.fit_window = cfg.fit_window;
  e.buffer = cfg.buffer;
  e.mode = cfg.detector;
  e.threshold = cfg.detector == DetectorMode::None ? 0.0 : cfg.rmse_delta_threshold;
  e.z1_policy = cfg.z1_policy;
  e.adwin_delta = cfg.adwin_delta;
  e.adwin_input.feature_index = cfg.adwin_feature;
  e.adwin_reset_on_replace = cfg.adwin_reset;
  return e;
}

RunResult run_stream(const EngineConfig& config, const StreamSplit& split, bool keep_trace) {
  StreamEngine engine(config);
  for (const auto& row : split.labeled_prefix) engine.prime(row);
  if (engine.phase() != Phase::Streaming) {
    throw Error(ErrorCode::InsufficientData, "labeled prefix of " +
                                                 std::to_string(split.labeled_prefix.size()) +
                                                 " rows did not complete priming");
  }

  const std::size_t n = split.unlabeled.size();
  std::vector<double> predictions(n);
  std::vector<char> drift(n, 0);

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < n; ++i) {
    const StepOutcome out = engine.step(split.unlabeled.features(i));
    predictions[i] = *out.prediction;
    drift[i] = out.drift_event ? 1 : 0;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  std::vector<TracePoint> trace(n);
  for (std::size_t i = 0; i < n; ++i) {
    trace[i] = TracePoint{split.unlabeled.index(i), predictions[i], split.truths[i], drift[i] != 0};
  }
  return finalize_run(engine.snapshot(), std::move(trace), elapsed.count(), keep_trace);
}

RunResult run_experiment(const ExperimentConfig& cfg, const DatasetManifest& manifest,
                         const std::filesystem::path& data_dir, bool keep_trace) {
  try {
    const EngineConfig engine_cfg = engine_config(cfg);
    const DatasetSpec spec = manifest.resolve(cfg.dataset, cfg.target, data_dir);
    const LoadedDataset data = load(spec, cfg.sentinel);
    const StreamSplit split = make_stream(data.records, cfg.working_points);
    RunResult result = run_stream(engine_cfg, split, keep_trace || cfg.trace_path.has_value());
    result.label = cfg.label;
    if (cfg.trace_path) emit_plot_data(result, *cfg.trace_path);
    if (!keep_trace) result.trace.reset();
    return result;
  } catch (const Error& e) {
    throw Error(e.code(), cfg.label + ": " + e.detail());
  }
}

std::vector<ExperimentOutcome> run_matrix(const ExperimentMatrix& matrix,
                                          const DatasetManifest& manifest,
                                          const std::filesystem::path& data_dir,
                                          std::size_t parallelism, bool keep_traces) {
  const std::size_t count = matrix.experiments.size();
  std::vector<ExperimentOutcome> outcomes(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      ExperimentOutcome& slot = outcomes[i];
      slot.config = matrix.experiments[i];
      try {
        slot.result = run_experiment(slot.config, manifest, data_dir, keep_traces);
      } catch (const Error& e) {
        slot.error_code = e.code();
        slot.error = e.what();
      } catch (const std::exception& e) {
        slot.error = slot.config.label + ": " + e.what();
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(count, 1));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return outcomes;
}

std::string render_summary_table(const std::vector<ExperimentOutcome>& outcomes) {
  // Group by dataset/target, keeping first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ExperimentOutcome*>> groups;
  for (const auto& o : outcomes) {
    const std::string key = o.config.dataset + " | target: " + o.config.target;
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&o);
  }

  std::ostringstream out;
  constexpr int kNameWidth = 34;
  constexpr int kColWidth = 18;
  auto cell = [&](const std::string& s) {
    out << ' ' << s << std::string(s.size() < kColWidth ? kColWidth - s.size() : 1, ' ');
  };
  auto name = [&](const std::string& s) { out << s << std::string(kNameWidth - s.size(), ' '); };

  for (const auto& key : order) {
    const auto& members = groups[key];
    out << key << '\n';
    name("Metric");
    for (const auto* o : members) cell(o->config.label);
    out << '\n';

    auto row = [&](const std::string& title, auto&& value) {
      name(title);
      for (const auto* o : members) cell(o->ok() ? value(*o->result) : std::string("FAILED"));
      out << '\n';
    };
    name("Drift Detector");
    for (const auto* o : members) cell(std::string(to_string(o->config.detector)));
    out << '\n';
    row("Model Updates", [](const RunResult& r) { return std::to_string(r.model_updates); });
    row("RMSE", [](const RunResult& r) { return fixed(r.rmse, 4); });
    row("Total Execution Time (Seconds)",
        [](const RunResult& r) { return fixed(r.total_execution_seconds, 4); });
    row("Processing Rate (Records/Second)",
        [](const RunResult& r) { return fixed(r.processing_rate, 0); });
    row("Prediction Count", [](const RunResult& r) { return std::to_string(r.prediction_count); });
    out << '\n';
  }

  for (const auto& o : outcomes) {
    if (!o.ok()) out << "failed: " << o.error << '\n';
  }
  return out.str();
}

nlohmann::json result_to_json(const ExperimentOutcome& o) {
  nlohmann::json j;
  j["label"] = o.config.label;
  j["dataset"] = o.config.dataset;
  j["target"] = o.config.target;
  j["detector"] = std::string(to_string(o.config.detector));
  if (o.ok()) {
    const RunResult& r = *o.result;
    j["status"] = "ok";
    j["rmse"] = r.rmse;
    j["model_updates"] = r.model_updates;
    j["evaluation_cycles"] = r.evaluation_cycles;
    j["regularized_fits"] = r.regularized_fits;
    j["total_execution_seconds"] = r.total_execution_seconds;
    j["processing_rate"] = r.processing_rate;
    j["prediction_count"] = r.prediction_count;
  } else {
    j["status"] = "failed";
    j["error"] = o.error;
    if (o.error_code) j["error_code"] = std::string(to_string(*o.error_code));
  }
  return j;
}

void write_results_jsonl(const std::vector<ExperimentOutcome>& outcomes, std::ostream& out) {
  for (const auto& o : outcomes) out << result_to_json(o).dump() << '\n';
}

void emit_plot_data(const RunResult& result, const std::filesystem::path& path) {
  if (!result.trace) {
    throw Error(ErrorCode::MissingTrace, "run '" + result.label + "' carries no trace");
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << "index,predicted,truth,drift_flag\n";
  for (const auto& p : *result.trace) {
    out << p.index << ',' << format_real(p.prediction) << ',' << format_real(p.truth) << ','
        << (p.drift_event ? 1 : 0) << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace adaptreg
