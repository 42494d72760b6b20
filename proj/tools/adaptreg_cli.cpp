// adaptreg: run single experiments or the full experiment matrix.
//
//   adaptreg run --dataset AirQuality --target "CO(GT)" --detector rmse --threshold 0.1e-4
//   adaptreg matrix --config configs/experiment_matrix.json --parallel 4
//   adaptreg fetch-data --dir data
//
// Exit codes: 0 success, 1 an experiment failed, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "adaptreg/experiment.hpp"

namespace fs = std::filesystem;
using namespace adaptreg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

int report(const std::vector<ExperimentOutcome>& outcomes, const std::string& out_path,
           const std::string& table_path) {
  const std::string table = render_summary_table(outcomes);
  std::cout << table;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << '\n';
      return kExitFailed;
    }
    write_results_jsonl(outcomes, out);
  }
  if (!table_path.empty()) {
    std::ofstream out(table_path);
    if (!out) {
      std::cerr << "cannot write " << table_path << '\n';
      return kExitFailed;
    }
    out << table;
  }
  for (const auto& o : outcomes) {
    if (!o.ok()) return kExitFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Label-free adaptive linear regression over data streams"};
  app.require_subcommand(1);

  std::string manifest_path = "data/manifest.json";
  std::string data_dir = "data";
  app.add_option("--manifest", manifest_path, "Dataset manifest (JSON)");
  app.add_option("--data-dir", data_dir, "Directory holding the dataset files");

  // run
  auto* run = app.add_subcommand("run", "Run a single experiment");
  ExperimentConfig cfg;
  cfg.label = "run";
  std::string detector = "rmse";
  std::string threshold = "0";
  std::string adwin_delta = "0.002";
  std::string z1_policy = "advance";
  std::string sentinel = "fidelity";
  std::string trace_path;
  std::string run_out;
  std::size_t adwin_feature = 0;
  bool no_adwin_reset = false;
  run->add_option("--label", cfg.label, "Label used in reports");
  run->add_option("--dataset", cfg.dataset, "Dataset name from the manifest")->required();
  run->add_option("--target", cfg.target, "Target column")->required();
  run->add_option("--detector", detector, "rmse | adwin+rmse | none")
      ->check(CLI::IsMember({"rmse", "adwin+rmse", "none"}));
  run->add_option("--working-points", cfg.working_points, "Labeled prefix length");
  run->add_option("--fit-window", cfg.fit_window, "Model fitting window size");
  run->add_option("--buffer", cfg.buffer, "Evaluation buffer size");
  run->add_option("--threshold", threshold, "RMSE delta threshold (e.g. 0.1e-4)");
  run->add_option("--adwin-delta", adwin_delta, "ADWIN confidence parameter");
  run->add_option("--z1-policy", z1_policy, "advance | on-drift-only")
      ->check(CLI::IsMember({"advance", "on-drift-only"}));
  auto* feat_opt = run->add_option("--adwin-feature", adwin_feature,
                                   "Feed ADWIN this standardized feature instead of the prediction");
  run->add_flag("--no-adwin-reset", no_adwin_reset, "Keep ADWIN state across model replacements");
  run->add_option("--sentinel", sentinel, "fidelity | quality")
      ->check(CLI::IsMember({"fidelity", "quality"}));
  run->add_option("--trace", trace_path, "Write the per-point trace CSV here");
  run->add_option("--out", run_out, "Write the result as JSON lines here");

  // matrix
  auto* matrix = app.add_subcommand("matrix", "Run every experiment of a matrix config file");
  std::string config_path;
  std::size_t parallel = 1;
  std::string matrix_out;
  std::string table_out;
  std::string trace_dir;
  matrix->add_option("--config", config_path, "Matrix config (JSON)")->required();
  matrix->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  matrix->add_option("--out", matrix_out, "Results file (JSON lines)");
  matrix->add_option("--table", table_out, "Summary table file");
  matrix->add_option("--trace-dir", trace_dir, "Write one trace CSV per experiment here");

  // fetch-data
  auto* fetch = app.add_subcommand("fetch-data", "Download and checksum the datasets");
  std::string fetch_dir = "data";
  fetch->add_option("--dir", fetch_dir, "Destination directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fetch) {
      const std::string cmd = "python3 " + shell_quote(ADAPTREG_FETCH_SCRIPT) + " --dir " +
                              shell_quote(fetch_dir) + " --manifest " + shell_quote(manifest_path);
      const int rc = std::system(cmd.c_str());
      return rc == 0 ? kExitOk : kExitFailed;
    }

    const DatasetManifest manifest = DatasetManifest::load_file(manifest_path);

    if (*run) {
      cfg.detector = parse_detector_mode(detector);
      cfg.rmse_delta_threshold = parse_real(threshold, "--threshold");
      cfg.adwin_delta = parse_real(adwin_delta, "--adwin-delta");
      cfg.z1_policy = parse_z1_policy(z1_policy);
      cfg.sentinel = parse_sentinel_mode(sentinel);
      cfg.adwin_reset = !no_adwin_reset;
      if (feat_opt->count() > 0) cfg.adwin_feature = adwin_feature;
      if (!trace_path.empty()) cfg.trace_path = trace_path;
      // Bad names and sizes are usage errors, not run failures.
      engine_config(cfg);
      manifest.resolve(cfg.dataset, cfg.target, data_dir);

      ExperimentOutcome outcome;
      outcome.config = cfg;
      try {
        outcome.result = run_experiment(cfg, manifest, data_dir);
      } catch (const Error& e) {
        outcome.error_code = e.code();
        outcome.error = e.what();
      }
      return report({outcome}, run_out, "");
    }

    ExperimentMatrix m = ExperimentMatrix::load_file(config_path);
    if (!trace_dir.empty()) {
      for (auto& e : m.experiments) {
        std::string file = e.label;
        for (char& c : file) {
          if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
        }
        e.trace_path = fs::path(trace_dir) / (file + ".csv");
      }
    }
    return report(run_matrix(m, manifest, data_dir, parallel), matrix_out, table_out);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError ? kExitUsage : kExitFailed;
  }
}
