#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adaptreg/regression.hpp"

namespace adaptreg {

enum class SentinelMode {
  Fidelity,  // keep sentinel-valued cells as numbers
  Quality,   // drop rows with a sentinel in any used column
};

std::string_view to_string(SentinelMode mode);
SentinelMode parse_sentinel_mode(std::string_view text);

struct CsvFormat {
  char delimiter = ',';
  char decimal = '.';
};

/// One dataset/target combination, resolved to concrete files.
struct DatasetSpec {
  std::string name;
  /// Read in order and concatenated; each file carries its own header line.
  std::vector<std::filesystem::path> source_paths;
  CsvFormat format;
  std::vector<std::string> feature_columns;
  std::string target_column;
  std::optional<double> missing_sentinel;
  std::optional<std::size_t> expected_instances;
};

struct StreamRecord {
  std::size_t index = 0;
  FeatureVector features;
  double target = 0.0;

  bool operator==(const StreamRecord&) const = default;
};

struct LoadedDataset {
  std::vector<StreamRecord> records;
  std::size_t dropped_sentinel_rows = 0;
  std::size_t skipped_blank_rows = 0;
};

LoadedDataset load(const DatasetSpec& spec, SentinelMode mode = SentinelMode::Fidelity);

/// Features of the unlabeled stream segment. Deliberately has no access to targets.
class UnlabeledStream {
 public:
  UnlabeledStream() = default;
  UnlabeledStream(std::vector<std::size_t> indices, std::vector<FeatureVector> features);

  std::size_t size() const noexcept { return features_.size(); }
  std::size_t index(std::size_t i) const { return indices_.at(i); }
  std::span<const double> features(std::size_t i) const { return features_.at(i); }

 private:
  std::vector<std::size_t> indices_;
  std::vector<FeatureVector> features_;
};

/// Ground truth of the unlabeled segment, routed only to final evaluation.
class HeldOutTruth {
 public:
  HeldOutTruth() = default;
  explicit HeldOutTruth(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_.at(i); }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

struct StreamSplit {
  std::vector<LabeledRow> labeled_prefix;
  UnlabeledStream unlabeled;
  HeldOutTruth truths;
};

/// First working_points records stay labeled; the rest are split into
/// features (engine-facing) and truths (evaluation-facing).
StreamSplit make_stream(std::span<const StreamRecord> records, std::size_t working_points);

/// Column mappings, file conventions and checksums for the known datasets.
class DatasetManifest {
 public:
  struct Entry {
    std::vector<std::string> files;
    CsvFormat format;
    std::optional<double> missing_sentinel;
    std::optional<std::size_t> instances;
    /// target column -> feature columns, in model order.
    std::map<std::string, std::vector<std::string>> targets;
    /// file name -> expected SHA-256 (hex); empty when not pinned.
    std::map<std::string, std::string> sha256;
  };

  static DatasetManifest parse(std::string_view json_text);
  static DatasetManifest load_file(const std::filesystem::path& path);

  const std::map<std::string, Entry>& datasets() const noexcept { return datasets_; }

  /// Throws ConfigError for unknown dataset or target names.
  DatasetSpec resolve(const std::string& dataset, const std::string& target,
                      const std::filesystem::path& data_dir) const;

 private:
  std::map<std::string, Entry> datasets_;
};

}  // namespace adaptreg
