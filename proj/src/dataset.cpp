#include "adaptreg/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "adaptreg/errors.hpp"

namespace adaptreg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

bool blank(const std::vector<std::string_view>& fields) {
  return std::all_of(fields.begin(), fields.end(), [](auto f) { return f.empty(); });
}

std::optional<double> parse_number(std::string_view text, char decimal) {
  if (text.empty()) return std::nullopt;
  std::string buf(text);
  if (decimal != '.') std::replace(buf.begin(), buf.end(), decimal, '.');
  const char* first = buf.data();
  const char* last = buf.data() + buf.size();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

struct ColumnPlan {
  std::vector<std::size_t> features;
  std::size_t target = 0;
};

ColumnPlan plan_columns(const std::vector<std::string_view>& header, const DatasetSpec& spec,
                        const std::filesystem::path& path) {
  std::unordered_map<std::string_view, std::size_t> by_name;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!header[i].empty()) by_name.emplace(header[i], i);
  }
  auto find = [&](const std::string& name) {
    const auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw Error(ErrorCode::SchemaMismatch,
                  path.string() + ": expected column '" + name + "' is missing");
    }
    return it->second;
  };
  ColumnPlan plan;
  for (const auto& name : spec.feature_columns) plan.features.push_back(find(name));
  plan.target = find(spec.target_column);
  return plan;
}

}  // namespace

std::string_view to_string(SentinelMode mode) {
  return mode == SentinelMode::Fidelity ? "fidelity" : "quality";
}

SentinelMode parse_sentinel_mode(std::string_view text) {
  if (text == "fidelity") return SentinelMode::Fidelity;
  if (text == "quality") return SentinelMode::Quality;
  throw Error(ErrorCode::ConfigError, "unknown sentinel mode '" + std::string(text) + "'");
}

LoadedDataset load(const DatasetSpec& spec, SentinelMode mode) {
  if (std::find(spec.feature_columns.begin(), spec.feature_columns.end(), spec.target_column) !=
      spec.feature_columns.end()) {
    throw Error(ErrorCode::ConfigError, "target column '" + spec.target_column +
                                            "' is also listed as a feature");
  }
  if (spec.feature_columns.empty()) {
    throw Error(ErrorCode::ConfigError, "dataset '" + spec.name + "' lists no feature columns");
  }
  if (spec.source_paths.empty()) {
    throw Error(ErrorCode::ConfigError, "dataset '" + spec.name + "' has no source files");
  }

  LoadedDataset out;
  std::size_t next_index = 0;
  for (const auto& path : spec.source_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());

    std::string header_line;
    if (!std::getline(in, header_line)) {
      throw Error(ErrorCode::SchemaMismatch, path.string() + ": file has no header line");
    }
    // Strip a UTF-8 byte-order mark if present.
    if (header_line.rfind("\xEF\xBB\xBF", 0) == 0) header_line.erase(0, 3);
    const ColumnPlan plan = plan_columns(split(header_line, spec.format.delimiter), spec, path);
    const std::size_t needed =
        std::max(plan.target, *std::max_element(plan.features.begin(), plan.features.end())) + 1;

    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      const auto fields = split(line, spec.format.delimiter);
      if (blank(fields)) {
        ++out.skipped_blank_rows;
        continue;
      }
      if (fields.size() < needed) {
        throw Error(ErrorCode::ParseError, path.string() + ": row " + std::to_string(line_no) +
                                               " has " + std::to_string(fields.size()) +
                                               " fields, expected at least " +
                                               std::to_string(needed));
      }
      auto cell = [&](std::size_t col, const std::string& name) {
        const auto v = parse_number(fields[col], spec.format.decimal);
        if (!v) {
          throw Error(ErrorCode::ParseError, path.string() + ": row " + std::to_string(line_no) +
                                                 ", column '" + name + "': cannot parse '" +
                                                 std::string(fields[col]) + "'");
        }
        return *v;
      };

      StreamRecord rec;
      rec.features.reserve(plan.features.size());
      for (std::size_t j = 0; j < plan.features.size(); ++j) {
        rec.features.push_back(cell(plan.features[j], spec.feature_columns[j]));
      }
      rec.target = cell(plan.target, spec.target_column);

      if (mode == SentinelMode::Quality && spec.missing_sentinel) {
        const double s = *spec.missing_sentinel;
        const bool has_sentinel =
            rec.target == s ||
            std::any_of(rec.features.begin(), rec.features.end(), [&](double v) { return v == s; });
        if (has_sentinel) {
          ++out.dropped_sentinel_rows;
          continue;
        }
      }
      rec.index = next_index++;
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

UnlabeledStream::UnlabeledStream(std::vector<std::size_t> indices, std::vector<FeatureVector> features)
    : indices_(std::move(indices)), features_(std::move(features)) {
  if (indices_.size() != features_.size()) {
    throw Error(ErrorCode::LengthMismatch, "stream indices and features differ in length");
  }
}

StreamSplit make_stream(std::span<const StreamRecord> records, std::size_t working_points) {
  if (working_points >= records.size()) {
    throw Error(ErrorCode::InsufficientData, std::to_string(records.size()) +
                                                 " records cannot cover " +
                                                 std::to_string(working_points) +
                                                 " working points plus a stream");
  }
  StreamSplit split;
  split.labeled_prefix.reserve(working_points);
  for (std::size_t i = 0; i < working_points; ++i) {
    split.labeled_prefix.push_back(LabeledRow{records[i].features, records[i].target, false});
  }
  const std::size_t rest = records.size() - working_points;
  std::vector<std::size_t> indices;
  std::vector<FeatureVector> features;
  std::vector<double> truths;
  indices.reserve(rest);
  features.reserve(rest);
  truths.reserve(rest);
  for (std::size_t i = working_points; i < records.size(); ++i) {
    indices.push_back(records[i].index);
    features.push_back(records[i].features);
    truths.push_back(records[i].target);
  }
  split.unlabeled = UnlabeledStream(std::move(indices), std::move(features));
  split.truths = HeldOutTruth(std::move(truths));
  return split;
}

DatasetManifest DatasetManifest::parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("manifest is not valid JSON: ") + e.what());
  }
  DatasetManifest manifest;
  try {
    for (const auto& [name, d] : doc.at("datasets").items()) {
      Entry e;
      e.files = d.at("files").get<std::vector<std::string>>();
      const auto delim = d.value("delimiter", std::string(","));
      const auto dec = d.value("decimal", std::string("."));
      if (delim.size() != 1 || dec.size() != 1) {
        throw Error(ErrorCode::ConfigError, name + ": delimiter and decimal must be single characters");
      }
      e.format = CsvFormat{delim[0], dec[0]};
      if (d.contains("missing_sentinel") && !d["missing_sentinel"].is_null()) {
        e.missing_sentinel = d["missing_sentinel"].get<double>();
      }
      if (d.contains("instances")) e.instances = d["instances"].get<std::size_t>();
      for (const auto& [target, features] : d.at("targets").items()) {
        e.targets[target] = features.get<std::vector<std::string>>();
      }
      if (d.contains("sha256")) {
        for (const auto& [file, digest] : d["sha256"].items()) {
          e.sha256[file] = digest.is_string() ? digest.get<std::string>() : std::string();
        }
      }
      manifest.datasets_.emplace(name, std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed manifest: ") + e.what());
  }
  return manifest;
}

DatasetManifest DatasetManifest::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

DatasetSpec DatasetManifest::resolve(const std::string& dataset, const std::string& target,
                                     const std::filesystem::path& data_dir) const {
  const auto it = datasets_.find(dataset);
  if (it == datasets_.end()) throw Error(ErrorCode::ConfigError, "unknown dataset '" + dataset + "'");
  const Entry& e = it->second;
  const auto t = e.targets.find(target);
  if (t == e.targets.end()) {
    throw Error(ErrorCode::ConfigError, "dataset '" + dataset + "' has no target '" + target + "'");
  }
  DatasetSpec spec;
  spec.name = dataset;
  for (const auto& f : e.files) spec.source_paths.push_back(data_dir / f);
  spec.format = e.format;
  spec.feature_columns = t->second;
  spec.target_column = target;
  spec.missing_sentinel = e.missing_sentinel;
  spec.expected_instances = e.instances;
  return spec;
}

}  // namespace adaptreg
