#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace adaptreg {

/// One value per independent variable, in a fixed column order.
using FeatureVector = std::vector<double>;

struct LabeledRow {
  FeatureVector features;
  double target = 0.0;
  /// True when target is a model prediction rather than ground truth.
  bool is_pseudo = false;
};

/// Per-feature z-score transform. Degenerate features (std < 1e-12) get std = 1
/// so they map to (x - mean) instead of blowing up.
class Standardizer {
 public:
  static constexpr double kDegenerateStd = 1e-12;

  Standardizer(std::vector<double> means, std::vector<double> std_devs);

  std::size_t arity() const noexcept { return means_.size(); }
  const std::vector<double>& means() const noexcept { return means_; }
  const std::vector<double>& std_devs() const noexcept { return std_devs_; }

  FeatureVector apply(std::span<const double> features) const;
  void apply_in_place(FeatureVector& features) const;

 private:
  std::vector<double> means_;
  std::vector<double> std_devs_;
};

/// Sample means and population (1/N) standard deviations of the feature columns.
Standardizer fit_standardizer(std::span<const LabeledRow> rows);

FeatureVector standardize(const Standardizer& s, std::span<const double> features);

class LinearModel {
 public:
  LinearModel(double intercept, std::vector<double> coefficients, bool regularized = false);

  double intercept() const noexcept { return intercept_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  std::size_t feature_count() const noexcept { return coefficients_.size(); }
  /// Set when the ridge fallback was needed to solve the normal equations.
  bool regularized() const noexcept { return regularized_; }

  double predict(std::span<const double> features) const;

  bool operator==(const LinearModel&) const = default;

 private:
  double intercept_;
  std::vector<double> coefficients_;
  bool regularized_;
};

/// Accumulates X^T X and X^T Y (with a leading ones column for the intercept)
/// one row at a time, so callers can fit from any row container.
class OlsAccumulator {
 public:
  /// Condition-number estimate above which the ridge fallback kicks in.
  static constexpr double kMaxCondition = 1e12;
  static constexpr double kRidgeScale = 1e-8;

  explicit OlsAccumulator(std::size_t feature_count);

  void add(std::span<const double> features, double target);
  void add(const LabeledRow& row) { add(row.features, row.target); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t feature_count() const noexcept { return feature_count_; }

  LinearModel solve() const;

 private:
  std::size_t feature_count_;
  std::size_t rows_ = 0;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd moment_;
};

/// Ordinary least squares via the normal equations; requires at least
/// feature_count + 1 rows.
LinearModel fit_ols(std::span<const LabeledRow> rows);

double predict(const LinearModel& model, std::span<const double> features);

}  // namespace adaptreg
