#include "adaptreg/regression.hpp"

#include <cmath>
#include <string>

#include "adaptreg/errors.hpp"

namespace adaptreg {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFiniteInput, std::string(what) + " contains a non-finite value");
    }
  }
}

void require_arity(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw Error(ErrorCode::ArityMismatch,
                "expected " + std::to_string(expected) + " features, got " + std::to_string(got));
  }
}

}  // namespace

Standardizer::Standardizer(std::vector<double> means, std::vector<double> std_devs)
    : means_(std::move(means)), std_devs_(std::move(std_devs)) {
  require_arity(means_.size(), std_devs_.size());
  for (double s : std_devs_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::InvalidArgument, "standard deviations must be positive and finite");
    }
  }
}

FeatureVector Standardizer::apply(std::span<const double> features) const {
  FeatureVector out(features.begin(), features.end());
  apply_in_place(out);
  return out;
}

void Standardizer::apply_in_place(FeatureVector& features) const {
  require_arity(means_.size(), features.size());
  for (std::size_t j = 0; j < features.size(); ++j) {
    features[j] = (features[j] - means_[j]) / std_devs_[j];
  }
}

Standardizer fit_standardizer(std::span<const LabeledRow> rows) {
  if (rows.empty()) {
    throw Error(ErrorCode::EmptyBatch, "cannot fit a standardizer on zero rows");
  }
  const std::size_t arity = rows.front().features.size();
  for (const auto& row : rows) {
    if (row.features.size() != arity) {
      throw Error(ErrorCode::RaggedRows, "feature vectors differ in length");
    }
  }

  const double count = static_cast<double>(rows.size());
  std::vector<double> means(arity, 0.0);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < arity; ++j) means[j] += row.features[j];
  }
  for (double& m : means) m /= count;

  // Two-pass variance around the computed mean.
  std::vector<double> stds(arity, 0.0);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < arity; ++j) {
      const double d = row.features[j] - means[j];
      stds[j] += d * d;
    }
  }
  for (double& s : stds) {
    s = std::sqrt(s / count);
    if (s < Standardizer::kDegenerateStd) s = 1.0;
  }
  return Standardizer(std::move(means), std::move(stds));
}

FeatureVector standardize(const Standardizer& s, std::span<const double> features) {
  return s.apply(features);
}

LinearModel::LinearModel(double intercept, std::vector<double> coefficients, bool regularized)
    : intercept_(intercept), coefficients_(std::move(coefficients)), regularized_(regularized) {
  if (!std::isfinite(intercept_)) {
    throw Error(ErrorCode::NonFiniteInput, "intercept is not finite");
  }
  require_finite(coefficients_, "coefficients");
}

double LinearModel::predict(std::span<const double> features) const {
  require_arity(coefficients_.size(), features.size());
  double y = intercept_;
  for (std::size_t j = 0; j < features.size(); ++j) y += coefficients_[j] * features[j];
  return y;
}

OlsAccumulator::OlsAccumulator(std::size_t feature_count)
    : feature_count_(feature_count),
      gram_(Eigen::MatrixXd::Zero(feature_count + 1, feature_count + 1)),
      moment_(Eigen::VectorXd::Zero(feature_count + 1)) {}

void OlsAccumulator::add(std::span<const double> features, double target) {
  require_arity(feature_count_, features.size());
  const std::size_t p = feature_count_ + 1;
  // Design row is [1, x_1, ..., x_n]; only the lower triangle is accumulated.
  for (std::size_t i = 0; i < p; ++i) {
    const double xi = i == 0 ? 1.0 : features[i - 1];
    for (std::size_t k = 0; k <= i; ++k) {
      const double xk = k == 0 ? 1.0 : features[k - 1];
      gram_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) += xi * xk;
    }
    moment_(static_cast<Eigen::Index>(i)) += xi * target;
  }
  ++rows_;
}

LinearModel OlsAccumulator::solve() const {
  const std::size_t p = feature_count_ + 1;
  if (rows_ < p) {
    throw Error(ErrorCode::InsufficientRows, "need at least " + std::to_string(p) + " rows, got " +
                                                 std::to_string(rows_));
  }

  Eigen::MatrixXd gram = gram_.selfadjointView<Eigen::Lower>();
  Eigen::VectorXd beta;
  bool regularized = false;

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  const bool well_posed = llt.info() == Eigen::Success && llt.rcond() * kMaxCondition > 1.0;
  if (well_posed) {
    beta = llt.solve(moment_);
  } else {
    const double lambda = kRidgeScale * gram.trace() / static_cast<double>(p);
    Eigen::MatrixXd ridge = gram;
    ridge.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> ridge_llt(ridge);
    if (ridge_llt.info() != Eigen::Success || !(lambda > 0.0)) {
      throw Error(ErrorCode::NumericalFailure, "ridge-stabilized normal equations are not solvable");
    }
    beta = ridge_llt.solve(moment_);
    regularized = true;
  }
  if (!beta.allFinite()) {
    throw Error(ErrorCode::NumericalFailure, "least-squares solution is not finite");
  }

  std::vector<double> coefficients(beta.data() + 1, beta.data() + beta.size());
  return LinearModel(beta(0), std::move(coefficients), regularized);
}

LinearModel fit_ols(std::span<const LabeledRow> rows) {
  if (rows.empty()) {
    throw Error(ErrorCode::InsufficientRows, "cannot fit a model on zero rows");
  }
  OlsAccumulator acc(rows.front().features.size());
  for (const auto& row : rows) acc.add(row);
  return acc.solve();
}

double predict(const LinearModel& model, std::span<const double> features) {
  return model.predict(features);
}

}  // namespace adaptreg
