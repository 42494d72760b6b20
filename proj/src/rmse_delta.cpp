#include "adaptreg/rmse_delta.hpp"

#include <cmath>

#include "adaptreg/errors.hpp"

namespace adaptreg {

namespace {

void require_valid_rmse(double z) {
  if (!std::isfinite(z)) throw Error(ErrorCode::NonFiniteInput, "RMSE value is not finite");
  if (z < 0.0) throw Error(ErrorCode::InvalidArgument, "RMSE value is negative");
}

}  // namespace

std::string_view to_string(Z1Policy policy) {
  return policy == Z1Policy::Advance ? "advance" : "on-drift-only";
}

std::string_view to_string(DetectorMode mode) {
  switch (mode) {
    case DetectorMode::RmseOnly: return "rmse";
    case DetectorMode::AdwinGatedRmse: return "adwin+rmse";
    case DetectorMode::None: return "none";
  }
  return "none";
}

Z1Policy parse_z1_policy(std::string_view text) {
  if (text == "advance") return Z1Policy::Advance;
  if (text == "on-drift-only") return Z1Policy::OnDriftOnly;
  throw Error(ErrorCode::ConfigError, "unknown z1 policy '" + std::string(text) + "'");
}

DetectorMode parse_detector_mode(std::string_view text) {
  if (text == "rmse") return DetectorMode::RmseOnly;
  if (text == "adwin+rmse") return DetectorMode::AdwinGatedRmse;
  if (text == "none") return DetectorMode::None;
  throw Error(ErrorCode::ConfigError, "unknown detector '" + std::string(text) + "'");
}

RmseDeltaDetector::RmseDeltaDetector(double threshold, Z1Policy policy)
    : threshold_(threshold), policy_(policy) {
  // +inf is a legitimate "never fire" setting; NaN and negatives are not.
  if (std::isnan(threshold) || threshold < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "threshold must be a non-negative number");
  }
}

void RmseDeltaDetector::prime(double z1) {
  require_valid_rmse(z1);
  z_prev_ = z1;
}

bool RmseDeltaDetector::check(double z_new) {
  require_valid_rmse(z_new);
  if (!z_prev_) {
    z_prev_ = z_new;
    return false;
  }
  const bool drift = std::fabs(z_new - *z_prev_) > threshold_;
  if (policy_ == Z1Policy::Advance || drift) z_prev_ = z_new;
  return drift;
}

}  // namespace adaptreg
