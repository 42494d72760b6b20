#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace adaptreg {

/// When the stored reference RMSE moves forward.
enum class Z1Policy {
  Advance,      // after every evaluation cycle
  OnDriftOnly,  // only when a drift is declared
};

enum class DetectorMode { RmseOnly, AdwinGatedRmse, None };

std::string_view to_string(Z1Policy policy);
std::string_view to_string(DetectorMode mode);
/// Accepts "advance" / "on-drift-only".
Z1Policy parse_z1_policy(std::string_view text);
/// Accepts "rmse", "adwin+rmse", "none".
DetectorMode parse_detector_mode(std::string_view text);

/// Compares each new intermediary RMSE against the stored one and flags a drift
/// when they differ by more than the threshold.
class RmseDeltaDetector {
 public:
  explicit RmseDeltaDetector(double threshold, Z1Policy policy = Z1Policy::Advance);

  /// Stores the reference RMSE without testing it.
  void prime(double z1);

  /// The first call on an unprimed detector only stores z_new and returns false.
  bool check(double z_new);

  double threshold() const noexcept { return threshold_; }
  Z1Policy policy() const noexcept { return policy_; }
  std::optional<double> reference() const noexcept { return z_prev_; }

 private:
  double threshold_;
  Z1Policy policy_;
  std::optional<double> z_prev_;
};

}  // namespace adaptreg
