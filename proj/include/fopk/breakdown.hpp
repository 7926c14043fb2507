#pragma once

#include <cmath>
#include <string>
#include <utility>

namespace fopk {

/// Why a recurrence had to stop: which scalar vanished, and in what role.
struct BreakdownKind {
  enum class Reason {
    PivotDenominator,   // a named divisor is negligible
    DeltaZero,          // determinant of the 3x3 Cramer system
    NormalizationZero,  // C_k + G_k in A_k = 1 / (C_k + G_k)
    InitMomentZero,     // c1 or delta while building P_1 / P_2
    NonFinite,          // an intermediate or iterate stopped being finite
  };

  Reason reason = Reason::NonFinite;
  /// The exact denominator or quantity, e.g. "c1", "delta", "a13", "(y_k, A z_k)", "C+G".
  std::string name;

  static BreakdownKind pivot(std::string name) { return {Reason::PivotDenominator, std::move(name)}; }
  static BreakdownKind delta_zero() { return {Reason::DeltaZero, "Delta_k"}; }
  static BreakdownKind normalization_zero() { return {Reason::NormalizationZero, "C+G"}; }
  static BreakdownKind init_moment(std::string name) { return {Reason::InitMomentZero, std::move(name)}; }
  static BreakdownKind non_finite(std::string name) { return {Reason::NonFinite, std::move(name)}; }

  friend bool operator==(const BreakdownKind&, const BreakdownKind&) = default;
};

inline const char* reason_label(BreakdownKind::Reason reason) {
  switch (reason) {
    case BreakdownKind::Reason::PivotDenominator: return "pivot";
    case BreakdownKind::Reason::DeltaZero: return "delta-zero";
    case BreakdownKind::Reason::NormalizationZero: return "normalization-zero";
    case BreakdownKind::Reason::InitMomentZero: return "init-moment-zero";
    case BreakdownKind::Reason::NonFinite: return "non-finite";
  }
  return "unknown";
}

/// "pivot:a13", "init-moment-zero:c1", ...
inline std::string to_string(const BreakdownKind& kind) {
  return std::string(reason_label(kind.reason)) + ":" + kind.name;
}

/// True when `value` cannot be told apart from zero at relative tolerance `tol`
/// against `scale`, the magnitude of the terms it was formed from. Exact zero and
/// non-finite values are always negligible.
template <typename Scalar>
bool negligible(Scalar value, Scalar scale, Scalar tol) {
  if (!std::isfinite(value)) return true;
  if (value == Scalar(0)) return true;
  return std::abs(value) <= tol * scale;
}

}  // namespace fopk
