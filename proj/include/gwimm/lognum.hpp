#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gwimm {

/// A nonnegative extended real held by its natural logarithm.
///
/// Population sizes in this library routinely reach e^(n^2) and beyond, so
/// counts are never materialized; only log-values are. Zero is a separate
/// state rather than log_value = -inf so that it survives serialization.
class LogMagnitude {
 public:
  constexpr LogMagnitude() = default;  // zero

  static constexpr LogMagnitude zero() { return LogMagnitude{}; }
  /// Positive value e^log_value. Throws std::invalid_argument on NaN or +-inf.
  static LogMagnitude from_log(double log_value);
  /// From a finite v >= 0. Throws std::invalid_argument otherwise.
  static LogMagnitude from_value(double v);
  static LogMagnitude from_count(std::uint64_t count);

  constexpr bool is_zero() const { return !positive_; }
  constexpr bool is_positive() const { return positive_; }

  /// Natural log of the value. Only meaningful when is_positive().
  constexpr double log_value() const { return log_; }

  /// The represented value as a double; +inf when it exceeds the range.
  double value() const;

  friend constexpr bool operator==(const LogMagnitude&, const LogMagnitude&) = default;
  friend constexpr std::partial_ordering operator<=>(const LogMagnitude& x, const LogMagnitude& y) {
    if (x.positive_ != y.positive_) return x.positive_ <=> y.positive_;
    if (!x.positive_) return std::partial_ordering::equivalent;
    return x.log_ <=> y.log_;
  }

 private:
  bool positive_ = false;
  double log_ = 0.0;
};

/// Exact-sum in log domain: max + log1p(exp(min - max)).
LogMagnitude lse_add(LogMagnitude x, LogMagnitude y);

/// x * mu^m, as a single fused multiply-add on the log-value.
LogMagnitude scale_pow(LogMagnitude x, double mu, std::int64_t m);

/// max(log x, 0), with log+ 0 = 0.
double log_plus(LogMagnitude x);

/// Decimal string of log_value (shortest round-trip form), or "zero".
std::string to_string(LogMagnitude x);
/// Inverse of to_string. Throws std::invalid_argument on malformed input.
LogMagnitude parse_log_magnitude(std::string_view text);

/// Shortest round-trip decimal for a double; shared by every text output.
std::string format_double(double v);

}  // namespace gwimm
