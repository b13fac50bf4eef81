#include "gwimm/lognum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace gwimm {

LogMagnitude LogMagnitude::from_log(double log_value) {
  if (!std::isfinite(log_value)) throw std::invalid_argument("LogMagnitude: log-value must be finite");
  LogMagnitude out;
  out.positive_ = true;
  out.log_ = log_value;
  return out;
}

LogMagnitude LogMagnitude::from_value(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("LogMagnitude: value must be finite and >= 0");
  if (v == 0.0) return zero();
  return from_log(std::log(v));
}

LogMagnitude LogMagnitude::from_count(std::uint64_t count) {
  if (count == 0) return zero();
  return from_log(std::log(static_cast<double>(count)));
}

double LogMagnitude::value() const { return positive_ ? std::exp(log_) : 0.0; }

LogMagnitude lse_add(LogMagnitude x, LogMagnitude y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const double hi = std::max(x.log_value(), y.log_value());
  const double lo = std::min(x.log_value(), y.log_value());
  return LogMagnitude::from_log(hi + std::log1p(std::exp(lo - hi)));
}

LogMagnitude scale_pow(LogMagnitude x, double mu, std::int64_t m) {
  if (x.is_zero()) return x;
  return LogMagnitude::from_log(std::fma(static_cast<double>(m), std::log(mu), x.log_value()));
}

double log_plus(LogMagnitude x) { return x.is_zero() ? 0.0 : std::max(x.log_value(), 0.0); }

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

std::string to_string(LogMagnitude x) { return x.is_zero() ? std::string("zero") : format_double(x.log_value()); }

LogMagnitude parse_log_magnitude(std::string_view text) {
  if (text == "zero") return LogMagnitude::zero();
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw std::invalid_argument("parse_log_magnitude: malformed '" + std::string(text) + "'");
  return LogMagnitude::from_log(v);
}

}  // namespace gwimm
