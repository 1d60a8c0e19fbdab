#pragma once

#include <chrono>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace ccnsim {

/// Durations are integral nanoseconds; all event arithmetic is fixed-point so
/// long runs replay bit-exactly.
using Duration = std::chrono::nanoseconds;

/// Simulation timestamp: nanoseconds since the start of the run.
class SimTime {
public:
  constexpr SimTime() = default;

  static constexpr SimTime from_ns(std::int64_t ns) { return SimTime{ns}; }

  static SimTime from_seconds(double s) {
    return SimTime{static_cast<std::int64_t>(std::llround(s * 1e9))};
  }

  constexpr std::int64_t ns() const { return ns_; }
  double seconds() const { return static_cast<double>(ns_) / 1e9; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;

  constexpr SimTime operator+(Duration d) const { return SimTime{ns_ + d.count()}; }
  constexpr SimTime operator-(Duration d) const { return SimTime{ns_ - d.count()}; }
  constexpr Duration operator-(SimTime other) const { return Duration{ns_ - other.ns_}; }

private:
  explicit constexpr SimTime(std::int64_t ns) : ns_(ns) {}
  std::int64_t ns_ = 0;
};

inline Duration duration_from_seconds(double s) {
  return Duration{static_cast<std::int64_t>(std::llround(s * 1e9))};
}

inline double duration_seconds(Duration d) {
  return static_cast<double>(d.count()) / 1e9;
}

std::string format_time(SimTime t);

}  // namespace ccnsim
