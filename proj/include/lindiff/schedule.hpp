#pragma once

#include <string_view>

#include "lindiff/matcore.hpp"

namespace lindiff {

enum class ScheduleKind { Linear, Constant, Custom };

ScheduleKind parseScheduleKind(std::string_view name);
std::string_view toString(ScheduleKind kind);

/// Per-step noise levels sigma_t for t = 0..T and the cumulative levels
/// sigma_bar_t = sqrt(sum_{i<=t} sigma_i^2).
struct NoiseSchedule {
  ScheduleKind kind = ScheduleKind::Custom;
  Vector sigmas;
  Vector cumulative;

  /// T, the index of the last step.
  int steps() const { return static_cast<int>(sigmas.size()) - 1; }
};

/// constant: sigma_t = scale / T; linear: sigma_t proportional to t with
/// sigma_bar_T = scale. sigma_0 = 0 in both.
NoiseSchedule makeSchedule(ScheduleKind kind, int steps, double scale);
NoiseSchedule makeSchedule(std::string_view kind, int steps, double scale);

/// Custom schedule from per-step sigmas (sigma_0 included).
NoiseSchedule customSchedule(const Vector& sigmas);

/// Custom schedule hitting the given non-decreasing cumulative levels.
NoiseSchedule scheduleFromLevels(const Vector& levels);

/// Default injected-noise magnitudes: e_T = 1 and e_t = 1/sqrt(T) below T.
Vector defaultInjection(int steps);

}  // namespace lindiff
