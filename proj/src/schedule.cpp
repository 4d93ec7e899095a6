#include "lindiff/schedule.hpp"

#include <cmath>
#include <string>

namespace lindiff {
namespace {

Vector accumulate(const Vector& sigmas) {
  Vector cumulative(sigmas.size());
  double squares = 0;
  for (Eigen::Index t = 0; t < sigmas.size(); ++t) {
    squares += sigmas(t) * sigmas(t);
    cumulative(t) = std::sqrt(squares);
  }
  return cumulative;
}

}  // namespace

ScheduleKind parseScheduleKind(std::string_view name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "constant") return ScheduleKind::Constant;
  if (name == "custom") return ScheduleKind::Custom;
  throw ArgumentError("unknown schedule kind '" + std::string(name) + "'");
}

std::string_view toString(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Linear: return "linear";
    case ScheduleKind::Constant: return "constant";
    case ScheduleKind::Custom: return "custom";
  }
  return "custom";
}

NoiseSchedule makeSchedule(ScheduleKind kind, int steps, double scale) {
  if (steps < 1) throw ArgumentError("schedule: T must be >= 1");
  if (!(scale > 0) || !std::isfinite(scale)) throw ArgumentError("schedule: scale must be > 0");
  Vector sigmas = Vector::Zero(steps + 1);
  switch (kind) {
    case ScheduleKind::Constant:
      sigmas.tail(steps).setConstant(scale / steps);
      break;
    case ScheduleKind::Linear: {
      double squares = 0;
      for (int t = 1; t <= steps; ++t) squares += double(t) * double(t);
      const double norm = std::sqrt(squares);
      for (int t = 1; t <= steps; ++t) sigmas(t) = scale * t / norm;
      break;
    }
    case ScheduleKind::Custom:
      throw ArgumentError("schedule: custom schedules take explicit sigmas");
  }
  return NoiseSchedule{kind, sigmas, accumulate(sigmas)};
}

NoiseSchedule makeSchedule(std::string_view kind, int steps, double scale) {
  return makeSchedule(parseScheduleKind(kind), steps, scale);
}

NoiseSchedule customSchedule(const Vector& sigmas) {
  if (sigmas.size() < 1) throw ArgumentError("schedule: need at least sigma_0");
  for (Eigen::Index t = 0; t < sigmas.size(); ++t)
    if (!(sigmas(t) >= 0) || !std::isfinite(sigmas(t)))
      throw ArgumentError("schedule: sigmas must be finite and >= 0");
  return NoiseSchedule{ScheduleKind::Custom, sigmas, accumulate(sigmas)};
}

NoiseSchedule scheduleFromLevels(const Vector& levels) {
  if (levels.size() < 1) throw ArgumentError("schedule: need at least one level");
  Vector sigmas(levels.size());
  for (Eigen::Index t = 0; t < levels.size(); ++t) {
    if (!(levels(t) >= 0)) throw ArgumentError("schedule: levels must be >= 0");
    const double prev = t ? levels(t - 1) : 0.0;
    if (levels(t) < prev) throw ArgumentError("schedule: levels must be non-decreasing");
    sigmas(t) = std::sqrt(levels(t) * levels(t) - prev * prev);
  }
  NoiseSchedule out{ScheduleKind::Custom, sigmas, levels};
  return out;
}

Vector defaultInjection(int steps) {
  if (steps < 1) throw ArgumentError("injection schedule: T must be >= 1");
  Vector e = Vector::Constant(steps + 1, 1.0 / std::sqrt(double(steps)));
  e(steps) = 1.0;
  return e;
}

}  // namespace lindiff
