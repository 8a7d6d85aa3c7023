#include "topophase/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "topophase/error.hpp"

namespace topophase {

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::HeavisideSu3: return "heaviside_su3";
    case ScheduleKind::IndependentSu3: return "independent_su3";
    case ScheduleKind::TwoComponentSu3: return "two_component_su3";
    case ScheduleKind::QubitPair: return "qubit_pair";
    case ScheduleKind::Custom: return "custom";
  }
  return "unknown";
}

namespace {

std::vector<double> heaviside_phases(double t) {
  const double step = heaviside(t - 0.5);
  return {kPi / 3.0 * (2.0 * t - (2.0 * t - 1.0) * step), -2.0 * kPi / 3.0 * t,
          kPi / 3.0 * (2.0 * t - 1.0) * step};
}

std::vector<double> independent_phases(double t) {
  return {kPi / 3.0 * t, kPi / 3.0 * t, -2.0 * kPi / 3.0 * t};
}

std::vector<double> two_component_phases(double t) { return {kPi / 2.0 * t, -kPi / 2.0 * t, 0.0}; }

std::vector<double> qubit_phases(double t) { return {kPi / 2.0 * t, -kPi / 2.0 * t}; }

}  // namespace

PhaseSchedule builtin_schedule(ScheduleKind kind) {
  PhaseSchedule s;
  s.kind = kind;
  s.su_constrained = true;
  switch (kind) {
    case ScheduleKind::HeavisideSu3:
      s.dim = 3;
      s.signal_phases = s.idler_phases = heaviside_phases;
      s.kinks = {0.5};
      s.formula =
          "phi1 = chi1 = (pi/3)[2t - (2t-1) H(t-1/2)]; phi2 = chi2 = -(2pi/3) t; "
          "phi3 = chi3 = (pi/3)(2t-1) H(t-1/2)";
      break;
    case ScheduleKind::IndependentSu3:
      s.dim = 3;
      s.signal_phases = s.idler_phases = independent_phases;
      s.formula =
          "phi1 = phi2 = (pi/3) t_s; phi3 = -(2pi/3) t_s; chi1 = chi2 = (pi/3) t_i; "
          "chi3 = -(2pi/3) t_i";
      break;
    case ScheduleKind::TwoComponentSu3:
      s.dim = 3;
      s.signal_phases = s.idler_phases = two_component_phases;
      s.formula = "phi1 = -phi2 = (pi/2) t_s; phi3 = 0; chi1 = -chi2 = (pi/2) t_i; chi3 = 0";
      break;
    case ScheduleKind::QubitPair:
      s.dim = 2;
      s.signal_phases = s.idler_phases = qubit_phases;
      s.formula = "phi1 = -phi2 = (pi/2) t_s; chi1 = -chi2 = (pi/2) t_i";
      break;
    case ScheduleKind::Custom:
      throw Error(ErrorCode::UnknownSchedule, "custom schedules need phase tables");
  }
  return s;
}

const std::vector<ScheduleKind>& builtin_schedule_kinds() {
  static const std::vector<ScheduleKind> kinds{ScheduleKind::HeavisideSu3,
                                               ScheduleKind::IndependentSu3,
                                               ScheduleKind::TwoComponentSu3,
                                               ScheduleKind::QubitPair};
  return kinds;
}

PhaseSchedule schedule_by_name(std::string_view name) {
  for (ScheduleKind kind : builtin_schedule_kinds()) {
    if (to_string(kind) == name) return builtin_schedule(kind);
  }
  throw Error(ErrorCode::UnknownSchedule, "no built-in schedule named '" + std::string(name) + "'");
}

namespace {

PhaseSchedule::PhaseFn interpolator(std::vector<double> knots, std::vector<std::vector<double>> rows) {
  return [knots = std::move(knots), rows = std::move(rows)](double t) {
    if (t <= knots.front()) return rows.front();
    if (t >= knots.back()) return rows.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(knots.begin(), knots.end(), t) -
                                             knots.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - knots[lo]) / (knots[hi] - knots[lo]);
    std::vector<double> out(rows[lo].size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (1.0 - w) * rows[lo][k] + w * rows[hi][k];
    return out;
  };
}

}  // namespace

PhaseSchedule custom_schedule(std::vector<double> knots, std::vector<std::vector<double>> signal_rows,
                              std::vector<std::vector<double>> idler_rows, bool su_constrained) {
  if (knots.size() < 2) throw Error(ErrorCode::InvalidConfig, "custom schedule needs >= 2 knots");
  if (signal_rows.size() != knots.size() || idler_rows.size() != knots.size()) {
    throw Error(ErrorCode::InvalidConfig, "phase tables must have one row per knot");
  }
  if (!std::is_sorted(knots.begin(), knots.end()) ||
      std::adjacent_find(knots.begin(), knots.end()) != knots.end()) {
    throw Error(ErrorCode::InvalidConfig, "knots must be strictly increasing");
  }
  const std::size_t d = signal_rows.front().size();
  if (d < 2 || d > 8) {
    throw Error(ErrorCode::DimensionOutOfRange, "custom schedule dimension " + std::to_string(d));
  }
  for (const auto* table : {&signal_rows, &idler_rows}) {
    for (const auto& row : *table) {
      if (row.size() != d) throw Error(ErrorCode::DimensionMismatch, "ragged phase table");
    }
  }
  PhaseSchedule s;
  s.kind = ScheduleKind::Custom;
  s.dim = static_cast<int>(d);
  s.su_constrained = su_constrained;
  s.kinks.assign(knots.begin() + 1, knots.end() - 1);
  s.signal_phases = interpolator(knots, std::move(signal_rows));
  s.idler_phases = interpolator(std::move(knots), std::move(idler_rows));
  s.formula = "piecewise-linear interpolation of sampled phase tables";
  return s;
}

SchedulePhases schedule_phases(const PhaseSchedule& schedule, double t_signal, double t_idler) {
  if (!schedule.signal_phases || !schedule.idler_phases) {
    throw Error(ErrorCode::UnknownSchedule, "schedule has no phase functions");
  }
  SchedulePhases out;
  out.signal = schedule.signal_phases(t_signal);
  out.idler = schedule.idler_phases(t_idler);
  out.out_of_range = t_signal < 0.0 || t_signal > 1.0 || t_idler < 0.0 || t_idler > 1.0;
  if (schedule.su_constrained) {
    for (const auto* phases : {&out.signal, &out.idler}) {
      const double sum = std::accumulate(phases->begin(), phases->end(), 0.0);
      if (std::abs(sum) > 1e-12) {
        throw Error(ErrorCode::NotTraceFree, "phase sum " + std::to_string(sum));
      }
    }
  }
  return out;
}

}  // namespace topophase
