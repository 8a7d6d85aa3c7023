#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "topophase/types.hpp"

namespace topophase {

enum class ScheduleKind { HeavisideSu3, IndependentSu3, TwoComponentSu3, QubitPair, Custom };

std::string_view to_string(ScheduleKind kind);

/// Per-slit SLM phases as functions of the signal and idler control parameters.
struct PhaseSchedule {
  using PhaseFn = std::function<std::vector<double>(double)>;

  ScheduleKind kind = ScheduleKind::Custom;
  int dim = 0;
  bool su_constrained = true;
  PhaseFn signal_phases;
  PhaseFn idler_phases;
  // Parameter values where a phase function has a derivative discontinuity.
  std::vector<double> kinks;
  std::string formula;
};

/// Heaviside step with H(0) = 1.
inline double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

PhaseSchedule builtin_schedule(ScheduleKind kind);

/// Accepts heaviside_su3, independent_su3, two_component_su3, qubit_pair.
PhaseSchedule schedule_by_name(std::string_view name);

const std::vector<ScheduleKind>& builtin_schedule_kinds();

/// Piecewise-linear schedule through sampled phase tables. `knots` must be
/// strictly increasing; each row of the tables holds d phases. Parameters
/// outside the knot range clamp to the end rows.
PhaseSchedule custom_schedule(std::vector<double> knots, std::vector<std::vector<double>> signal_rows,
                              std::vector<std::vector<double>> idler_rows, bool su_constrained);

struct SchedulePhases {
  std::vector<double> signal;
  std::vector<double> idler;
  bool out_of_range = false;  // a control parameter fell outside [0, 1]
};

/// Evaluates the schedule. When it is SU(d)-constrained, phase sums larger
/// than 1e-12 raise NotTraceFree.
SchedulePhases schedule_phases(const PhaseSchedule& schedule, double t_signal, double t_idler);

}  // namespace topophase
