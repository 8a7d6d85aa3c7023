#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "topophase/qudit_state.hpp"
#include "topophase/schedule.hpp"
#include "topophase/tolerances.hpp"

namespace topophase {

/// Coincidence sampled over the Mach-Zehnder phase theta = theta_s + theta_i - pi.
struct FringePattern {
  std::vector<double> theta;
  std::vector<double> counts;
  double visibility = 0.0;
  std::optional<double> fringe_phase;
};

/// (1 + |o| cos(theta - arg o)) / 2 with o = <initial|evolved>.
double coincidence(const CoeffMatrix& initial, const CoeffMatrix& evolved, double theta);

/// Uniform grid of n_theta points on [0, 2 pi). Visibility and fringe phase
/// come from the overlap; the phase is absent below tol.fringe_phase_floor.
FringePattern fringe_pattern(const CoeffMatrix& initial, const CoeffMatrix& evolved, int n_theta,
                             const Tolerances& tol = kDefaultTolerances);

/// Least-squares fit of a + b cos(theta) + c sin(theta) to the samples;
/// returns the largest absolute residual.
double cosine_fit_residual(const FringePattern& pattern);

/// sum_mn |alpha_mn|^2 cos^2[(phi_m + chi_n - theta) / 2]: the coincidence for
/// diagonal gates written directly in the slit phases.
double diagonal_coincidence(const CoeffMatrix& state, std::span<const double> signal_phases,
                            std::span<const double> idler_phases, double theta);

/// Closed-form coincidences for the built-in schedules and the two reference
/// inputs, as functions of t = (t_s + t_i)/2 and tau = (t_s - t_i)/2.
enum class ClosedForm { Ce, Cp, Ce2, Cp2, Ced2, Cpd2 };

std::string_view to_string(ClosedForm form);
ClosedForm closed_form_by_name(std::string_view name);
const std::vector<ClosedForm>& all_closed_forms();

double closed_form(ClosedForm form, double t, double tau, double theta);

enum class ReferenceInput { MaximallyEntangled, UniformProduct };

struct ClosedFormSetting {
  ScheduleKind schedule;
  ReferenceInput input;
  int dim;
};

/// Which schedule and input a closed form describes.
ClosedFormSetting closed_form_setting(ClosedForm form);

}  // namespace topophase
