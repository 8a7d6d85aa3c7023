#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "topophase/evolution.hpp"
#include "topophase/interference.hpp"

namespace topophase {

enum class Suite { ClosedForms, Oracle, Invariants, All };

Suite suite_by_name(std::string_view name);

struct CheckResult {
  std::string name;
  double value = 0.0;      // measured worst-case error (or margin for lower bounds)
  double threshold = 0.0;
  bool passed = false;
  std::string note;
};

/// Runs a named suite with seeded random cases.
std::vector<CheckResult> run_suite(Suite suite, std::uint64_t seed);

bool all_passed(const std::vector<CheckResult>& results);

std::string format_results(const std::vector<CheckResult>& results);

/// Reference input -> built-in schedule at (t + tau, t - tau) -> diagonal
/// gates -> coincidence at theta.
double pipeline_coincidence(ClosedForm form, double t, double tau, double theta);

/// The 21 x 3 x 64 (t, tau, theta) grid used for closed-form regression.
struct ClosedFormGrid {
  std::vector<double> t;
  std::vector<double> tau;
  std::vector<double> theta;
};

ClosedFormGrid closed_form_grid();

/// Step count for the finite-difference trace checks. The derivative
/// residuals scale as h^2 with path-dependent constants up to ~3e5 for the
/// random d = 4 paths.
inline constexpr int kTraceCheckSteps = 100000;

struct LabeledTrace {
  std::string label;
  EvolutionTrace trace;
};

/// Piecewise-linear SU(d) schedule through random intermediate phases whose
/// endpoint maps every alpha to e^{2 pi i / d} alpha.
PhaseSchedule random_cyclic_schedule(int d, int knots, std::mt19937_64& rng);

/// Sector-available paths used by the invariant checks: reference and random
/// invertible states under built-in, random cyclic and non-SU schedules.
std::vector<LabeledTrace> sector_trace_family(std::uint64_t seed, int n_steps);

}  // namespace topophase
