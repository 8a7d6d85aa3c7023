#include "topophase/interference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topophase/error.hpp"
#include "topophase/kernels.hpp"

namespace topophase {

double coincidence(const CoeffMatrix& initial, const CoeffMatrix& evolved, double theta) {
  const Complex o = overlap(initial, evolved);
  return 0.5 * (1.0 + std::abs(o) * std::cos(theta - std::arg(o)));
}

FringePattern fringe_pattern(const CoeffMatrix& initial, const CoeffMatrix& evolved, int n_theta,
                             const Tolerances& tol) {
  if (n_theta < 8) {
    throw Error(ErrorCode::InvalidConfig, "n_theta must be >= 8, got " + std::to_string(n_theta));
  }
  const Complex o = overlap(initial, evolved);
  const auto n = static_cast<std::size_t>(n_theta);

  FringePattern out;
  out.theta.resize(n);
  out.counts.resize(n);
  std::vector<double> c(n);
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.theta[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    c[k] = std::cos(out.theta[k]);
    s[k] = std::sin(out.theta[k]);
  }
  kernels::active().fringe_eval(c.data(), s.data(), o, out.counts.data(), n);
  out.visibility = std::abs(o);
  if (out.visibility >= tol.fringe_phase_floor) out.fringe_phase = std::arg(o);
  return out;
}

double cosine_fit_residual(const FringePattern& pattern) {
  // Normal equations for the basis {1, cos, sin}.
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  for (std::size_t k = 0; k < pattern.theta.size(); ++k) {
    const Eigen::Vector3d row(1.0, std::cos(pattern.theta[k]), std::sin(pattern.theta[k]));
    ata += row * row.transpose();
    atb += row * pattern.counts[k];
  }
  const Eigen::Vector3d coef = ata.ldlt().solve(atb);
  double worst = 0.0;
  for (std::size_t k = 0; k < pattern.theta.size(); ++k) {
    const double model = coef(0) + coef(1) * std::cos(pattern.theta[k]) +
                         coef(2) * std::sin(pattern.theta[k]);
    worst = std::max(worst, std::abs(model - pattern.counts[k]));
  }
  return worst;
}

double diagonal_coincidence(const CoeffMatrix& state, std::span<const double> signal_phases,
                            std::span<const double> idler_phases, double theta) {
  const int d = state.dim();
  if (static_cast<int>(signal_phases.size()) != d || static_cast<int>(idler_phases.size()) != d) {
    throw Error(ErrorCode::DimensionMismatch, "phase vectors must have d entries");
  }
  double acc = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const double c = std::cos(0.5 * (signal_phases[static_cast<std::size_t>(m)] +
                                        idler_phases[static_cast<std::size_t>(n)] - theta));
      acc += std::norm(state(m, n)) * c * c;
    }
  }
  return acc;
}

std::string_view to_string(ClosedForm form) {
  switch (form) {
    case ClosedForm::Ce: return "Ce";
    case ClosedForm::Cp: return "Cp";
    case ClosedForm::Ce2: return "Ce2";
    case ClosedForm::Cp2: return "Cp2";
    case ClosedForm::Ced2: return "Ced2";
    case ClosedForm::Cpd2: return "Cpd2";
  }
  return "unknown";
}

const std::vector<ClosedForm>& all_closed_forms() {
  static const std::vector<ClosedForm> forms{ClosedForm::Ce,  ClosedForm::Cp,   ClosedForm::Ce2,
                                             ClosedForm::Cp2, ClosedForm::Ced2, ClosedForm::Cpd2};
  return forms;
}

ClosedForm closed_form_by_name(std::string_view name) {
  for (ClosedForm f : all_closed_forms()) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::UnknownScenario, "no closed form named '" + std::string(name) + "'");
}

double closed_form(ClosedForm form, double t, double tau, double theta) {
  const auto sq = [](double x) { return x * x; };
  switch (form) {
    case ClosedForm::Ce:
      return 2.0 / 3.0 * sq(std::cos(t * kPi / 3.0 - theta / 2.0)) +
             1.0 / 3.0 * sq(std::cos(2.0 * t * kPi / 3.0 + theta / 2.0));
    case ClosedForm::Cp:
      return 4.0 / 9.0 * sq(std::cos(t * kPi / 3.0 - theta / 2.0)) +
             1.0 / 9.0 * sq(std::cos(2.0 * t * kPi / 3.0 + theta / 2.0)) +
             2.0 / 9.0 * (1.0 + std::cos(kPi * tau) * std::cos(t * kPi / 3.0 + theta));
    case ClosedForm::Ce2:
      return 0.5 + std::cos(theta) / 6.0 * (1.0 + 2.0 * std::cos(kPi * t));
    case ClosedForm::Cp2:
      return 0.5 + std::cos(theta) / 9.0 *
                       (0.5 + std::cos(kPi * t) + std::cos(kPi * tau) +
                        2.0 * std::cos(kPi / 2.0 * t) * std::cos(kPi / 2.0 * tau));
    case ClosedForm::Ced2:
      return 0.5 * (1.0 + std::cos(kPi * t) * std::cos(theta));
    case ClosedForm::Cpd2:
      return 0.5 + std::cos(theta) / 4.0 * (std::cos(kPi * t) + std::cos(kPi * tau));
  }
  throw Error(ErrorCode::UnknownScenario, "unrecognized closed form");
}

ClosedFormSetting closed_form_setting(ClosedForm form) {
  switch (form) {
    case ClosedForm::Ce: return {ScheduleKind::IndependentSu3, ReferenceInput::MaximallyEntangled, 3};
    case ClosedForm::Cp: return {ScheduleKind::IndependentSu3, ReferenceInput::UniformProduct, 3};
    case ClosedForm::Ce2: return {ScheduleKind::TwoComponentSu3, ReferenceInput::MaximallyEntangled, 3};
    case ClosedForm::Cp2: return {ScheduleKind::TwoComponentSu3, ReferenceInput::UniformProduct, 3};
    case ClosedForm::Ced2: return {ScheduleKind::QubitPair, ReferenceInput::MaximallyEntangled, 2};
    case ClosedForm::Cpd2: return {ScheduleKind::QubitPair, ReferenceInput::UniformProduct, 2};
  }
  throw Error(ErrorCode::UnknownScenario, "unrecognized closed form");
}

}  // namespace topophase
