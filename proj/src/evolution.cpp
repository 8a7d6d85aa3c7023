#include "topophase/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "topophase/error.hpp"
#include "topophase/kernels.hpp"

namespace topophase {

namespace {

bool is_diagonal(const CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != c && m(r, c) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

void require_unitary(const CMatrix& u, const char* which) {
  const auto d = u.rows();
  if (u.cols() != d) throw Error(ErrorCode::DimensionMismatch, std::string(which) + " is not square");
  const double err = (u * u.adjoint() - CMatrix::Identity(d, d)).norm();
  if (err > 1e-12) {
    throw Error(ErrorCode::UnsupportedInput,
                std::string(which) + " is not unitary (||UU^dag - 1|| = " + std::to_string(err) + ")");
  }
}

// Second-order finite difference of node values f(k) on a uniform piece [a, b].
template <class Get>
CMatrix derivative(const Get& f, std::size_t a, std::size_t b, std::size_t k, double h) {
  if (k == a) return (-3.0 * f(a) + 4.0 * f(a + 1) - f(a + 2)) / (2.0 * h);
  if (k == b) return (3.0 * f(b) - 4.0 * f(b - 1) + f(b - 2)) / (2.0 * h);
  return (f(k + 1) - f(k - 1)) / (2.0 * h);
}

double piece_step(const EvolutionTrace& trace, std::size_t a, std::size_t b) {
  return (trace.steps[b].t - trace.steps[a].t) / static_cast<double>(b - a);
}

// Trapezoidal integral of node values g(k) over every smooth piece; g
// receives (k, a, b, h) so it can differentiate within the piece.
template <class T, class Integrand>
T integrate_pieces(const EvolutionTrace& trace, const Integrand& g) {
  T total{};
  for (std::size_t p = 0; p + 1 < trace.piece_bounds.size(); ++p) {
    const std::size_t a = trace.piece_bounds[p];
    const std::size_t b = trace.piece_bounds[p + 1];
    const double h = piece_step(trace, a, b);
    T acc = 0.5 * (g(a, a, b, h) + g(b, a, b, h));
    for (std::size_t k = a + 1; k < b; ++k) acc += g(k, a, b, h);
    total += h * acc;
  }
  return total;
}

std::pair<std::size_t, std::size_t> piece_of(const EvolutionTrace& trace, std::size_t k) {
  for (std::size_t p = 0; p + 1 < trace.piece_bounds.size(); ++p) {
    if (k < trace.piece_bounds[p + 1] || p + 2 == trace.piece_bounds.size()) {
      return {trace.piece_bounds[p], trace.piece_bounds[p + 1]};
    }
  }
  return {0, trace.steps.size() - 1};
}

const CMatrix& su_at(const EvolutionTrace& trace, std::size_t k) {
  return trace.steps[k].sectors->special_unitary_part;
}

const CMatrix& q_at(const EvolutionTrace& trace, std::size_t k) {
  return trace.steps[k].sectors->hermitian_part;
}

CMatrix sector_generator_in_piece(const EvolutionTrace& trace, std::size_t k, std::size_t a,
                                  std::size_t b, double h) {
  const auto s = [&](std::size_t j) -> const CMatrix& { return su_at(trace, j); };
  return derivative(s, a, b, k, h) * su_at(trace, k).adjoint();
}

void require_sectors(const EvolutionTrace& trace) {
  if (!trace.sectors_available) {
    throw Error(ErrorCode::SectorsUnavailable, "trace passes through a singular coefficient matrix");
  }
}

}  // namespace

LocalUnitary make_local_unitary(const CMatrix& u_signal, const CMatrix& v_idler,
                                std::optional<double> det_branch_hint) {
  require_unitary(u_signal, "signal gate");
  require_unitary(v_idler, "idler gate");
  if (u_signal.rows() != v_idler.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "signal and idler gates differ in dimension");
  }
  const int d = static_cast<int>(u_signal.rows());
  auto su_s = special_unitary_factor(u_signal);
  auto su_i = special_unitary_factor(v_idler);

  LocalUnitary g;
  g.u_signal = u_signal;
  g.v_idler = v_idler;
  g.su_signal = std::move(su_s.special);
  g.su_idler = std::move(su_i.special);
  g.det_phase = su_s.root_phase + su_i.root_phase;
  if (det_branch_hint) g.det_phase = unwrap_angle(g.det_phase, *det_branch_hint, kTwoPi / d);
  g.diagonal = is_diagonal(u_signal) && is_diagonal(v_idler);
  return g;
}

CMatrix diagonal_gate(std::span<const double> phases, bool enforce_su, const Tolerances& tol) {
  if (enforce_su) {
    const double sum = std::accumulate(phases.begin(), phases.end(), 0.0);
    if (std::abs(sum) > tol.trace_free) {
      throw Error(ErrorCode::NotTraceFree, "phase sum " + std::to_string(sum) + " is not zero");
    }
  }
  const auto d = static_cast<Eigen::Index>(phases.size());
  CMatrix u = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (!std::isfinite(phases[static_cast<std::size_t>(k)])) {
      throw Error(ErrorCode::UnsupportedInput, "non-finite gate phase");
    }
    u(k, k) = std::polar(1.0, phases[static_cast<std::size_t>(k)]);
  }
  return u;
}

LocalUnitary diagonal_local_unitary(std::span<const double> signal_phases,
                                    std::span<const double> idler_phases, bool enforce_su) {
  return make_local_unitary(diagonal_gate(signal_phases, enforce_su),
                            diagonal_gate(idler_phases, enforce_su));
}

CoeffMatrix apply_local(const CoeffMatrix& state, const LocalUnitary& gate) {
  const int d = state.dim();
  if (gate.dim() != d) throw Error(ErrorCode::DimensionMismatch, "gate and state dimensions differ");
  if (gate.diagonal) {
    const Eigen::VectorXcd u = gate.u_signal.diagonal();
    const Eigen::VectorXcd v = gate.v_idler.diagonal();
    CMatrix out(d, d);
    kernels::active().diag_sandwich(u.data(), state.matrix().data(), v.data(), out.data(),
                                    static_cast<std::size_t>(d));
    return make_state(out, false);
  }
  return make_state(gate.u_signal * state.matrix() * gate.v_idler.transpose(), false);
}

EvolutionTrace evolve_path(const CoeffMatrix& state0, const PhaseSchedule& schedule,
                           const PathControl& control, int n_steps) {
  if (n_steps < kMinSteps) {
    throw Error(ErrorCode::TooFewSteps, "need at least 16 steps, got " + std::to_string(n_steps));
  }
  if (schedule.dim != state0.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "schedule acts on d = " + std::to_string(schedule.dim) +
                                                  ", state has d = " + std::to_string(state0.dim()));
  }
  if (!(control.t_end > 0.0)) throw Error(ErrorCode::InvalidConfig, "t_end must be positive");

  // t_s = a_s t + b_s, t_i = a_i t + b_i
  double a_s = 1.0, a_i = 1.0, b_s = 0.0, b_i = 0.0;
  if (control.coupling == Coupling::FixedOffset) {
    b_s = control.tau;
    b_i = -control.tau;
  } else if (control.coupling == Coupling::Proportional) {
    a_s = 1.0 + control.tau / control.t_end;
    a_i = 1.0 - control.tau / control.t_end;
  }

  std::vector<double> breaks{0.0, control.t_end};
  const double margin = 1e-12 * control.t_end;
  for (double k : schedule.kinks) {
    for (auto [a, b] : {std::pair{a_s, b_s}, std::pair{a_i, b_i}}) {
      if (a == 0.0) continue;
      const double candidate = (k - b) / a;
      if (candidate > margin && candidate < control.t_end - margin) breaks.push_back(candidate);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [margin](double x, double y) { return std::abs(x - y) <= margin; }),
               breaks.end());

  EvolutionTrace trace{state0, {}, {0}, 0, true};
  std::vector<double> grid{0.0};
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double len = breaks[p + 1] - breaks[p];
    const long steps = std::max(2L, std::lround(n_steps * len / control.t_end));
    for (long j = 1; j <= steps; ++j) {
      grid.push_back(j == steps ? breaks[p + 1] : breaks[p] + len * static_cast<double>(j) / steps);
    }
    trace.piece_bounds.push_back(grid.size() - 1);
  }
  trace.step_count = static_cast<int>(grid.size() - 1);
  trace.steps.reserve(grid.size());

  std::optional<double> hint;
  for (double t : grid) {
    const SchedulePhases phases = schedule_phases(schedule, a_s * t + b_s, a_i * t + b_i);
    const LocalUnitary gate =
        diagonal_local_unitary(phases.signal, phases.idler, schedule.su_constrained);
    TraceStep step;
    step.t = t;
    step.alpha = apply_local(state0, gate).matrix();
    if (trace.sectors_available) {
      try {
        step.sectors = polar_sectors(step.alpha, hint);
        step.phase = step.sectors->phase;
        hint = step.phase;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMatrix) throw;
        trace.sectors_available = false;
      }
    }
    trace.steps.push_back(std::move(step));
  }
  if (!trace.sectors_available) {
    for (auto& step : trace.steps) {
      step.sectors.reset();
      step.phase = 0.0;
    }
  }
  return trace;
}

CMatrix sector_generator(const EvolutionTrace& trace, int step) {
  require_sectors(trace);
  if (step < 0 || step > trace.step_count) {
    throw Error(ErrorCode::InvalidConfig, "step index out of range");
  }
  const auto k = static_cast<std::size_t>(step);
  const auto [a, b] = piece_of(trace, k);
  return sector_generator_in_piece(trace, k, a, b, piece_step(trace, a, b));
}

Eigen::VectorXcd velocity_vector_complex(const EvolutionTrace& trace, int step,
                                         const GeneratorBasis& basis) {
  if (basis.dim != trace.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "generator basis and trace dimensions differ");
  }
  return basis.coordinates(-kI * sector_generator(trace, step));
}

RVector velocity_vector(const EvolutionTrace& trace, int step, const GeneratorBasis& basis) {
  return velocity_vector_complex(trace, step, basis).real();
}

PhaseReport phase_report(const EvolutionTrace& trace, const GeneratorBasis& basis,
                         const Tolerances& tol) {
  if (trace.step_count < kMinSteps) {
    throw Error(ErrorCode::TooFewSteps, "phase report needs at least 16 steps");
  }
  if (basis.dim != trace.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "generator basis and trace dimensions differ");
  }
  const int d = trace.dim();
  const CMatrix& alpha0 = trace.steps.front().alpha;
  const CMatrix& alpha_t = trace.steps.back().alpha;

  PhaseReport report;
  const Complex o = kernels::trace_inner(alpha0, alpha_t);
  report.total_phase = std::arg(o);

  const auto alpha = [&](std::size_t j) -> const CMatrix& { return trace.steps[j].alpha; };
  const Complex connection = integrate_pieces<Complex>(
      trace, [&](std::size_t k, std::size_t a, std::size_t b, double h) {
        return kernels::trace_inner(alpha(k), derivative(alpha, a, b, k, h));
      });
  report.dynamical_phase = connection.imag();
  report.dynamical_residual = std::abs(connection.real());
  report.geometric_phase = wrap_to_pi(report.total_phase - report.dynamical_phase);

  report.cyclic_distance = (alpha_t - std::polar(1.0, report.total_phase) * alpha0).norm();
  report.cyclic = report.cyclic_distance < tol.cyclicity;
  if (report.cyclic) report.cyclic_global_phase = report.total_phase;

  if (!(report.cyclic && trace.sectors_available)) return report;

  FractionalSector frac;
  frac.delta_phi = trace.steps.back().phase - trace.steps.front().phase;
  const CMatrix holonomy = su_at(trace, trace.steps.size() - 1) * su_at(trace, 0).adjoint();
  double theta_s = std::arg(holonomy.trace() / static_cast<double>(d));
  if (theta_s < 0.0) theta_s += kTwoPi;
  frac.sector_phase = theta_s;
  const double unit = kTwoPi / d;
  frac.index = static_cast<int>(std::lround(theta_s / unit)) % d;
  frac.sector_residual = std::abs(wrap_to_pi(theta_s - unit * frac.index));
  frac.identity_residual =
      (holonomy - std::polar(1.0, theta_s) * CMatrix::Identity(d, d)).norm();
  frac.theta_consistency =
      std::abs(wrap_to_pi(report.total_phase - frac.delta_phi - unit * frac.index));

  const double k = q_prefactor(trace.initial);
  if (k >= tol.q_prefactor) {
    const double path_integral = integrate_pieces<double>(
        trace, [&](std::size_t j, std::size_t a, std::size_t b, double h) {
          const RVector q_hat =
              basis.coordinates(alpha(j) * alpha(j).adjoint()).real() / k;
          const RVector s = basis.coordinates(-kI * sector_generator_in_piece(trace, j, a, b, h)).real();
          return q_hat.dot(s);
        });
    frac.anholonomy_term = -0.5 * k * path_integral;
  }
  report.fractional = frac;
  return report;
}

SectorDiagnostics sector_diagnostics(const EvolutionTrace& trace) {
  SectorDiagnostics out;
  for (const auto& step : trace.steps) {
    out.max_norm_deviation =
        std::max(out.max_norm_deviation, std::abs(kernels::frobenius2(step.alpha) - 1.0));
  }
  if (!trace.sectors_available) return out;
  for (std::size_t k = 0; k + 1 < trace.steps.size(); ++k) {
    out.max_phase_jump =
        std::max(out.max_phase_jump, std::abs(trace.steps[k + 1].phase - trace.steps[k].phase));
  }
  const auto q = [&](std::size_t j) -> const CMatrix& { return q_at(trace, j); };
  for (std::size_t p = 0; p + 1 < trace.piece_bounds.size(); ++p) {
    const std::size_t a = trace.piece_bounds[p];
    const std::size_t b = trace.piece_bounds[p + 1];
    const double h = piece_step(trace, a, b);
    for (std::size_t k = a; k <= b; ++k) {
      const Complex tq = (q(k) * derivative(q, a, b, k, h)).trace();
      const Complex ts = sector_generator_in_piece(trace, k, a, b, h).trace();
      out.max_trace_q_qdot = std::max(out.max_trace_q_qdot, std::abs(tq));
      out.max_trace_sdot_sdag = std::max(out.max_trace_sdot_sdag, std::abs(ts));
    }
  }
  return out;
}

}  // namespace topophase
