#pragma once

#include <optional>
#include <span>
#include <vector>

#include "topophase/qudit_state.hpp"
#include "topophase/schedule.hpp"
#include "topophase/sud_algebra.hpp"
#include "topophase/tolerances.hpp"
#include "topophase/types.hpp"

namespace topophase {

/// Local gate pair acting as alpha -> U_s alpha V_i^T.
struct LocalUnitary {
  CMatrix u_signal;
  CMatrix v_idler;
  CMatrix su_signal;
  CMatrix su_idler;
  double det_phase = 0.0;  // arg(det U_s det V_i) / d on the tracked branch
  bool diagonal = false;

  int dim() const { return static_cast<int>(u_signal.rows()); }
};

/// Validates unitarity (1e-12) and splits both gates into SU(d) parts.
LocalUnitary make_local_unitary(const CMatrix& u_signal, const CMatrix& v_idler,
                                std::optional<double> det_branch_hint = std::nullopt);

/// diag(e^{i phases}); with `enforce_su` a nonzero phase sum raises NotTraceFree.
CMatrix diagonal_gate(std::span<const double> phases, bool enforce_su,
                      const Tolerances& tol = kDefaultTolerances);

LocalUnitary diagonal_local_unitary(std::span<const double> signal_phases,
                                    std::span<const double> idler_phases, bool enforce_su);

CoeffMatrix apply_local(const CoeffMatrix& state, const LocalUnitary& gate);

enum class Coupling {
  Locked,       // t_s = t_i = t
  FixedOffset,  // t_s = t + tau, t_i = t - tau
  Proportional, // t_s = t (1 + tau / t_end), t_i = t (1 - tau / t_end): from (0, 0) to (t_end + tau, t_end - tau)
};

struct PathControl {
  Coupling coupling = Coupling::Locked;
  double tau = 0.0;
  double t_end = 1.0;
};

struct TraceStep {
  double t = 0.0;
  CMatrix alpha;
  std::optional<PolarSectors> sectors;
  double phase = 0.0;  // branch-chained polar phase; 0 when sectors are unavailable
};

struct EvolutionTrace {
  CoeffMatrix initial;
  std::vector<TraceStep> steps;
  // Node indices delimiting smooth pieces: 0 = b_0 < b_1 < ... < b_k = step_count.
  std::vector<std::size_t> piece_bounds;
  int step_count = 0;
  bool sectors_available = false;

  int dim() const { return initial.dim(); }
};

inline constexpr int kMinSteps = 16;

/// Samples alpha(t) = U_s(t_s) alpha_0 V_i(t_i)^T on a grid over [0, t_end]
/// split at the schedule's kinks, with roughly n_steps intervals in total.
/// Polar sectors are chained through branch hints when alpha(t) is invertible
/// at every node.
EvolutionTrace evolve_path(const CoeffMatrix& state0, const PhaseSchedule& schedule,
                           const PathControl& control, int n_steps);

struct FractionalSector {
  double delta_phi = 0.0;           // phi(T) - phi(0)
  double sector_phase = 0.0;        // theta_s in [0, 2 pi)
  int index = 0;                    // n with theta_s ~ 2 pi n / d
  double sector_residual = 0.0;     // |theta_s - 2 pi n / d| wrapped
  double identity_residual = 0.0;   // ||S(T) S(0)^dag - e^{i theta_s} 1||_F
  double theta_consistency = 0.0;   // |theta - delta_phi - 2 pi n / d| wrapped
  double anholonomy_term = 0.0;     // -(1/2) sqrt(Cm^2 - C^2) oint q-hat . dx
};

struct PhaseReport {
  double total_phase = 0.0;
  double dynamical_phase = 0.0;
  double geometric_phase = 0.0;     // total - dynamical, wrapped to (-pi, pi]
  double dynamical_residual = 0.0;  // |Re int Tr[alpha^dag alpha']|, zero for exact arithmetic
  bool cyclic = false;
  double cyclic_distance = 0.0;
  std::optional<double> cyclic_global_phase;
  std::optional<FractionalSector> fractional;
};

/// Total, dynamical and geometric phases of a trace. The dynamical phase is
/// Im int Tr[alpha^dag alpha'] dt (equivalently -i times the integral),
/// so that geometric = total - dynamical. Fractional data are filled for
/// cyclic traces with polar sectors.
PhaseReport phase_report(const EvolutionTrace& trace, const GeneratorBasis& basis,
                         const Tolerances& tol = kDefaultTolerances);

/// s_n = 2 Tr[-i S' S^dagger T_n] at a node, with S' by finite differences
/// inside the smooth piece containing the node.
RVector velocity_vector(const EvolutionTrace& trace, int step, const GeneratorBasis& basis);

/// Same as velocity_vector but keeping the imaginary parts, which vanish for
/// exact derivatives.
Eigen::VectorXcd velocity_vector_complex(const EvolutionTrace& trace, int step,
                                         const GeneratorBasis& basis);

/// S'(t) S(t)^dagger at a node.
CMatrix sector_generator(const EvolutionTrace& trace, int step);

struct SectorDiagnostics {
  double max_trace_q_qdot = 0.0;      // max |Tr[Q Q']|
  double max_trace_sdot_sdag = 0.0;   // max |Tr[S' S^dagger]|
  double max_phase_jump = 0.0;        // max |phi_{k+1} - phi_k|
  double max_norm_deviation = 0.0;    // max |Tr[a^dag a] - 1|
};

SectorDiagnostics sector_diagnostics(const EvolutionTrace& trace);

}  // namespace topophase
