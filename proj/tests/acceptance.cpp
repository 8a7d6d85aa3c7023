// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "topophase/evolution.hpp"
#include "topophase/interference.hpp"
#include "topophase/kernels.hpp"
#include "topophase/optics_oracle.hpp"
#include "topophase/verify.hpp"

using namespace topophase;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const char* what, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3e", detail.empty() ? "" : ", ", what, value);
    detail += buf;
    if (!ok) {
      passed = false;
      detail += "(!)";
    }
  }
};

CoeffMatrix evolved_at(const CoeffMatrix& s, ScheduleKind kind, double ts, double ti) {
  const SchedulePhases p = schedule_phases(builtin_schedule(kind), ts, ti);
  return apply_local(s, diagonal_local_unitary(p.signal, p.idler, true));
}

FringePattern fringe_at(const CoeffMatrix& s, ScheduleKind kind, double t) {
  return fringe_pattern(s, evolved_at(s, kind, t, t), 256);
}

Outcome heaviside_entangled() {
  Outcome o;
  const CoeffMatrix e = maximally_entangled(3);
  const FringePattern mid = fringe_at(e, ScheduleKind::HeavisideSu3, 0.5);
  const FringePattern end = fringe_at(e, ScheduleKind::HeavisideSu3, 1.0);
  o.require(mid.visibility < 1e-12, "V(0.5)", mid.visibility);
  o.require(end.visibility > 1 - 1e-12, "1-V(1)", 1 - end.visibility);
  const double dg = end.fringe_phase ? std::abs(wrap_to_pi(*end.fringe_phase - kTwoPi / 3)) : 1.0;
  o.require(dg < 1e-9, "|gamma-2pi/3|", dg);
  return o;
}

Outcome heaviside_product() {
  Outcome o;
  const FringePattern end = fringe_at(uniform_product(3), ScheduleKind::HeavisideSu3, 1.0);
  o.require(std::abs(end.visibility - 1.0 / 9) < 1e-12, "|V(1)-1/9|", std::abs(end.visibility - 1.0 / 9));
  return o;
}

Outcome closed_form_regression() {
  Outcome o;
  const ClosedFormGrid g = closed_form_grid();
  double worst = 0;
  for (ClosedForm f : all_closed_forms())
    for (double t : g.t)
      for (double tau : g.tau)
        for (double th : g.theta)
          worst = std::max(worst, std::abs(pipeline_coincidence(f, t, tau, th) - closed_form(f, t, tau, th)));
  o.require(worst < 1e-10, "max err", worst);
  return o;
}

Outcome tau_independence() {
  Outcome o;
  const ClosedFormGrid g = closed_form_grid();
  auto spread = [&](ClosedForm f) {
    double w = 0;
    for (double t : g.t)
      for (double tau : g.tau)
        for (double th : g.theta)
          w = std::max(w, std::abs(pipeline_coincidence(f, t, tau, th) - pipeline_coincidence(f, t, 0.0, th)));
    return w;
  };
  const double ce = std::max(spread(ClosedForm::Ce), spread(ClosedForm::Ce2));
  const double cp = spread(ClosedForm::Cp), cp2 = spread(ClosedForm::Cp2);
  o.require(ce < 1e-12, "entangled spread", ce);
  o.require(cp > 0.01, "Cp spread", cp);
  o.require(cp2 > 0.01, "Cp2 spread", cp2);
  return o;
}

Outcome fractional_phase() {
  Outcome o;
  const EvolutionTrace tr =
      evolve_path(maximally_entangled(3), builtin_schedule(ScheduleKind::HeavisideSu3), {}, 10000);
  const PhaseReport r = phase_report(tr, gell_mann_basis(3));
  const double dg = std::abs(wrap_to_pi(r.geometric_phase - kTwoPi / 3));
  o.require(dg < 1e-4, "|phi_g-2pi/3|", dg);
  o.require(std::abs(r.dynamical_phase) < 1e-8, "|phi_dyn|", std::abs(r.dynamical_phase));
  const bool have = r.fractional.has_value();
  o.require(have && r.fractional->index == 1, "n", have ? r.fractional->index : -1);
  const double res = have ? r.fractional->sector_residual : 1.0;
  o.require(res < 1e-6, "|theta_s-2pi/3|", res);
  return o;
}

Outcome qubit_benchmark() {
  Outcome o;
  const FringePattern e = fringe_at(maximally_entangled(2), ScheduleKind::QubitPair, 1.0);
  const FringePattern p = fringe_at(uniform_product(2), ScheduleKind::QubitPair, 1.0);
  const double dg = e.fringe_phase ? std::abs(wrap_to_pi(*e.fringe_phase - kPi)) : 1.0;
  o.require(dg < 1e-9, "|gamma-pi|", dg);
  o.require(std::abs(e.visibility - 1) < 1e-12, "|V_e-1|", std::abs(e.visibility - 1));
  o.require(p.visibility < 1e-12, "V_p", p.visibility);
  return o;
}

Outcome two_component() {
  Outcome o;
  const CoeffMatrix e = maximally_entangled(3), p = uniform_product(3);
  const double ve = fringe_at(e, ScheduleKind::TwoComponentSu3, 1.0).visibility;
  o.require(std::abs(ve - 1.0 / 3) < 1e-12, "|V_e(1)-1/3|", std::abs(ve - 1.0 / 3));
  auto vis = [&](const CoeffMatrix& s, double t) {
    return std::abs(overlap(s, evolved_at(s, ScheduleKind::TwoComponentSu3, t, t)));
  };
  double vmax = 0;
  for (double t : closed_form_grid().t) {
    if (t > 0.0) vmax = std::max({vmax, vis(e, t), vis(p, t)});
  }
  o.require(vmax < 1 - 1e-6, "max V, t in {0.05..1}", vmax);
  double gap = 1;
  for (int k = 1; k <= 2000; ++k) {
    const double t = k / 2000.0;
    gap = std::min({gap, 1 - vis(e, t), 1 - vis(p, t)});
  }
  o.require(gap > 0, "min 1-V, t in (0,1]", gap);
  return o;
}

CMatrix random_diag_su(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::vector<double> ph(static_cast<std::size_t>(d));
  double sum = 0;
  for (double& x : ph) sum += (x = ang(rng));
  for (double& x : ph) x -= sum / d;
  return diagonal_gate(ph, true);
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  double vs_module = 0, vs_sum = 0, ratio_dev = 0;
  int agree = 0;
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 3;
    const CoeffMatrix s = random_state(d, rng);
    const optics::GateSettings g{random_diag_su(d, rng), random_diag_su(d, rng), ang(rng), ang(rng)};
    const double th = g.theta_s + g.theta_i - kPi;
    const CoeffMatrix t = apply_local(s, make_local_unitary(g.u_signal, g.v_idler));
    const double c = optics::oracle_coincidence(s, g);
    const double raw = optics::raw_mode_sum(s.matrix(), t.matrix(), th);
    const double e1 = std::abs(c - coincidence(s, t, th));
    const double e2 = std::abs(c - raw / 2);
    vs_module = std::max(vs_module, e1);
    vs_sum = std::max(vs_sum, e2);
    ratio_dev = std::max(ratio_dev, std::abs(raw - 2 * c));
    if (e1 < 1e-12 && e2 < 1e-12) ++agree;
  }
  o.require(agree == 200, "cases", agree);
  o.require(vs_module < 1e-12, "oracle-module", vs_module);
  o.require(vs_sum < 1e-12, "oracle-sum/2", vs_sum);
  o.require(ratio_dev < 1e-12, "|sum-2C|", ratio_dev);
  return o;
}

Outcome invariant_suites() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 1);
  double lu = 0;
  for (int k = 0; k < 500; ++k) {
    const int d = 2 + k % 4;
    const CoeffMatrix s = random_state(d, rng);
    const InvariantSet a = invariants(s);
    const InvariantSet b =
        invariants(apply_local(s, make_local_unitary(haar_unitary(d, rng), haar_unitary(d, rng))));
    for (std::size_t p = 0; p < a.purities.size(); ++p) lu = std::max(lu, std::abs(a.purities[p] - b.purities[p]));
    lu = std::max(lu, std::abs(a.concurrence - b.concurrence));
  }
  o.require(lu < 1e-10, "LU", lu);

  double tqq = 0, tss = 0, theta = 0;
  int cyclic = 0;
  for (const auto& lt : sector_trace_family(kSeed, kTraceCheckSteps)) {
    const SectorDiagnostics dg = sector_diagnostics(lt.trace);
    tqq = std::max(tqq, dg.max_trace_q_qdot);
    tss = std::max(tss, dg.max_trace_sdot_sdag);
    const PhaseReport r = phase_report(lt.trace, gell_mann_basis(lt.trace.dim()));
    if (r.fractional) {
      ++cyclic;
      theta = std::max(theta, r.fractional->theta_consistency);
    }
  }
  o.require(tqq < 1e-6, "Tr[QQ']", tqq);
  o.require(tss < 1e-6, "Tr[S'S+]", tss);
  o.require(cyclic > 0 && theta < 1e-6, "theta", theta);

  double ortho = 0;
  for (int d = kMinDim; d <= kMaxDim; ++d) {
    const GeneratorBasis b = gell_mann_basis(d);
    for (std::size_t n = 0; n < b.size(); ++n)
      for (std::size_t m = 0; m < b.size(); ++m)
        ortho = std::max(ortho, std::abs((b.generators[n] * b.generators[m]).trace() - (n == m ? 0.5 : 0.0)));
  }
  o.require(ortho < 1e-12, "ortho", ortho);
  return o;
}

Outcome sector_law() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 2);
  double q = 0, s = 0, rec = 0;
  for (int k = 0; k < 1000; ++k) {
    const int d = 2 + k % 4;
    const CoeffMatrix a = random_state(d, rng);
    const CMatrix u = haar_unitary(d, rng), v = haar_unitary(d, rng);
    const PolarSectors before = polar_sectors(a.matrix());
    const SpecialUnitaryFactor fu = special_unitary_factor(u), fv = special_unitary_factor(v);
    const CMatrix moved = u * a.matrix() * v.transpose();
    const PolarSectors after = polar_sectors(moved, before.phase + fu.root_phase + fv.root_phase);
    q = std::max(q, (after.hermitian_part - fu.special * before.hermitian_part * fu.special.adjoint()).norm());
    s = std::max(s, (after.special_unitary_part -
                     fu.special * before.special_unitary_part * fv.special.transpose()).norm());
    rec = std::max(rec, (after.reconstruct() - moved).norm());
  }
  o.require(q < 1e-9, "Q'", q);
  o.require(s < 1e-9, "S'", s);
  o.require(rec < 1e-10, "recon", rec);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1  fig2 entangled fringes and 2pi/3 shift", heaviside_entangled},
      {"2  fig2 product visibility 1/9", heaviside_product},
      {"3  closed-form regression", closed_form_regression},
      {"4  tau independence", tau_independence},
      {"5  fractional phase, geometric route", fractional_phase},
      {"6  qubit benchmark (fig5)", qubit_benchmark},
      {"7  two-component qutrits (fig4)", two_component},
      {"8  optics oracle equivalence", oracle_equivalence},
      {"9  invariant suites", invariant_suites},
      {"10 sector transformation law", sector_law},
  };
  std::printf("kernels: %s\n", std::string(kernels::to_string(kernels::active().isa)).c_str());
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %-42s %s [%.2fs]\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    if (!o.passed) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
