#include "topophase/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "topophase/error.hpp"
#include "topophase/kernels.hpp"
#include "topophase/optics_oracle.hpp"

namespace topophase {

Suite suite_by_name(std::string_view name) {
  if (name == "closed_forms") return Suite::ClosedForms;
  if (name == "oracle") return Suite::Oracle;
  if (name == "invariants") return Suite::Invariants;
  if (name == "all") return Suite::All;
  throw Error(ErrorCode::InvalidConfig, "unknown suite '" + std::string(name) + "'");
}

double pipeline_coincidence(ClosedForm form, double t, double tau, double theta) {
  const ClosedFormSetting setting = closed_form_setting(form);
  const CoeffMatrix state = setting.input == ReferenceInput::MaximallyEntangled
                                ? maximally_entangled(setting.dim)
                                : uniform_product(setting.dim);
  const PhaseSchedule schedule = builtin_schedule(setting.schedule);
  const SchedulePhases phases = schedule_phases(schedule, t + tau, t - tau);
  const LocalUnitary gate = diagonal_local_unitary(phases.signal, phases.idler, true);
  return coincidence(state, apply_local(state, gate), theta);
}

ClosedFormGrid closed_form_grid() {
  ClosedFormGrid g;
  for (int k = 0; k <= 20; ++k) g.t.push_back(0.05 * k);
  g.tau = {0.0, 0.25, 0.5};
  for (int k = 0; k < 64; ++k) g.theta.push_back(kTwoPi * k / 64.0);
  return g;
}

PhaseSchedule random_cyclic_schedule(int d, int knots, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> wobble(-1.5, 1.5);
  const auto su_row = [&](bool endpoint, bool zero) {
    std::vector<double> row(static_cast<std::size_t>(d), 0.0);
    if (zero) return row;
    if (endpoint) {
      for (int m = 0; m + 1 < d; ++m) row[static_cast<std::size_t>(m)] = kTwoPi / d;
      row.back() = -kTwoPi * (d - 1) / d;
      return row;
    }
    double mean = 0.0;
    for (auto& v : row) mean += (v = wobble(rng)) / d;
    for (auto& v : row) v -= mean;
    return row;
  };
  std::vector<double> t;
  std::vector<std::vector<double>> sig;
  std::vector<std::vector<double>> idl;
  for (int k = 0; k < knots; ++k) {
    t.push_back(static_cast<double>(k) / (knots - 1));
    const bool first = k == 0;
    const bool last = k + 1 == knots;
    sig.push_back(su_row(last, first));
    // The idler returns to the identity at the end, via a detour.
    idl.push_back(first || last ? std::vector<double>(static_cast<std::size_t>(d), 0.0)
                                : su_row(false, false));
  }
  return custom_schedule(std::move(t), std::move(sig), std::move(idl), true);
}

std::vector<LabeledTrace> sector_trace_family(std::uint64_t seed, int n_steps) {
  std::mt19937_64 rng(seed);
  std::vector<LabeledTrace> out;
  const PathControl locked{};

  out.push_back({"entangled d=3 heaviside",
                 evolve_path(maximally_entangled(3), builtin_schedule(ScheduleKind::HeavisideSu3),
                             locked, n_steps)});
  CMatrix diag = CMatrix::Zero(3, 3);
  diag.diagonal() << 0.8, 0.5, std::sqrt(1.0 - 0.64 - 0.25);
  out.push_back({"diagonal partially entangled d=3 heaviside",
                 evolve_path(make_state(diag, false), builtin_schedule(ScheduleKind::HeavisideSu3),
                             locked, n_steps)});
  out.push_back({"entangled d=2 qubit pair",
                 evolve_path(maximally_entangled(2), builtin_schedule(ScheduleKind::QubitPair),
                             locked, n_steps)});

  for (int d = 2; d <= 4; ++d) {
    for (int rep = 0; rep < 2; ++rep) {
      const CoeffMatrix state = random_state(d, rng);
      out.push_back({"random d=" + std::to_string(d) + " cyclic custom",
                     evolve_path(state, random_cyclic_schedule(d, 5, rng), locked, n_steps)});
    }
    // Non-SU signal gate diag(e^{2 pi i t}, 1, ...): cyclic with delta_phi = 2 pi / d.
    std::vector<double> zero(static_cast<std::size_t>(d), 0.0);
    std::vector<double> full = zero;
    full[0] = kTwoPi;
    out.push_back({"random d=" + std::to_string(d) + " non-SU cyclic",
                   evolve_path(random_state(d, rng),
                               custom_schedule({0.0, 1.0}, {zero, full}, {zero, zero}, false),
                               locked, n_steps)});
  }
  out.push_back({"random d=3 heaviside (open path)",
                 evolve_path(random_state(3, rng), builtin_schedule(ScheduleKind::HeavisideSu3),
                             locked, n_steps)});
  out.push_back({"random d=3 independent tau=0.25 (open path)",
                 evolve_path(random_state(3, rng), builtin_schedule(ScheduleKind::IndependentSu3),
                             {Coupling::FixedOffset, 0.25, 1.0}, n_steps)});
  return out;
}

namespace {

CheckResult upper(std::string name, double value, double threshold, std::string note = {}) {
  return {std::move(name), value, threshold, value < threshold, std::move(note)};
}

CheckResult lower(std::string name, double value, double threshold, std::string note = {}) {
  return {std::move(name), value, threshold, value > threshold, std::move(note)};
}

void closed_form_checks(std::vector<CheckResult>& out) {
  const ClosedFormGrid g = closed_form_grid();
  for (ClosedForm form : all_closed_forms()) {
    double worst = 0.0;
    for (double t : g.t)
      for (double tau : g.tau)
        for (double th : g.theta)
          worst = std::max(worst, std::abs(pipeline_coincidence(form, t, tau, th) -
                                           closed_form(form, t, tau, th)));
    out.push_back(upper("closed form " + std::string(to_string(form)) + " vs engine", worst, 1e-10));
  }
  for (ClosedForm form : {ClosedForm::Ce, ClosedForm::Ce2, ClosedForm::Cp, ClosedForm::Cp2}) {
    double spread = 0.0;
    for (double t : g.t)
      for (double tau : g.tau)
        for (double th : g.theta)
          spread = std::max(spread, std::abs(pipeline_coincidence(form, t, tau, th) -
                                             pipeline_coincidence(form, t, 0.0, th)));
    const bool entangled =
        closed_form_setting(form).input == ReferenceInput::MaximallyEntangled;
    const std::string name = "tau spread " + std::string(to_string(form));
    out.push_back(entangled ? upper(name, spread, 1e-12, "independent of tau")
                            : lower(name, spread, 0.01, "depends on tau"));
  }
  double diag_worst = 0.0;
  for (ClosedForm form : all_closed_forms()) {
    const ClosedFormSetting s = closed_form_setting(form);
    const CoeffMatrix state = s.input == ReferenceInput::MaximallyEntangled
                                  ? maximally_entangled(s.dim)
                                  : uniform_product(s.dim);
    const PhaseSchedule schedule = builtin_schedule(s.schedule);
    for (double t : g.t) {
      const SchedulePhases ph = schedule_phases(schedule, t, t);
      const CoeffMatrix evolved = apply_local(state, diagonal_local_unitary(ph.signal, ph.idler, true));
      for (double th : g.theta) {
        diag_worst = std::max(diag_worst, std::abs(diagonal_coincidence(state, ph.signal, ph.idler, th) -
                                                   coincidence(state, evolved, th)));
      }
    }
  }
  out.push_back(upper("diagonal sum vs overlap form", diag_worst, 1e-12));
}

void oracle_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst_engine = 0.0;
  double worst_raw = 0.0;
  double worst_norm = 0.0;
  int passed = 0;
  constexpr int kCases = 200;
  for (int c = 0; c < kCases; ++c) {
    const int d = dim(rng);
    const CoeffMatrix alpha = random_state(d, rng);
    std::vector<double> phi(static_cast<std::size_t>(d));
    std::vector<double> chi(static_cast<std::size_t>(d));
    double ms = 0.0, mi = 0.0;
    for (int k = 0; k < d; ++k) {
      ms += (phi[static_cast<std::size_t>(k)] = angle(rng)) / d;
      mi += (chi[static_cast<std::size_t>(k)] = angle(rng)) / d;
    }
    for (auto& v : phi) v -= ms;
    for (auto& v : chi) v -= mi;
    const LocalUnitary gate = diagonal_local_unitary(phi, chi, true);
    const optics::GateSettings settings{gate.u_signal, gate.v_idler, angle(rng), angle(rng)};
    const double theta = settings.theta_s + settings.theta_i - kPi;

    const auto psi1 = optics::apply_waveplates(optics::prepare_after_slits(alpha));
    const auto psi2 = optics::apply_gates(psi1, settings);
    worst_norm = std::max({worst_norm, std::abs(psi1.norm2() - 1.0), std::abs(psi2.norm2() - 1.0)});

    const CoeffMatrix evolved = apply_local(alpha, gate);
    const double oracle = optics::integrated_coincidence(psi2);
    const double engine = coincidence(alpha, evolved, theta);
    const double raw =
        optics::raw_mode_sum(alpha.matrix(), evolved.matrix(), theta) / 2.0;
    const double e1 = std::abs(oracle - engine);
    const double e2 = std::abs(oracle - raw);
    worst_engine = std::max(worst_engine, e1);
    worst_raw = std::max(worst_raw, e2);
    if (e1 < 1e-12 && e2 < 1e-12) ++passed;
  }
  out.push_back(upper("oracle vs interference coincidence", worst_engine, 1e-12));
  out.push_back(upper("oracle vs mode sum (max-1 normalization)", worst_raw, 1e-12));
  out.push_back(lower("oracle equivalence cases passing", passed, kCases - 0.5,
                      std::to_string(passed) + "/" + std::to_string(kCases)));
  out.push_back(upper("optical stage norm preservation", worst_norm, 1e-12));

  const auto branches = optics::detected_branches();
  const bool only_hh_vv =
      std::all_of(branches.begin(), branches.end(), [](const auto& b) { return b.first == b.second; });
  out.push_back({"cross-polarized branches undetected", only_hh_vv ? 0.0 : 1.0, 0.5, only_hh_vv, ""});
}

void invariant_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(2, 5);

  double ortho = 0.0;
  for (int d = kMinDim; d <= kMaxDim; ++d) {
    const GeneratorBasis basis = gell_mann_basis(d);
    for (std::size_t n = 0; n < basis.size(); ++n) {
      ortho = std::max(ortho, std::abs(basis.generators[n].trace()));
      ortho = std::max(ortho, (basis.generators[n] - basis.generators[n].adjoint()).norm());
      for (std::size_t m = 0; m < basis.size(); ++m) {
        const Complex tr = (basis.generators[n] * basis.generators[m]).trace();
        ortho = std::max(ortho, std::abs(tr - Complex(n == m ? 0.5 : 0.0, 0.0)));
      }
    }
  }
  out.push_back(upper("generator orthonormality d=2..8", ortho, 1e-12));

  double lu = 0.0;
  double roundtrip = 0.0;
  for (int c = 0; c < 500; ++c) {
    const int d = dim(rng);
    const CoeffMatrix a = random_state(d, rng);
    const LocalUnitary g = make_local_unitary(haar_unitary(d, rng), haar_unitary(d, rng));
    const InvariantSet before = invariants(a);
    const InvariantSet after = invariants(apply_local(a, g));
    for (int p = 0; p < d; ++p) {
      lu = std::max(lu, std::abs(before.purities[static_cast<std::size_t>(p)] -
                                 after.purities[static_cast<std::size_t>(p)]));
    }
    lu = std::max({lu, std::abs(before.concurrence - after.concurrence),
                   std::abs(before.det_modulus - after.det_modulus)});
    const PolarSectors ps = polar_sectors(a.matrix());
    roundtrip = std::max(roundtrip, (ps.reconstruct() - a.matrix()).norm());
  }
  out.push_back(upper("local-unitary invariance (500 cases)", lu, 1e-10));
  out.push_back(upper("polar sector roundtrip (500 cases)", roundtrip, 1e-10));

  double q_law = 0.0;
  double s_law = 0.0;
  double recon = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const int d = dim(rng);
    const CoeffMatrix a = random_state(d, rng);
    const LocalUnitary g = make_local_unitary(haar_unitary(d, rng), haar_unitary(d, rng));
    const PolarSectors before = polar_sectors(a.matrix());
    const CoeffMatrix moved = apply_local(a, g);
    const PolarSectors after = polar_sectors(moved.matrix(), before.phase + g.det_phase);
    q_law = std::max(q_law, (after.hermitian_part -
                             g.su_signal * before.hermitian_part * g.su_signal.adjoint()).norm());
    s_law = std::max(s_law, (after.special_unitary_part -
                             g.su_signal * before.special_unitary_part * g.su_idler.transpose()).norm());
    recon = std::max(recon, (after.reconstruct() -
                             g.u_signal * a.matrix() * g.v_idler.transpose()).norm());
  }
  out.push_back(upper("sector law Q' = Ubar Q Ubar^dag (1000 cases)", q_law, 1e-9));
  out.push_back(upper("sector law S' = Ubar S Vbar^T (1000 cases)", s_law, 1e-9));
  out.push_back(upper("sector reconstruction of U a V^T (1000 cases)", recon, 1e-10));

  double tqq = 0.0;
  double tss = 0.0;
  double consistency = 0.0;
  double route = 0.0;
  double norm_dev = 0.0;
  int cyclic = 0;
  for (const auto& [label, trace] : sector_trace_family(seed, kTraceCheckSteps)) {
    const SectorDiagnostics diag = sector_diagnostics(trace);
    tqq = std::max(tqq, diag.max_trace_q_qdot);
    tss = std::max(tss, diag.max_trace_sdot_sdag);
    norm_dev = std::max(norm_dev, diag.max_norm_deviation);
    const PhaseReport r = phase_report(trace, gell_mann_basis(trace.dim()));
    if (r.fractional) {
      ++cyclic;
      const int d = trace.dim();
      consistency = std::max(consistency, r.fractional->theta_consistency);
      const double lhs = r.total_phase - r.dynamical_phase;
      const double rhs = kTwoPi * r.fractional->index / d + r.fractional->anholonomy_term;
      route = std::max(route, std::abs(wrap_to_pi(lhs - rhs)));
    }
  }
  out.push_back(upper("Tr[Q Q'] along traces", tqq, 1e-6));
  out.push_back(upper("Tr[S' S^dag] along traces", tss, 1e-6));
  out.push_back(upper("norm along traces", norm_dev, 1e-10));
  out.push_back(upper("theta = dphi + 2 pi n / d on cyclic traces", consistency, 1e-6,
                      std::to_string(cyclic) + " cyclic traces"));
  out.push_back(upper("geometric phase routes agree", route, 1e-4));

  const kernels::KernelTable& ref = kernels::scalar_table();
  const kernels::KernelTable& act = kernels::active();
  double kern = 0.0;
  std::normal_distribution<double> normal;
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 63u, 256u}) {
    std::vector<Complex> a(n), b(n);
    std::vector<double> c(n), s(n), o1(n), o2(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = {normal(rng), normal(rng)};
      b[k] = {normal(rng), normal(rng)};
      c[k] = normal(rng);
      s[k] = normal(rng);
    }
    const Complex ph = std::polar(1.0, normal(rng));
    kern = std::max(kern, std::abs(ref.conj_dot(a.data(), b.data(), n) - act.conj_dot(a.data(), b.data(), n)) / n);
    kern = std::max(kern, std::abs(ref.norm2(a.data(), n) - act.norm2(a.data(), n)) / n);
    kern = std::max(kern, std::abs(ref.interference_sum(a.data(), b.data(), ph, n) -
                                   act.interference_sum(a.data(), b.data(), ph, n)) / n);
    ref.fringe_eval(c.data(), s.data(), ph, o1.data(), n);
    act.fringe_eval(c.data(), s.data(), ph, o2.data(), n);
    for (std::size_t k = 0; k < n; ++k) kern = std::max(kern, std::abs(o1[k] - o2[k]));
  }
  out.push_back(upper("kernel " + std::string(kernels::to_string(act.isa)) + " vs scalar", kern, 1e-13));
}

}  // namespace

std::vector<CheckResult> run_suite(Suite suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  if (suite == Suite::ClosedForms || suite == Suite::All) closed_form_checks(out);
  if (suite == Suite::Oracle || suite == Suite::All) oracle_checks(out, seed);
  if (suite == Suite::Invariants || suite == Suite::All) invariant_checks(out, seed);
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

std::string format_results(const std::vector<CheckResult>& results) {
  std::string out;
  char buf[256];
  for (const CheckResult& r : results) {
    std::snprintf(buf, sizeof buf, "[%s] %-48s %.3e (threshold %.1e)%s%s\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.value, r.threshold, r.note.empty() ? "" : "  ", r.note.c_str());
    out += buf;
  }
  return out;
}

}  // namespace topophase
