#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "topophase/error.hpp"
#include "topophase/evolution.hpp"
#include "topophase/interference.hpp"
#include "topophase/verify.hpp"

using namespace topophase;

namespace {

constexpr double pi = std::numbers::pi;

CoeffMatrix evolve_to(const CoeffMatrix& s, ScheduleKind kind, double ts, double ti) {
  const PhaseSchedule sch = builtin_schedule(kind);
  const SchedulePhases p = schedule_phases(sch, ts, ti);
  return apply_local(s, diagonal_local_unitary(p.signal, p.idler, true));
}

// Closed forms typed in again independently.
double ref_closed(ClosedForm f, double t, double tau, double th) {
  auto c2 = [](double x) { return std::cos(x) * std::cos(x); };
  switch (f) {
    case ClosedForm::Ce:
      return 2.0 / 3 * c2(t * pi / 3 - th / 2) + 1.0 / 3 * c2(2 * t * pi / 3 + th / 2);
    case ClosedForm::Cp:
      return 4.0 / 9 * c2(t * pi / 3 - th / 2) + 1.0 / 9 * c2(2 * t * pi / 3 + th / 2) +
             2.0 / 9 * (1 + std::cos(pi * tau) * std::cos(t * pi / 3 + th));
    case ClosedForm::Ce2:
      return 0.5 + std::cos(th) / 6 * (1 + 2 * std::cos(pi * t));
    case ClosedForm::Cp2:
      return 0.5 + std::cos(th) / 9 *
                       (0.5 + std::cos(pi * t) + std::cos(pi * tau) +
                        2 * std::cos(pi / 2 * t) * std::cos(pi / 2 * tau));
    case ClosedForm::Ced2:
      return 0.5 * (1 + std::cos(pi * t) * std::cos(th));
    case ClosedForm::Cpd2:
      return 0.5 + std::cos(th) / 4 * (std::cos(pi * t) + std::cos(pi * tau));
  }
  return 0;
}

}  // namespace

TEST_CASE("coincidence examples") {
  std::mt19937_64 rng(1);
  const CoeffMatrix s = random_state(3, rng);
  CHECK(coincidence(s, s, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(coincidence(s, s, pi)) < 1e-15);
  const CoeffMatrix e = maximally_entangled(3);
  const CoeffMatrix end = evolve_to(e, ScheduleKind::HeavisideSu3, 1, 1);
  CHECK(coincidence(e, end, 2 * pi / 3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(oracle::error_of([] { coincidence(maximally_entangled(2), maximally_entangled(3), 0); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("coincidence equals the ket superposition oracle") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int k = 0; k < 100; ++k) {
    const int d = 2 + k % 4;
    const CoeffMatrix a = random_state(d, rng);
    const CoeffMatrix b = apply_local(a, make_local_unitary(haar_unitary(d, rng), haar_unitary(d, rng)));
    const double th = ang(rng);
    const double c = coincidence(a, b, th);
    CHECK(std::abs(c - oracle::superposition_coincidence(oracle::ket(a.matrix()), oracle::ket(b.matrix()), th)) <
          1e-14);
    CHECK(c >= -1e-15);
    CHECK(c <= 1 + 1e-15);
  }
}

TEST_CASE("fringe pattern examples") {
  const CoeffMatrix e3 = maximally_entangled(3);
  const CoeffMatrix p3 = uniform_product(3);
  SUBCASE("entangled qutrit at the Heaviside midpoint") {
    const FringePattern f = fringe_pattern(e3, evolve_to(e3, ScheduleKind::HeavisideSu3, 0.5, 0.5), 64);
    CHECK(f.visibility < 1e-12);
    CHECK_FALSE(f.fringe_phase.has_value());
    for (double c : f.counts) CHECK(c == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("product qutrit at the Heaviside endpoint") {
    const FringePattern f = fringe_pattern(p3, evolve_to(p3, ScheduleKind::HeavisideSu3, 1, 1), 64);
    CHECK(std::abs(f.visibility - 1.0 / 9) < 1e-12);
    REQUIRE(f.fringe_phase.has_value());
    CHECK(std::abs(wrap_to_pi(*f.fringe_phase - 2 * pi / 3)) < 1e-12);
  }
  SUBCASE("entangled qubits at the endpoint") {
    const CoeffMatrix e2 = maximally_entangled(2);
    const FringePattern f = fringe_pattern(e2, evolve_to(e2, ScheduleKind::QubitPair, 1, 1), 64);
    CHECK(std::abs(f.visibility - 1.0) < 1e-12);
    REQUIRE(f.fringe_phase.has_value());
    CHECK(std::abs(std::abs(*f.fringe_phase) - pi) < 1e-12);
  }
  SUBCASE("grid") {
    const FringePattern f = fringe_pattern(e3, e3, 8);
    REQUIRE(f.theta.size() == 8);
    CHECK(f.theta[0] == 0.0);
    CHECK(f.theta[4] == doctest::Approx(pi));
    CHECK(f.counts[0] == doctest::Approx(1.0));
    CHECK(oracle::error_of([&] { fringe_pattern(e3, e3, 7); }) == ErrorCode::InvalidConfig);
  }
}

TEST_CASE("fringe invariants on random pairs") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const int d = 2 + k % 3;
    const CoeffMatrix a = random_state(d, rng), b = random_state(d, rng);
    const FringePattern f = fringe_pattern(a, b, 96);
    CHECK(std::abs(f.visibility - std::abs(overlap(a, b))) < 1e-10);
    REQUIRE(f.fringe_phase.has_value());
    for (std::size_t j = 0; j < f.theta.size(); ++j) {
      CHECK(std::abs(f.counts[j] - 0.5 * (1 + f.visibility * std::cos(f.theta[j] - *f.fringe_phase))) < 1e-10);
      CHECK(std::abs(f.counts[j] - coincidence(a, b, f.theta[j])) < 1e-14);
    }
    CHECK(cosine_fit_residual(f) < 1e-10);
  }
}

TEST_CASE("diagonal coincidence") {
  const CoeffMatrix e = maximally_entangled(3);
  const std::vector<double> h1{pi / 3, -2 * pi / 3, pi / 3};
  CHECK(diagonal_coincidence(e, h1, h1, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(diagonal_coincidence(e, h1, h1, 2 * pi / 3) == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(4);
  const std::vector<double> z{0, 0, 0};
  CHECK(diagonal_coincidence(random_state(3, rng), z, z, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> z2{0, 0};
  CHECK(oracle::error_of([&] { diagonal_coincidence(e, z2, z, 0.0); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("diagonal and overlap forms agree for complex amplitudes too") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-pi, pi);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 4;
    const CoeffMatrix s = random_state(d, rng);
    std::vector<double> phi(d), chi(d);
    for (int j = 0; j < d; ++j) phi[j] = ang(rng), chi[j] = ang(rng);
    double sp = 0, sc = 0;
    for (int j = 0; j < d; ++j) sp += phi[j], sc += chi[j];
    for (int j = 0; j < d; ++j) phi[j] -= sp / d, chi[j] -= sc / d;
    const CoeffMatrix t = apply_local(s, diagonal_local_unitary(phi, chi, true));
    const double th = ang(rng);
    worst = std::max(worst, std::abs(diagonal_coincidence(s, phi, chi, th) - coincidence(s, t, th)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("closed forms") {
  CHECK(closed_form(ClosedForm::Ce, 1, 0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  for (double th : {0.0, 1.0, 2.5}) {
    CHECK(closed_form(ClosedForm::Ce2, 0.5, 0, th) == doctest::Approx(0.5 + std::cos(th) / 6).epsilon(1e-15));
    CHECK(closed_form(ClosedForm::Ced2, 1, 0, th) == doctest::Approx(0.5 * (1 - std::cos(th))).epsilon(1e-15));
  }
  for (ClosedForm f : all_closed_forms()) {
    CHECK(closed_form_by_name(to_string(f)) == f);
    for (double t : {0.0, 0.3, 1.0})
      for (double tau : {0.0, 0.25, 0.5})
        for (double th : {0.0, 0.7, 4.0})
          CHECK(std::abs(closed_form(f, t, tau, th) - ref_closed(f, t, tau, th)) < 1e-15);
  }
  CHECK(to_string(ClosedForm::Ced2) == "Ced2");
  CHECK(oracle::error_of([] { closed_form_by_name("Cx"); }) == ErrorCode::UnknownScenario);
}

TEST_CASE("closed-form settings") {
  CHECK(closed_form_setting(ClosedForm::Ce).schedule == ScheduleKind::IndependentSu3);
  CHECK(closed_form_setting(ClosedForm::Cp).input == ReferenceInput::UniformProduct);
  CHECK(closed_form_setting(ClosedForm::Cp2).schedule == ScheduleKind::TwoComponentSu3);
  CHECK(closed_form_setting(ClosedForm::Ced2).dim == 2);
  CHECK(closed_form_setting(ClosedForm::Ced2).schedule == ScheduleKind::QubitPair);
}

TEST_CASE("pipeline reproduces every closed form on the regression grid") {
  const ClosedFormGrid g = closed_form_grid();
  CHECK(g.t.size() == 21);
  CHECK(g.tau.size() == 3);
  CHECK(g.theta.size() == 64);
  for (ClosedForm f : all_closed_forms()) {
    double worst = 0;
    for (double t : g.t)
      for (double tau : g.tau)
        for (double th : g.theta)
          worst = std::max(worst, std::abs(pipeline_coincidence(f, t, tau, th) - ref_closed(f, t, tau, th)));
    CAPTURE(to_string(f));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("tau dependence") {
  const ClosedFormGrid g = closed_form_grid();
  auto spread = [&](ClosedForm f) {
    double w = 0;
    for (double t : g.t)
      for (double tau : g.tau)
        for (double th : g.theta)
          w = std::max(w, std::abs(pipeline_coincidence(f, t, tau, th) - pipeline_coincidence(f, t, 0, th)));
    return w;
  };
  CHECK(spread(ClosedForm::Ce) < 1e-12);
  CHECK(spread(ClosedForm::Ce2) < 1e-12);
  CHECK(spread(ClosedForm::Cp) > 0.01);
  CHECK(spread(ClosedForm::Cp2) > 0.01);
}
