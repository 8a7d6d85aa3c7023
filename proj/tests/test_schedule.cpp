#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "topophase/error.hpp"
#include "topophase/schedule.hpp"

using namespace topophase;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> heaviside_ref(double t) {
  const double h = t >= 0.5 ? 1.0 : 0.0;
  return {pi / 3 * (2 * t - (2 * t - 1) * h), -2 * pi / 3 * t, pi / 3 * (2 * t - 1) * h};
}

void check_vec(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-15) {
  REQUIRE(got.size() == want.size());
  for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) < tol);
}

}  // namespace

TEST_CASE("heaviside convention") {
  CHECK(heaviside(0.0) == 1.0);
  CHECK(heaviside(-1e-300) == 0.0);
  CHECK(heaviside(2.0) == 1.0);
}

TEST_CASE("heaviside_su3 matches the piecewise formula") {
  const PhaseSchedule s = builtin_schedule(ScheduleKind::HeavisideSu3);
  CHECK(s.dim == 3);
  CHECK(s.su_constrained);
  REQUIRE(s.kinks.size() == 1);
  CHECK(s.kinks[0] == 0.5);
  for (double t = 0.0; t <= 1.0 + 1e-12; t += 0.0625) {
    CAPTURE(t);
    const SchedulePhases p = schedule_phases(s, t, t);
    check_vec(p.signal, heaviside_ref(t));
    check_vec(p.idler, heaviside_ref(t));
  }
  check_vec(schedule_phases(s, 1.0, 1.0).signal, {pi / 3, -2 * pi / 3, pi / 3});
}

TEST_CASE("heaviside_su3 is continuous across the step") {
  const PhaseSchedule s = builtin_schedule(ScheduleKind::HeavisideSu3);
  const auto left = s.signal_phases(std::nextafter(0.5, 0.0));
  const auto at = s.signal_phases(0.5);
  const auto right = s.signal_phases(std::nextafter(0.5, 1.0));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(left[k] - at[k]) < 1e-12);
    CHECK(std::abs(right[k] - at[k]) < 1e-12);
  }
  // Limits with the opposite convention H(0) = 0 coincide at t = 1/2.
  const double t = 0.5;
  const std::vector<double> other{pi / 3 * 2 * t, -2 * pi / 3 * t, 0.0};
  check_vec(at, other, 1e-15);
}

TEST_CASE("independent_su3 uses separate signal and idler parameters") {
  const PhaseSchedule s = builtin_schedule(ScheduleKind::IndependentSu3);
  CHECK(s.kinks.empty());
  const SchedulePhases p = schedule_phases(s, 1.0, 0.25);
  check_vec(p.signal, {pi / 3, pi / 3, -2 * pi / 3});
  check_vec(p.idler, {pi / 12, pi / 12, -pi / 6});
}

TEST_CASE("two_component_su3 leaves the third slit alone") {
  const PhaseSchedule s = builtin_schedule(ScheduleKind::TwoComponentSu3);
  CHECK(s.dim == 3);
  const SchedulePhases p = schedule_phases(s, 0.6, 0.2);
  check_vec(p.signal, {0.3 * pi, -0.3 * pi, 0.0});
  check_vec(p.idler, {0.1 * pi, -0.1 * pi, 0.0});
}

TEST_CASE("qubit_pair") {
  const PhaseSchedule s = builtin_schedule(ScheduleKind::QubitPair);
  CHECK(s.dim == 2);
  check_vec(schedule_phases(s, 1.0, 1.0).signal, {pi / 2, -pi / 2});
  check_vec(schedule_phases(s, 1.0, 0.5).idler, {pi / 4, -pi / 4});
}

TEST_CASE("built-in schedules are trace-free everywhere") {
  for (ScheduleKind k : builtin_schedule_kinds()) {
    const PhaseSchedule s = builtin_schedule(k);
    for (int j = 0; j <= 200; ++j) {
      const double t = j / 200.0;
      const SchedulePhases p = schedule_phases(s, t, 1.0 - t);
      double ss = 0, si = 0;
      for (double x : p.signal) ss += x;
      for (double x : p.idler) si += x;
      CHECK(std::abs(ss) < 1e-12);
      CHECK(std::abs(si) < 1e-12);
      CHECK_FALSE(p.out_of_range);
    }
  }
}

TEST_CASE("schedule names") {
  for (ScheduleKind k : builtin_schedule_kinds()) {
    CHECK(schedule_by_name(to_string(k)).kind == k);
  }
  CHECK(to_string(ScheduleKind::HeavisideSu3) == "heaviside_su3");
  CHECK(to_string(ScheduleKind::QubitPair) == "qubit_pair");
  CHECK(oracle::error_of([] { schedule_by_name("heaviside"); }) == ErrorCode::UnknownSchedule);
  CHECK(oracle::error_of([] { builtin_schedule(ScheduleKind::Custom); }) ==
        ErrorCode::UnknownSchedule);
}

TEST_CASE("out-of-range parameters are flagged, not refused") {
  const PhaseSchedule s = builtin_schedule(ScheduleKind::IndependentSu3);
  const SchedulePhases p = schedule_phases(s, 1.25, 0.5);
  CHECK(p.out_of_range);
  check_vec(p.signal, {1.25 * pi / 3, 1.25 * pi / 3, -2.5 * pi / 3});
  CHECK(schedule_phases(s, 0.5, -0.25).out_of_range);
}

TEST_CASE("custom schedules interpolate linearly and clamp") {
  const PhaseSchedule s =
      custom_schedule({0.0, 0.5, 1.0}, {{0, 0}, {1, -1}, {3, -3}}, {{0, 0}, {0, 0}, {-2, 2}}, true);
  CHECK(s.dim == 2);
  REQUIRE(s.kinks.size() == 1);
  CHECK(s.kinks[0] == 0.5);
  check_vec(s.signal_phases(0.25), {0.5, -0.5});
  check_vec(s.signal_phases(0.75), {2.0, -2.0});
  check_vec(s.idler_phases(0.75), {-1.0, 1.0});
  check_vec(s.signal_phases(-1.0), {0, 0});
  check_vec(s.signal_phases(2.0), {3, -3});

  const PhaseSchedule bad = custom_schedule({0.0, 1.0}, {{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}, true);
  CHECK(oracle::error_of([&] { schedule_phases(bad, 1.0, 1.0); }) == ErrorCode::NotTraceFree);
  const PhaseSchedule free = custom_schedule({0.0, 1.0}, {{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}, false);
  CHECK_NOTHROW(schedule_phases(free, 1.0, 1.0));
}

TEST_CASE("custom schedule validation") {
  auto code = [](auto&& f) { return oracle::error_of(f); };
  CHECK(code([] { custom_schedule({0.0, 0.0}, {{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}, true); }) ==
        ErrorCode::InvalidConfig);
  CHECK(code([] { custom_schedule({0.0, 1.0}, {{0, 0}}, {{0, 0}, {0, 0}}, true); }) ==
        ErrorCode::InvalidConfig);
  CHECK(code([] { custom_schedule({0.0, 1.0}, {{0, 0}, {0, 0, 0}}, {{0, 0}, {0, 0}}, true); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code([] { custom_schedule({0.0, 1.0}, {{0}, {0}}, {{0}, {0}}, true); }) ==
        ErrorCode::DimensionOutOfRange);
  CHECK(code([] { custom_schedule({0.5}, {{0, 0}}, {{0, 0}}, true); }) == ErrorCode::InvalidConfig);
}
