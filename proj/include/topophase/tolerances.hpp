#pragma once

namespace topophase {

// Numerical thresholds shared by every module. Acceptance checks read the
// same record so there is exactly one place to change a threshold.
struct Tolerances {
  double generator_orthonormality = 1e-12;
  double state_norm = 1e-12;        // unit-norm invariant of a validated state
  double normalize_reject = 1e-9;   // make_state(normalize=false) rejects beyond this
  double invertibility = 1e-9;      // smallest singular value for polar sectors
  double polar_roundtrip = 1e-10;
  double q_prefactor = 1e-12;       // sqrt(Cm^2 - C^2) below this: q-hat undefined
  double trace_free = 1e-12;        // |sum of SU(d) phases|
  double cyclicity = 1e-6;          // Frobenius distance for a cyclic endpoint
  double fringe_phase_floor = 1e-12;  // visibility below which gamma is absent
  double spurious_dynamical = 1e-8;   // per step, real part of i*Tr[a^dag a']
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace topophase
