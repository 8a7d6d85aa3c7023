#pragma once

// Brute-force photonic model of the polarization-controlled two-photon
// interferometer: slit (x) polarization modes for one signal and one idler
// photon, half-wave plates, SLM gates on the vertical arms, PZT phases on the
// horizontal arms, a PBS plus 45-degree polarizers in front of two detectors.
// Slit modes are an orthonormal basis, so integrating over the detector
// planes reduces to a sum over slit labels.

#include <array>
#include <utility>
#include <vector>

#include "topophase/qudit_state.hpp"
#include "topophase/types.hpp"

namespace topophase::optics {

enum class Pol { H = 0, V = 1 };
enum class Photon { Signal, Idler };

/// sum c_{m sigma, n epsilon} |m sigma, n epsilon> with one signal photon in
/// slit m, polarization sigma and one idler photon in slit n, polarization epsilon.
class TwoPhotonState {
 public:
  explicit TwoPhotonState(int dim)
      : dim_(dim), amp_(static_cast<std::size_t>(4 * dim * dim), Complex(0.0, 0.0)) {}

  int dim() const { return dim_; }

  Complex& at(int m, Pol sigma, int n, Pol epsilon) { return amp_[index(m, sigma, n, epsilon)]; }
  Complex at(int m, Pol sigma, int n, Pol epsilon) const {
    return amp_[index(m, sigma, n, epsilon)];
  }

  double norm2() const;

  /// d x d block of amplitudes with fixed polarizations, rows = signal slit.
  CMatrix block(Pol sigma, Pol epsilon) const;

 private:
  std::size_t index(int m, Pol sigma, int n, Pol epsilon) const {
    return static_cast<std::size_t>(((m * 2 + static_cast<int>(sigma)) * dim_ + n) * 2 +
                                    static_cast<int>(epsilon));
  }

  int dim_;
  std::vector<Complex> amp_;
};

struct GateSettings {
  CMatrix u_signal;
  CMatrix v_idler;
  double theta_s = 0.0;
  double theta_i = 0.0;
};

/// sum_mn alpha_mn |mH, nH>.
TwoPhotonState prepare_after_slits(const CoeffMatrix& alpha);

/// 45-degree rotation of both polarizations: |mH, nH> -> (|mH,nH> + |mH,nV> +
/// |mV,nH> + |mV,nV>) / 2. Inputs with any V amplitude are rejected.
TwoPhotonState apply_waveplates(const TwoPhotonState& state);

/// Polarization-controlled gates: H arms pick up e^{i theta}, V arms pass the SLM.
TwoPhotonState apply_gates(const TwoPhotonState& state, const GateSettings& gates);

/// One term c * a_{p, pol} (or b_{q, pol}) of a detected field operator.
struct FieldTerm {
  Photon photon;
  Pol pol;
  Complex coeff;
};

/// E1+ = (i E_sV+ + E_iH+)/sqrt2 and E2+ = (E_sH+ + i E_iV+)/sqrt2.
const std::array<FieldTerm, 2>& detector_one();
const std::array<FieldTerm, 2>& detector_two();

/// (signal, idler) polarization branches that E2+ E1+ maps to the vacuum.
std::vector<std::pair<Pol, Pol>> detected_branches();

/// ||E2+ E1+ |psi>||^2 summed over slit labels; no normalization.
double raw_coincidence(const TwoPhotonState& state);

/// Raw coincidence rescaled so that its maximum over the interferometer
/// phase is 1 for unit-norm inputs.
inline constexpr double kDetectionNormalization = 4.0;

double integrated_coincidence(const TwoPhotonState& state);

/// Runs preparation, wave plates, gates and detection for one setting.
double oracle_coincidence(const CoeffMatrix& alpha, const GateSettings& gates);

/// (1/2) sum_mn |alpha_mn e^{i theta} + alpha'_mn|^2, the integrated count as
/// the integrated count with its raw prefactor; its maximum over theta is 2.
double raw_mode_sum(const CMatrix& alpha, const CMatrix& alpha_evolved, double theta);

}  // namespace topophase::optics
