#include "topophase/optics_oracle.hpp"

#include <cmath>

#include "topophase/error.hpp"
#include "topophase/kernels.hpp"

namespace topophase::optics {

namespace {

constexpr std::array<Pol, 2> kPols{Pol::H, Pol::V};

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

double TwoPhotonState::norm2() const { return kernels::active().norm2(amp_.data(), amp_.size()); }

CMatrix TwoPhotonState::block(Pol sigma, Pol epsilon) const {
  CMatrix out(dim_, dim_);
  for (int m = 0; m < dim_; ++m) {
    for (int n = 0; n < dim_; ++n) out(m, n) = at(m, sigma, n, epsilon);
  }
  return out;
}

TwoPhotonState prepare_after_slits(const CoeffMatrix& alpha) {
  const int d = alpha.dim();
  TwoPhotonState psi(d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) psi.at(m, Pol::H, n, Pol::H) = alpha(m, n);
  }
  return psi;
}

TwoPhotonState apply_waveplates(const TwoPhotonState& state) {
  const int d = state.dim();
  TwoPhotonState out(d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      for (Pol s : kPols) {
        for (Pol e : kPols) {
          if ((s == Pol::V || e == Pol::V) && state.at(m, s, n, e) != Complex(0.0, 0.0)) {
            throw Error(ErrorCode::UnsupportedInput,
                        "wave plates expect the horizontally polarized pair state");
          }
        }
      }
      const Complex c = 0.5 * state.at(m, Pol::H, n, Pol::H);
      for (Pol s : kPols) {
        for (Pol e : kPols) out.at(m, s, n, e) = c;
      }
    }
  }
  return out;
}

TwoPhotonState apply_gates(const TwoPhotonState& state, const GateSettings& gates) {
  const int d = state.dim();
  if (gates.u_signal.rows() != d || gates.u_signal.cols() != d || gates.v_idler.rows() != d ||
      gates.v_idler.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "gate dimensions do not match the photon state");
  }
  // Per photon: H arm -> e^{i theta} * 1, V arm -> SLM unitary.
  const CMatrix id = CMatrix::Identity(d, d);
  const auto signal_op = [&](Pol p) -> CMatrix {
    return p == Pol::H ? CMatrix(std::polar(1.0, gates.theta_s) * id) : gates.u_signal;
  };
  const auto idler_op = [&](Pol p) -> CMatrix {
    return p == Pol::H ? CMatrix(std::polar(1.0, gates.theta_i) * id) : gates.v_idler;
  };

  TwoPhotonState out(d);
  for (Pol s : kPols) {
    for (Pol e : kPols) {
      // Block transforms as c -> A c B^T for signal operator A and idler operator B.
      const CMatrix evolved = signal_op(s) * state.block(s, e) * idler_op(e).transpose();
      for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) out.at(m, s, n, e) = evolved(m, n);
      }
    }
  }
  return out;
}

const std::array<FieldTerm, 2>& detector_one() {
  static const std::array<FieldTerm, 2> terms{
      FieldTerm{Photon::Signal, Pol::V, Complex(0.0, kInvSqrt2)},
      FieldTerm{Photon::Idler, Pol::H, Complex(kInvSqrt2, 0.0)}};
  return terms;
}

const std::array<FieldTerm, 2>& detector_two() {
  static const std::array<FieldTerm, 2> terms{
      FieldTerm{Photon::Signal, Pol::H, Complex(kInvSqrt2, 0.0)},
      FieldTerm{Photon::Idler, Pol::V, Complex(0.0, kInvSqrt2)}};
  return terms;
}

namespace {

// Each product of one E1 term and one E2 term that annihilates one signal and
// one idler photon; products hitting the same photon twice vanish on the
// two-photon sector.
struct PairTerm {
  Pol signal_pol;
  Pol idler_pol;
  Complex coeff;
};

std::vector<PairTerm> pair_terms() {
  std::vector<PairTerm> out;
  for (const FieldTerm& t1 : detector_one()) {
    for (const FieldTerm& t2 : detector_two()) {
      if (t1.photon == t2.photon) continue;
      const FieldTerm& sig = t1.photon == Photon::Signal ? t1 : t2;
      const FieldTerm& idl = t1.photon == Photon::Idler ? t1 : t2;
      out.push_back({sig.pol, idl.pol, t1.coeff * t2.coeff});
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<Pol, Pol>> detected_branches() {
  std::vector<std::pair<Pol, Pol>> out;
  for (const PairTerm& p : pair_terms()) out.emplace_back(p.signal_pol, p.idler_pol);
  return out;
}

double raw_coincidence(const TwoPhotonState& state) {
  const int d = state.dim();
  const auto terms = pair_terms();
  double acc = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      Complex a(0.0, 0.0);
      for (const PairTerm& p : terms) a += p.coeff * state.at(m, p.signal_pol, n, p.idler_pol);
      acc += std::norm(a);
    }
  }
  return acc;
}

double integrated_coincidence(const TwoPhotonState& state) {
  return kDetectionNormalization * raw_coincidence(state);
}

double oracle_coincidence(const CoeffMatrix& alpha, const GateSettings& gates) {
  return integrated_coincidence(apply_gates(apply_waveplates(prepare_after_slits(alpha)), gates));
}

double raw_mode_sum(const CMatrix& alpha, const CMatrix& alpha_evolved, double theta) {
  if (alpha.rows() != alpha_evolved.rows() || alpha.cols() != alpha_evolved.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrices differ in shape");
  }
  return 0.5 * kernels::active().interference_sum(alpha.data(), alpha_evolved.data(),
                                                  std::polar(1.0, theta),
                                                  static_cast<std::size_t>(alpha.size()));
}

}  // namespace topophase::optics
