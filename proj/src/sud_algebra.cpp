#include "topophase/sud_algebra.hpp"

#include <cmath>
#include <string>

#include "topophase/error.hpp"
#include "topophase/kernels.hpp"

namespace topophase {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::MaximallyEntangled: return "MaximallyEntangled";
    case ErrorCode::NotTraceFree: return "NotTraceFree";
    case ErrorCode::UnknownSchedule: return "UnknownSchedule";
    case ErrorCode::TooFewSteps: return "TooFewSteps";
    case ErrorCode::SectorsUnavailable: return "SectorsUnavailable";
    case ErrorCode::UnsupportedInput: return "UnsupportedInput";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

GeneratorBasis gell_mann_basis(int d) {
  if (d < kMinDim || d > kMaxDim) {
    throw Error(ErrorCode::DimensionOutOfRange,
                "generator basis supports 2 <= d <= 8, got " + std::to_string(d));
  }
  GeneratorBasis basis;
  basis.dim = d;
  basis.generators.reserve(static_cast<std::size_t>(d * d - 1));

  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix t = CMatrix::Zero(d, d);
      t(j, k) = 0.5;
      t(k, j) = 0.5;
      basis.generators.push_back(std::move(t));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix t = CMatrix::Zero(d, d);
      t(j, k) = Complex(0.0, -0.5);
      t(k, j) = Complex(0.0, 0.5);
      basis.generators.push_back(std::move(t));
    }
  }
  for (int l = 1; l < d; ++l) {
    CMatrix t = CMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(2.0 * l * (l + 1));
    for (int j = 0; j < l; ++j) t(j, j) = norm;
    t(l, l) = -l * norm;
    basis.generators.push_back(std::move(t));
  }
  return basis;
}

Eigen::VectorXcd GeneratorBasis::coordinates(const CMatrix& m) const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(generators.size()));
  // Generators are Hermitian, so Tr[T m] = Tr[T^dagger m].
  for (std::size_t n = 0; n < generators.size(); ++n) {
    out(static_cast<Eigen::Index>(n)) = 2.0 * kernels::trace_inner(generators[n], m);
  }
  return out;
}

CMatrix GeneratorBasis::combine(const RVector& x) const {
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t n = 0; n < generators.size(); ++n) {
    out += x(static_cast<Eigen::Index>(n)) * generators[n];
  }
  return out;
}

CMatrix PolarSectors::reconstruct() const {
  return std::polar(1.0, phase) * hermitian_part * special_unitary_part;
}

double unwrap_angle(double raw, double previous, double period) {
  return raw + period * std::round((previous - raw) / period);
}

double wrap_to_pi(double angle) {
  double w = std::remainder(angle, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

namespace {

double root_phase(Complex det, int d, std::optional<double> hint) {
  const double base = std::arg(det) / d;
  return hint ? unwrap_angle(base, *hint, kTwoPi / d) : base;
}

}  // namespace

PolarSectors polar_sectors(const CMatrix& alpha, std::optional<double> branch_hint,
                           const Tolerances& tol) {
  const auto d = static_cast<int>(alpha.rows());
  if (alpha.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "polar sectors need a square matrix");
  }
  Eigen::JacobiSVD<CMatrix> svd(alpha, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sigma = svd.singularValues();
  if (sigma(d - 1) <= tol.invertibility) {
    throw Error(ErrorCode::SingularMatrix,
                "smallest singular value " + std::to_string(sigma(d - 1)) +
                    " at or below invertibility threshold");
  }
  const CMatrix& w = svd.matrixU();
  const CMatrix& x = svd.matrixV();
  const CMatrix unitary = w * x.adjoint();

  PolarSectors out;
  out.phase = root_phase(unitary.determinant(), d, branch_hint);
  out.branch_hint = branch_hint.value_or(out.phase);
  out.hermitian_part = w * sigma.cast<Complex>().asDiagonal() * w.adjoint();
  out.hermitian_part = 0.5 * (out.hermitian_part + out.hermitian_part.adjoint()).eval();
  out.special_unitary_part = std::polar(1.0, -out.phase) * unitary;
  return out;
}

SpecialUnitaryFactor special_unitary_factor(const CMatrix& u, std::optional<double> branch_hint) {
  const auto d = static_cast<int>(u.rows());
  SpecialUnitaryFactor out;
  out.root_phase = root_phase(u.determinant(), d, branch_hint);
  out.special = std::polar(1.0, -out.root_phase) * u;
  return out;
}

CMatrix ginibre(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) z(r, c) = Complex(normal(rng), normal(rng));
  }
  return z;
}

CMatrix haar_unitary(int d, std::mt19937_64& rng) {
  const CMatrix z = ginibre(d, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

}  // namespace topophase
