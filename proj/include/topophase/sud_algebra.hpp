#pragma once

#include <optional>
#include <random>
#include <vector>

#include "topophase/tolerances.hpp"
#include "topophase/types.hpp"

namespace topophase {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;

/// Generalized Gell-Mann generators T_n of su(d), normalized Tr[T_n T_m] = delta_nm / 2.
///
/// Ordering: the d(d-1)/2 symmetric off-diagonal generators for pairs (j, k),
/// j < k in lexicographic order; then the antisymmetric ones for the same
/// pairs; then the d-1 diagonal ones, the l-th weighting the first l
/// entries by +1 and entry l by -l. For d = 2 this yields
/// (sigma_x, sigma_y, sigma_z) / 2.
struct GeneratorBasis {
  int dim = 0;
  std::vector<CMatrix> generators;

  std::size_t size() const { return generators.size(); }

  /// Components 2 Tr[T_n M]; real for Hermitian M.
  Eigen::VectorXcd coordinates(const CMatrix& m) const;

  /// sum_n x_n T_n.
  CMatrix combine(const RVector& x) const;
};

GeneratorBasis gell_mann_basis(int d);

/// alpha = e^{i phase} * Q * S with Q positive definite Hermitian and det S = 1.
struct PolarSectors {
  double phase = 0.0;
  CMatrix hermitian_part;
  CMatrix special_unitary_part;
  double branch_hint = 0.0;

  CMatrix reconstruct() const;
};

/// Polar-sector decomposition of an invertible matrix via its SVD.
/// The phase is the d-th root branch of arg det(W X^dagger) nearest to
/// `branch_hint`; without a hint the principal branch arg(det)/d is used.
/// Throws SingularMatrix when the smallest singular value is at or below
/// the invertibility tolerance.
PolarSectors polar_sectors(const CMatrix& alpha, std::optional<double> branch_hint = std::nullopt,
                           const Tolerances& tol = kDefaultTolerances);

/// Representative of `raw` modulo `period` closest to `previous`.
double unwrap_angle(double raw, double previous, double period);

/// Angle reduced to (-pi, pi].
double wrap_to_pi(double angle);

/// Split U = e^{i root_phase} * Ubar with det Ubar = 1; root_phase = arg(det U)/d
/// on the branch nearest `branch_hint` (principal branch when absent).
struct SpecialUnitaryFactor {
  CMatrix special;
  double root_phase = 0.0;
};

SpecialUnitaryFactor special_unitary_factor(const CMatrix& u,
                                            std::optional<double> branch_hint = std::nullopt);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
CMatrix haar_unitary(int d, std::mt19937_64& rng);

/// Complex Ginibre matrix with i.i.d. standard normal parts.
CMatrix ginibre(int d, std::mt19937_64& rng);

}  // namespace topophase
