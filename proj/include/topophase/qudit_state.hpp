#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "topophase/sud_algebra.hpp"
#include "topophase/tolerances.hpp"
#include "topophase/types.hpp"

namespace topophase {

/// Two-qudit pure state sum_mn alpha_mn |m n>, held as its d x d coefficient
/// matrix with unit Frobenius norm. Rows index the signal qudit, columns the
/// idler.
class CoeffMatrix {
 public:
  int dim() const { return static_cast<int>(alpha_.rows()); }
  const CMatrix& matrix() const { return alpha_; }
  Complex operator()(int m, int n) const { return alpha_(m, n); }

 private:
  explicit CoeffMatrix(CMatrix alpha) : alpha_(std::move(alpha)) {}
  CMatrix alpha_;

  friend CoeffMatrix make_state(const CMatrix&, bool, const Tolerances&);
};

/// Validated state. With `normalize` the matrix is rescaled to unit norm;
/// otherwise a norm off by more than tol.normalize_reject is rejected.
CoeffMatrix make_state(const CMatrix& entries, bool normalize,
                       const Tolerances& tol = kDefaultTolerances);

/// alpha_mn = delta_mn / sqrt(d).
CoeffMatrix maximally_entangled(int d);

/// alpha_mn = 1/d: both qudits in the uniform superposition.
CoeffMatrix uniform_product(int d);

/// Normalized Ginibre matrix; invertible with probability one.
CoeffMatrix random_state(int d, std::mt19937_64& rng);

/// <a|b> = Tr[a^dagger b].
Complex overlap(const CoeffMatrix& a, const CoeffMatrix& b);

struct DensityMatrix {
  CMatrix rho;
  int dim() const { return static_cast<int>(rho.rows()); }
};

/// (alpha^dagger alpha)^T for the signal qudit, alpha alpha^dagger for the idler.
DensityMatrix reduced_density(const CoeffMatrix& state, Subsystem which);

struct InvariantSet {
  std::vector<double> purities;  // Tr[rho^p], p = 1..d
  double concurrence = 0.0;
  double max_concurrence = 0.0;
  double det_modulus = 0.0;
};

inline double max_concurrence(int d) { return std::sqrt(2.0 * (d - 1) / d); }

InvariantSet invariants(const CoeffMatrix& state);

/// sqrt(Cm^2 - C^2), evaluated as sqrt(2) * ||alpha alpha^dagger - 1/d||_F,
/// which is the same quantity without the cancellation of the difference form.
double q_prefactor(const CoeffMatrix& state);

/// Direction q-hat of Q^2 - 1/d in generator coordinates:
/// Q^2 = 1/d + sqrt(Cm^2 - C^2) q-hat . T. Throws MaximallyEntangled when the
/// prefactor is below tol.q_prefactor.
RVector q_unit_vector(const CoeffMatrix& state, const GeneratorBasis& basis,
                      const Tolerances& tol = kDefaultTolerances);

}  // namespace topophase
