#include "topophase/qudit_state.hpp"

#include <cmath>
#include <string>

#include "topophase/error.hpp"
#include "topophase/kernels.hpp"

namespace topophase {

CoeffMatrix make_state(const CMatrix& entries, bool normalize, const Tolerances& tol) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix must be square");
  }
  const double norm2 = kernels::frobenius2(entries);
  if (norm2 == 0.0) throw Error(ErrorCode::ZeroMatrix, "state coefficients are all zero");
  if (normalize) return CoeffMatrix(entries / std::sqrt(norm2));
  if (std::abs(norm2 - 1.0) > tol.normalize_reject) {
    throw Error(ErrorCode::NotNormalized, "Tr[a^dag a] = " + std::to_string(norm2));
  }
  return CoeffMatrix(entries);
}

CoeffMatrix maximally_entangled(int d) {
  return make_state(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)), false);
}

CoeffMatrix uniform_product(int d) {
  return make_state(CMatrix::Constant(d, d, Complex(1.0 / d, 0.0)), false);
}

CoeffMatrix random_state(int d, std::mt19937_64& rng) { return make_state(ginibre(d, rng), true); }

Complex overlap(const CoeffMatrix& a, const CoeffMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "overlap of states with different dimensions");
  }
  return kernels::trace_inner(a.matrix(), b.matrix());
}

DensityMatrix reduced_density(const CoeffMatrix& state, Subsystem which) {
  const CMatrix& a = state.matrix();
  if (which == Subsystem::Signal) return {(a.adjoint() * a).transpose()};
  return {a * a.adjoint()};
}

InvariantSet invariants(const CoeffMatrix& state) {
  const int d = state.dim();
  const DensityMatrix rho = reduced_density(state, Subsystem::Idler);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho.rho, Eigen::EigenvaluesOnly);
  const RVector& lambda = eig.eigenvalues();

  InvariantSet out;
  out.purities.resize(static_cast<std::size_t>(d));
  for (int p = 1; p <= d; ++p) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) acc += std::pow(std::max(lambda(k), 0.0), p);
    out.purities[static_cast<std::size_t>(p - 1)] = acc;
  }
  // 1 - Tr[rho^2] = 2 e_2(lambda) = 2 sum |2x2 minors of alpha|^2 (Cauchy-Binet).
  const CMatrix& a = state.matrix();
  double minors = 0.0;
  for (int m = 0; m < d; ++m)
    for (int mp = m + 1; mp < d; ++mp)
      for (int n = 0; n < d; ++n)
        for (int np = n + 1; np < d; ++np)
          minors += std::norm(a(m, n) * a(mp, np) - a(m, np) * a(mp, n));
  out.concurrence = 2.0 * std::sqrt(minors);
  out.max_concurrence = max_concurrence(d);
  out.det_modulus = std::abs(state.matrix().determinant());
  return out;
}

double q_prefactor(const CoeffMatrix& state) {
  const int d = state.dim();
  const CMatrix traceless =
      state.matrix() * state.matrix().adjoint() - CMatrix::Identity(d, d) / static_cast<double>(d);
  return std::sqrt(2.0 * kernels::frobenius2(traceless));
}

RVector q_unit_vector(const CoeffMatrix& state, const GeneratorBasis& basis, const Tolerances& tol) {
  if (basis.dim != state.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "generator basis and state dimensions differ");
  }
  const double k = q_prefactor(state);
  if (k < tol.q_prefactor) {
    throw Error(ErrorCode::MaximallyEntangled, "q-hat undefined at maximal concurrence");
  }
  const CMatrix q2 = state.matrix() * state.matrix().adjoint();
  return basis.coordinates(q2).real() / k;
}

}  // namespace topophase
