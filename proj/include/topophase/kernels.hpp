#pragma once

// Data-parallel inner loops used by the state, evolution and interference
// code. Each kernel has a scalar reference implementation and optional SIMD
// variants; one table is selected at first use from the host CPU features.
// Setting TOPOPHASE_SIMD=scalar|avx2|neon overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "topophase/types.hpp"

namespace topophase::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;

  // sum_k conj(a_k) * b_k
  Complex (*conj_dot)(const Complex* a, const Complex* b, std::size_t n);

  // sum_k |a_k|^2
  double (*norm2)(const Complex* a, std::size_t n);

  // sum_k |phase * a_k + b_k|^2
  double (*interference_sum)(const Complex* a, const Complex* b, Complex phase, std::size_t n);

  // out_k = (1 + Re(o) cos_k + Im(o) sin_k) / 2, i.e. (1 + |o| cos(theta_k - arg o)) / 2
  void (*fringe_eval)(const double* cos_theta, const double* sin_theta, Complex overlap,
                      double* out, std::size_t n);

  // Column-major d x d: out(m, n) = u_m * alpha(m, n) * v_n
  void (*diag_sandwich)(const Complex* u, const Complex* alpha, const Complex* v,
                        Complex* out, std::size_t d);
};

const KernelTable& scalar_table();

// Table for `isa` if it was compiled in and the CPU supports it, else nullptr.
const KernelTable* table_for(Isa isa);

std::vector<Isa> available();

// The table all library code goes through.
const KernelTable& active();

// Tr[a^dagger b] for equally shaped matrices.
inline Complex trace_inner(const CMatrix& a, const CMatrix& b) {
  return active().conj_dot(a.data(), b.data(), static_cast<std::size_t>(a.size()));
}

inline double frobenius2(const CMatrix& a) {
  return active().norm2(a.data(), static_cast<std::size_t>(a.size()));
}

}  // namespace topophase::kernels
