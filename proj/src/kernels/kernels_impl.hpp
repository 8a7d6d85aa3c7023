#pragma once

// Internal: per-ISA kernel entry points. Not part of the public surface.

#include <complex>
#include <cstddef>

namespace topophase::kernels::detail {

using Complex = std::complex<double>;

#define TOPOPHASE_DECLARE_KERNELS(ns)                                                     \
  namespace ns {                                                                          \
  Complex conj_dot(const Complex* a, const Complex* b, std::size_t n);                    \
  double norm2(const Complex* a, std::size_t n);                                          \
  double interference_sum(const Complex* a, const Complex* b, Complex phase,              \
                          std::size_t n);                                                 \
  void fringe_eval(const double* c, const double* s, Complex overlap, double* out,        \
                   std::size_t n);                                                        \
  void diag_sandwich(const Complex* u, const Complex* alpha, const Complex* v,            \
                     Complex* out, std::size_t d);                                        \
  }

TOPOPHASE_DECLARE_KERNELS(scalar)
TOPOPHASE_DECLARE_KERNELS(avx2)
TOPOPHASE_DECLARE_KERNELS(neon)

#undef TOPOPHASE_DECLARE_KERNELS

}  // namespace topophase::kernels::detail
