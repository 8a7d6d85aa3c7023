#include "kernels_impl.hpp"

namespace topophase::kernels::detail::scalar {

namespace {

// Plain complex product without the Annex G inf/nan recovery path, so the
// scalar reference and the SIMD variants perform the same arithmetic.
inline Complex mul(Complex x, Complex y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

}  // namespace

Complex conj_dot(const Complex* a, const Complex* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

double norm2(const Complex* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return acc;
}

double interference_sum(const Complex* a, const Complex* b, Complex phase, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double re = phase.real() * a[k].real() - phase.imag() * a[k].imag() + b[k].real();
    const double im = phase.real() * a[k].imag() + phase.imag() * a[k].real() + b[k].imag();
    acc += re * re + im * im;
  }
  return acc;
}

void fringe_eval(const double* c, const double* s, Complex overlap, double* out, std::size_t n) {
  const double re = overlap.real();
  const double im = overlap.imag();
  for (std::size_t k = 0; k < n; ++k) out[k] = 0.5 * (1.0 + re * c[k] + im * s[k]);
}

void diag_sandwich(const Complex* u, const Complex* alpha, const Complex* v, Complex* out,
                   std::size_t d) {
  for (std::size_t col = 0; col < d; ++col) {
    for (std::size_t row = 0; row < d; ++row) {
      out[col * d + row] = mul(mul(u[row], alpha[col * d + row]), v[col]);
    }
  }
}

}  // namespace topophase::kernels::detail::scalar
