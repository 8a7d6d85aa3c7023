// AArch64 Advanced SIMD variants: one complex<double> per float64x2_t.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace topophase::kernels::detail::neon {

namespace {

inline const double* raw(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(Complex* p) { return reinterpret_cast<double*>(p); }

inline float64x2_t swap(float64x2_t x) { return vextq_f64(x, x, 1); }

inline float64x2_t cmul(float64x2_t x, float64x2_t y) {
  const float64x2_t sign = {-1.0, 1.0};
  const float64x2_t re = vmulq_laneq_f64(x, y, 0);
  const float64x2_t im = vmulq_f64(vmulq_laneq_f64(swap(x), y, 1), sign);
  return vaddq_f64(re, im);
}

}  // namespace

Complex conj_dot(const Complex* a, const Complex* b, std::size_t n) {
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const float64x2_t va = vld1q_f64(raw(a + k));
    const float64x2_t vb = vld1q_f64(raw(b + k));
    acc_re = vfmaq_f64(acc_re, va, vb);
    acc_im = vfmaq_f64(acc_im, va, swap(vb));
  }
  return {vaddvq_f64(acc_re), vgetq_lane_f64(acc_im, 0) - vgetq_lane_f64(acc_im, 1)};
}

double norm2(const Complex* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const float64x2_t va = vld1q_f64(raw(a + k));
    acc = vfmaq_f64(acc, va, va);
  }
  return vaddvq_f64(acc);
}

double interference_sum(const Complex* a, const Complex* b, Complex phase, std::size_t n) {
  const float64x2_t p_re = vdupq_n_f64(phase.real());
  const float64x2_t p_im = {-phase.imag(), phase.imag()};
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const float64x2_t va = vld1q_f64(raw(a + k));
    float64x2_t z = vfmaq_f64(vld1q_f64(raw(b + k)), p_re, va);
    z = vfmaq_f64(z, p_im, swap(va));
    acc = vfmaq_f64(acc, z, z);
  }
  return vaddvq_f64(acc);
}

void fringe_eval(const double* c, const double* s, Complex overlap, double* out, std::size_t n) {
  const float64x2_t half = vdupq_n_f64(0.5);
  const float64x2_t re = vdupq_n_f64(0.5 * overlap.real());
  const float64x2_t im = vdupq_n_f64(0.5 * overlap.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t v = vfmaq_f64(half, re, vld1q_f64(c + k));
    v = vfmaq_f64(v, im, vld1q_f64(s + k));
    vst1q_f64(out + k, v);
  }
  for (; k < n; ++k) out[k] = 0.5 * (1.0 + overlap.real() * c[k] + overlap.imag() * s[k]);
}

void diag_sandwich(const Complex* u, const Complex* alpha, const Complex* v, Complex* out,
                   std::size_t d) {
  for (std::size_t col = 0; col < d; ++col) {
    const float64x2_t vc = vld1q_f64(raw(v + col));
    for (std::size_t row = 0; row < d; ++row) {
      const float64x2_t x = cmul(vld1q_f64(raw(u + row)), vld1q_f64(raw(alpha + col * d + row)));
      vst1q_f64(raw(out + col * d + row), cmul(x, vc));
    }
  }
}

}  // namespace topophase::kernels::detail::neon
