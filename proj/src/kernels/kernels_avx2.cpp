// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace topophase::kernels::detail::avx2 {

namespace {

inline const double* raw(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(Complex* p) { return reinterpret_cast<double*>(p); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (x0 y0, x1 y1) as complex products, two complex values per register.
inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d y_re = _mm256_movedup_pd(y);
  const __m256d y_im = _mm256_permute_pd(y, 0xF);
  const __m256d x_sw = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(x, y_re, _mm256_mul_pd(x_sw, y_im));
}

}  // namespace

Complex conj_dot(const Complex* a, const Complex* b, std::size_t n) {
  const double* pa = raw(a);
  const double* pb = raw(b);
  __m256d acc_re = _mm256_setzero_pd();  // (ar br, ai bi)
  __m256d acc_im = _mm256_setzero_pd();  // (ar bi, ai br)
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * k);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * k);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_im);
  }
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  double re = hsum(acc_re);
  double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
  for (; k < n; ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

double norm2(const Complex* a, std::size_t n) {
  const double* pa = raw(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * k);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double sum = hsum(acc);
  for (; k < n; ++k) sum += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return sum;
}

double interference_sum(const Complex* a, const Complex* b, Complex phase, std::size_t n) {
  const double* pa = raw(a);
  const double* pb = raw(b);
  const __m256d p_re = _mm256_set1_pd(phase.real());
  const __m256d p_im = _mm256_setr_pd(-phase.imag(), phase.imag(), -phase.imag(), phase.imag());
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * k);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * k);
    __m256d z = _mm256_fmadd_pd(p_re, va, vb);
    z = _mm256_fmadd_pd(p_im, _mm256_permute_pd(va, 0x5), z);
    acc = _mm256_fmadd_pd(z, z, acc);
  }
  double sum = hsum(acc);
  for (; k < n; ++k) {
    const double re = phase.real() * a[k].real() - phase.imag() * a[k].imag() + b[k].real();
    const double im = phase.real() * a[k].imag() + phase.imag() * a[k].real() + b[k].imag();
    sum += re * re + im * im;
  }
  return sum;
}

void fringe_eval(const double* c, const double* s, Complex overlap, double* out, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d re = _mm256_set1_pd(0.5 * overlap.real());
  const __m256d im = _mm256_set1_pd(0.5 * overlap.imag());
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d v = _mm256_fmadd_pd(re, _mm256_loadu_pd(c + k), half);
    v = _mm256_fmadd_pd(im, _mm256_loadu_pd(s + k), v);
    _mm256_storeu_pd(out + k, v);
  }
  for (; k < n; ++k) out[k] = 0.5 * (1.0 + overlap.real() * c[k] + overlap.imag() * s[k]);
}

void diag_sandwich(const Complex* u, const Complex* alpha, const Complex* v, Complex* out,
                   std::size_t d) {
  const double* pu = raw(u);
  const double* pa = raw(alpha);
  double* po = raw(out);
  for (std::size_t col = 0; col < d; ++col) {
    const __m256d vc = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(v + col));
    std::size_t row = 0;
    for (; row + 2 <= d; row += 2) {
      const __m256d vu = _mm256_loadu_pd(pu + 2 * row);
      const __m256d va = _mm256_loadu_pd(pa + 2 * (col * d + row));
      _mm256_storeu_pd(po + 2 * (col * d + row), cmul(cmul(vu, va), vc));
    }
    for (; row < d; ++row) {
      const Complex x = u[row];
      const Complex y = alpha[col * d + row];
      const Complex xy{x.real() * y.real() - x.imag() * y.imag(),
                       x.real() * y.imag() + x.imag() * y.real()};
      const Complex w = v[col];
      out[col * d + row] = {xy.real() * w.real() - xy.imag() * w.imag(),
                            xy.real() * w.imag() + xy.imag() * w.real()};
    }
  }
}

}  // namespace topophase::kernels::detail::avx2
