#include "freespec/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define FREESPEC_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#else
#define FREESPEC_HAVE_AVX2_KERNELS 0
#endif

namespace freespec::kernels::avx2 {

#if FREESPEC_HAVE_AVX2_KERNELS

// std::complex<double> arrays are layout-compatible with double[2] per
// element, so two complex numbers fill one __m256d as [re0, im0, re1, im1].

#define FREESPEC_AVX2 __attribute__((target("avx2,fma")))

namespace {

// alpha * v for a broadcast complex alpha = (ar, ai).
FREESPEC_AVX2 inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

}  // namespace

bool available() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
}

FREESPEC_AVX2 void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul(ar, ai, xv)));
  }
  if (i < n) scalar::axpy(n - i, alpha, x + i, y + i);
}

FREESPEC_AVX2 void rot(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y) {
  double* xd = reinterpret_cast<double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
  const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
  const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d nx = _mm256_add_pd(cmul(ar, ai, xv), cmul(br, bi, yv));
    const __m256d ny = _mm256_add_pd(cmul(cr, ci, xv), cmul(dr, di, yv));
    _mm256_storeu_pd(xd + 2 * i, nx);
    _mm256_storeu_pd(yd + 2 * i, ny);
  }
  if (i < n) scalar::rot(n - i, a, b, c, d, x + i, y + i);
}

FREESPEC_AVX2 cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  // same = [xr*yr, xi*yi, ...], cross = [xr*yi, xi*yr, ...]
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(c, cross);
  cplx acc{s[0] + s[1] + s[2] + s[3], (c[0] - c[1]) + (c[2] - c[3])};
  if (i < n) acc += scalar::dotc(n - i, x + i, y + i);
  return acc;
}

FREESPEC_AVX2 void scale(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(yd + 2 * i, cmul(ar, ai, _mm256_loadu_pd(xd + 2 * i)));
  }
  if (i < n) scalar::scale(n - i, alpha, x + i, y + i);
}

#undef FREESPEC_AVX2

#else  // no x86-64: the table falls back to scalar

bool available() { return false; }
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) { scalar::axpy(n, alpha, x, y); }
void rot(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y) {
  scalar::rot(n, a, b, c, d, x, y);
}
cplx dotc(std::size_t n, const cplx* x, const cplx* y) { return scalar::dotc(n, x, y); }
void scale(std::size_t n, cplx alpha, const cplx* x, cplx* y) { scalar::scale(n, alpha, x, y); }

#endif

}  // namespace freespec::kernels::avx2
