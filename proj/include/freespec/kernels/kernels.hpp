#pragma once

// Complex vector kernels used by the dense linear algebra. Each kernel has a
// scalar reference implementation and an AVX2/FMA variant; the variant is
// selected once at first use from the CPU features, unless FREESPEC_SIMD=off
// forces the scalar path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace freespec::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

struct KernelTable {
  Backend backend;
  /// y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// (x, y) <- (a*x + b*y, c*x + d*y), elementwise.
  void (*rot)(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y);
  /// sum_i conj(x[i]) * y[i]
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  /// y[i] = alpha * x[i]
  void (*scale)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
};

namespace scalar {
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
void rot(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
void scale(std::size_t n, cplx alpha, const cplx* x, cplx* y);
}  // namespace scalar

namespace avx2 {
/// True when this build carries the AVX2 kernels and the CPU can run them.
bool available();
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
void rot(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
void scale(std::size_t n, cplx alpha, const cplx* x, cplx* y);
}  // namespace avx2

/// Table for a specific backend. Requesting Avx2 when it is unavailable
/// returns the scalar table.
const KernelTable& table_for(Backend b);

/// Process-wide table, resolved on first call and immutable afterwards.
const KernelTable& active();

}  // namespace freespec::kernels
