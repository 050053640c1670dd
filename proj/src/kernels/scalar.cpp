#include "freespec/kernels/kernels.hpp"

namespace freespec::kernels::scalar {

// Products are spelled out instead of using operator* on std::complex so
// that no NaN/Inf recovery branches are taken and the arithmetic matches the
// vector variants operation for operation (up to FMA contraction).

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
  }
}

void rot(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    const double nxr = (a.real() * xr - a.imag() * xi) + (b.real() * yr - b.imag() * yi);
    const double nxi = (a.real() * xi + a.imag() * xr) + (b.real() * yi + b.imag() * yr);
    const double nyr = (c.real() * xr - c.imag() * xi) + (d.real() * yr - d.imag() * yi);
    const double nyi = (c.real() * xi + c.imag() * xr) + (d.real() * yi + d.imag() * yr);
    x[i] = {nxr, nxi};
    y[i] = {nyr, nyi};
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void scale(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {ar * xr - ai * xi, ar * xi + ai * xr};
  }
}

}  // namespace freespec::kernels::scalar
