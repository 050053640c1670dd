#include <algorithm>
#include <cmath>
#include <numeric>

#include "freespec/error.hpp"
#include "freespec/kernels/kernels.hpp"
#include "freespec/linalg.hpp"

namespace freespec {

namespace {

constexpr int kMaxSweeps = 80;

struct Rotation {
  double c;
  double s;
  Complex phase;  // e^{-i phi} where a_pq = |a_pq| e^{i phi}
  double a_new;
  double b_new;
};

// Unitary G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] annihilating the
// off-diagonal entry of [[a, apq], [conj(apq), b]].
Rotation make_rotation(double a, double b, Complex apq) {
  const double r = std::abs(apq);
  const Complex phase = std::conj(apq) / r;
  const double tau = (b - a) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {c, s, phase, a - t * r, b + t * r};
}

// In-place Jacobi on a Hermitian n x n working matrix `a`; when `vt` is
// non-null its rows accumulate the eigenvectors.
void jacobi_sweeps(Matrix& a, Matrix* vt) {
  const std::size_t n = a.rows();
  const auto& k = kernels::active();
  const double scale = a.frobenius_norm();
  if (scale == 0.0 || n == 1) return;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const Rotation g = make_rotation(a(p, p).real(), a(q, q).real(), apq);
        const Complex minus_s_phase = -g.s * g.phase;
        const Complex c_phase = g.c * g.phase;
        // rows of G* A
        k.rot(n, g.c, -g.s * std::conj(g.phase), g.s, g.c * std::conj(g.phase),
              a.row(p).data(), a.row(q).data());
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          a(r, p) = std::conj(a(p, r));
          a(r, q) = std::conj(a(q, r));
        }
        a(p, p) = g.a_new;
        a(q, q) = g.b_new;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (vt != nullptr) {
          k.rot(n, g.c, minus_s_phase, g.s, c_phase, vt->row(p).data(), vt->row(q).data());
        }
      }
    }
  }
}

void require_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) throw Error(ErrorCode::NotHermitian, "matrix is not square");
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  }
}

}  // namespace

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  return (m - m.adjoint()).frobenius_norm() <= tol * (1.0 + m.frobenius_norm());
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianEigen herm_eigen(const Matrix& m, double tol) {
  require_hermitian(m, tol);
  const std::size_t n = m.rows();
  Matrix a = hermitian_part(m);
  Matrix vt = Matrix::identity(n);
  jacobi_sweeps(a, &vt);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermitianEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t col = 0; col < n; ++col) {
    out.values[col] = a(order[col], order[col]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, col) = vt(order[col], r);
  }
  return out;
}

std::vector<double> herm_eigs(const Matrix& m, double tol) {
  require_hermitian(m, tol);
  Matrix a = hermitian_part(m);
  jacobi_sweeps(a, nullptr);
  std::vector<double> values(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

double max_eig(const Matrix& m, double tol) { return herm_eigs(m, tol).back(); }
double min_eig(const Matrix& m, double tol) { return herm_eigs(m, tol).front(); }

JacobiSvd jacobi_svd(const Matrix& m) {
  const std::size_t n = m.cols();
  const auto& k = kernels::active();
  Matrix w = m.transpose();  // row j holds column j of m
  Matrix vt = Matrix::identity(n);
  const std::size_t len = m.rows();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = k.dotc(len, w.row(p).data(), w.row(p).data()).real();
        const double beta = k.dotc(len, w.row(q).data(), w.row(q).data()).real();
        const Complex gamma = k.dotc(len, w.row(p).data(), w.row(q).data());
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || std::abs(gamma) <= 1e-300) {
          continue;
        }
        rotated = true;
        const Rotation g = make_rotation(alpha, beta, gamma);
        const Complex b = -g.s * g.phase;
        const Complex d = g.c * g.phase;
        k.rot(len, g.c, b, g.s, d, w.row(p).data(), w.row(q).data());
        k.rot(n, g.c, b, g.s, d, vt.row(p).data(), vt.row(q).data());
      }
    }
    if (!rotated) break;
  }
  JacobiSvd out{std::vector<double>(n), vt.transpose()};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = std::sqrt(k.dotc(len, w.row(j).data(), w.row(j).data()).real());
  }
  return out;
}

std::vector<std::vector<Complex>> nullspace(const Matrix& m, double rel_tol) {
  const JacobiSvd svd = jacobi_svd(m);
  const double top = *std::max_element(svd.values.begin(), svd.values.end());
  const double cut = rel_tol * std::max(1.0, top);
  std::vector<std::vector<Complex>> basis;
  for (std::size_t j = 0; j < svd.values.size(); ++j) {
    if (svd.values[j] <= cut) basis.push_back(column_of(svd.v, j));
  }
  return basis;
}

bool cholesky_succeeds(const Matrix& m, double shift) {
  const std::size_t n = m.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j).real() + shift;
    for (std::size_t p = 0; p < j; ++p) diag -= std::norm(l(j, p));
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = m(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * std::conj(l(j, p));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

}  // namespace freespec
