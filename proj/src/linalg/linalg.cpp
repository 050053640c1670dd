#include <algorithm>
#include <cmath>

#include "freespec/error.hpp"
#include "freespec/kernels/kernels.hpp"
#include "freespec/linalg.hpp"

namespace freespec {

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  const auto& k = kernels::active();
  Matrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t r = 0; r < rb; ++r) {
        k.scale(cb, aij, b.row(r).data(), out.row(i * rb + r).data() + j * cb);
      }
    }
  }
  return out;
}

std::vector<double> singular_values(const Matrix& m) {
  const Matrix gram = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
  std::vector<double> eig = herm_eigs(gram, 1e-6);
  std::vector<double> sv;
  sv.reserve(eig.size());
  for (auto it = eig.rbegin(); it != eig.rend(); ++it) sv.push_back(std::sqrt(std::max(0.0, *it)));
  return sv;
}

double operator_norm(const Matrix& m) { return singular_values(m).front(); }

DefinitenessVerdict classify_definiteness(const Matrix& m, double tol) {
  const double lo = min_eig(m, tol);
  Definiteness kind = Definiteness::PositiveSemidefiniteSingular;
  if (lo > tol) {
    kind = Definiteness::PositiveDefinite;
  } else if (lo < -tol) {
    kind = Definiteness::Indefinite;
  }
  return {kind, lo, tol};
}

double vector_norm(const std::vector<Complex>& v) {
  return std::sqrt(kernels::active().dotc(v.size(), v.data(), v.data()).real());
}

Complex inner(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "inner: length mismatch");
  return kernels::active().dotc(x.size(), x.data(), y.data());
}

std::vector<Complex> mat_vec(const Matrix& m, const std::vector<Complex>& v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "mat_vec: length mismatch");
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

std::vector<Complex> column_of(const Matrix& m, std::size_t j) {
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, j);
  return out;
}

}  // namespace freespec
