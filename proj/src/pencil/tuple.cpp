#include <sstream>

#include "freespec/error.hpp"
#include "freespec/pencil.hpp"

namespace freespec {

MatrixTuple::MatrixTuple(std::vector<Matrix> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) throw Error(ErrorCode::InvalidArgument, "tuple needs at least one matrix");
  const std::size_t n = mats_.front().rows();
  for (std::size_t j = 0; j < mats_.size(); ++j) {
    if (!mats_[j].is_square() || mats_[j].rows() != n) {
      std::ostringstream os;
      os << "tuple entry " << j << " is " << mats_[j].rows() << "x" << mats_[j].cols()
         << ", expected " << n << "x" << n;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
  }
}

MatrixTuple MatrixTuple::zeros(std::size_t g, std::size_t n) {
  return MatrixTuple(std::vector<Matrix>(g, Matrix(n, n)));
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.g() != y.g()) throw Error(ErrorCode::DimensionMismatch, "direct sum of tuples of unequal g");
  std::vector<Matrix> out;
  out.reserve(x.g());
  for (std::size_t j = 0; j < x.g(); ++j) out.push_back(direct_sum(x[j], y[j]));
  return MatrixTuple(std::move(out));
}

MatrixTuple conjugate(const MatrixTuple& x, const Matrix& u) {
  const Matrix ua = u.adjoint();
  std::vector<Matrix> out;
  out.reserve(x.g());
  for (const Matrix& m : x.mats()) out.push_back(ua * m * u);
  return MatrixTuple(std::move(out));
}

MatrixTuple torus_action(std::span<const Complex> gamma, const MatrixTuple& x) {
  if (gamma.size() != x.g()) throw Error(ErrorCode::DimensionMismatch, "torus point has wrong length");
  std::vector<Matrix> out;
  out.reserve(x.g());
  for (std::size_t j = 0; j < x.g(); ++j) out.push_back(gamma[j] * x[j]);
  return MatrixTuple(std::move(out));
}

MatrixTuple scaled(const MatrixTuple& x, double s) {
  std::vector<Matrix> out;
  out.reserve(x.g());
  for (const Matrix& m : x.mats()) out.push_back(Complex(s) * m);
  return MatrixTuple(std::move(out));
}

}  // namespace freespec
