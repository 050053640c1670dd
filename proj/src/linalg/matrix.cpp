#include "freespec/matrix.hpp"

#include <cmath>
#include <sstream>

#include "freespec/error.hpp"
#include "freespec/kernels/kernels.hpp"

namespace freespec {

namespace {

void require_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
       << b.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  require_shape(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require_shape(rows, cols);
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(entries));
}

Matrix Matrix::column(std::span<const Complex> values) {
  return Matrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

Matrix Matrix::diagonal(std::span<const Complex> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  Matrix m(rows, cols);
  m(i, j) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(std::abs(kernels::active().dotc(data_.size(), data_.data(), data_.data())));
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "block out of range");
  }
  Matrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "block out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "add");
  kernels::active().axpy(data_.size(), 1.0, o.data_.data(), data_.data());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "subtract");
  kernels::active().axpy(data_.size(), -1.0, o.data_.data(), data_.data());
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  kernels::active().scale(data_.size(), s, data_.data(), data_.data());
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "multiply: " << a.rows() << "x" << a.cols() << " by " << b.rows() << "x" << b.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* ci = c.row(i).data();
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex alpha = a(i, l);
      if (alpha == Complex{}) continue;
      k.axpy(b.cols(), alpha, b.row(l).data(), ci);
    }
  }
  return c;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

}  // namespace freespec
