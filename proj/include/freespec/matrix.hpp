#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace freespec {

using Complex = std::complex<double>;

/// Dense row-major complex matrix with strictly positive dimensions.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  /// Column vector (n x 1).
  static Matrix column(std::span<const Complex> values);
  static Matrix diagonal(std::span<const Complex> values);
  /// Matrix unit with a single 1 at (i, j).
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// Largest entry modulus.
  double max_abs() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Block diagonal a ⊕ b.
Matrix direct_sum(const Matrix& a, const Matrix& b);

}  // namespace freespec
