#pragma once

#include <vector>

#include "freespec/matrix.hpp"

namespace freespec {

/// Relative tolerance used wherever a caller does not supply one.
inline constexpr double kDefaultTol = 1e-9;

/// Kronecker product: entry (i*rB + k, j*cB + l) = a(i,j) * b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

/// Frobenius-norm test ||m - m*|| <= tol * (1 + ||m||).
bool is_hermitian(const Matrix& m, double tol = kDefaultTol);
Matrix hermitian_part(const Matrix& m);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

/// Eigen-decomposition of (m + m*)/2 by cyclic complex Jacobi rotations.
/// Throws NotHermitian when m is not Hermitian within tol.
HermitianEigen herm_eigen(const Matrix& m, double tol = kDefaultTol);
std::vector<double> herm_eigs(const Matrix& m, double tol = kDefaultTol);

double max_eig(const Matrix& m, double tol = kDefaultTol);
double min_eig(const Matrix& m, double tol = kDefaultTol);

/// Largest singular value, as the square root of the top eigenvalue of m*m
/// (or m m*, whichever is smaller).
double operator_norm(const Matrix& m);

/// Singular values in descending order, square roots of herm_eigs(m*m).
std::vector<double> singular_values(const Matrix& m);

enum class Definiteness { PositiveDefinite, PositiveSemidefiniteSingular, Indefinite };

struct DefinitenessVerdict {
  Definiteness kind;
  double min_eig;
  double tol;
};

/// PD iff min_eig > tol, PSD-singular iff |min_eig| <= tol, else indefinite.
DefinitenessVerdict classify_definiteness(const Matrix& m, double tol = kDefaultTol);

/// Right singular vectors and singular values of an arbitrary matrix from
/// one-sided (Hestenes) Jacobi. Small singular values are resolved to
/// roughly machine precision relative to the largest one, which the
/// squared-Gram route cannot do.
struct JacobiSvd {
  std::vector<double> values;  // values[k] pairs with column k of v; unsorted
  Matrix v;
};
JacobiSvd jacobi_svd(const Matrix& m);

/// Orthonormal basis (as columns) for {x : m x = 0} using singular values
/// <= rel_tol * max(1, sigma_max). Returns an empty vector for a trivial
/// kernel.
std::vector<std::vector<Complex>> nullspace(const Matrix& m, double rel_tol);

/// True when m + shift*I admits a Cholesky factorization, i.e. m is
/// positive definite after the shift. m must be Hermitian.
bool cholesky_succeeds(const Matrix& m, double shift = 0.0);

/// Euclidean helpers on std::vector<Complex>.
double vector_norm(const std::vector<Complex>& v);
Complex inner(const std::vector<Complex>& x, const std::vector<Complex>& y);  // x* y
std::vector<Complex> mat_vec(const Matrix& m, const std::vector<Complex>& v);
std::vector<Complex> column_of(const Matrix& m, std::size_t j);

}  // namespace freespec
