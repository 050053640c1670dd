#pragma once

#include <span>
#include <vector>

#include "freespec/linalg.hpp"
#include "freespec/matrix.hpp"

namespace freespec {

/// A g-tuple of n x n matrices, i.e. a point at level n.
class MatrixTuple {
 public:
  explicit MatrixTuple(std::vector<Matrix> mats);

  static MatrixTuple zeros(std::size_t g, std::size_t n);

  std::size_t g() const noexcept { return mats_.size(); }
  std::size_t n() const noexcept { return mats_.front().rows(); }
  const Matrix& operator[](std::size_t j) const { return mats_[j]; }
  const std::vector<Matrix>& mats() const noexcept { return mats_; }

 private:
  std::vector<Matrix> mats_;
};

/// (X_1 ⊕ Y_1, ..., X_g ⊕ Y_g)
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);
/// (U* X_1 U, ..., U* X_g U)
MatrixTuple conjugate(const MatrixTuple& x, const Matrix& u);
/// (gamma_1 X_1, ..., gamma_g X_g)
MatrixTuple torus_action(std::span<const Complex> gamma, const MatrixTuple& x);
MatrixTuple scaled(const MatrixTuple& x, double s);

/// Defining tuple A = (A_1, ..., A_g) of d x d matrices for the monic pencil
/// L_A(x) = I - sum A_j x_j - sum A_j* x_j*.
class Pencil {
 public:
  explicit Pencil(std::vector<Matrix> coefficients);

  std::size_t d() const noexcept { return a_.front().rows(); }
  std::size_t g() const noexcept { return a_.size(); }
  const Matrix& coefficient(std::size_t s) const { return a_[s]; }
  const std::vector<Matrix>& coefficients() const noexcept { return a_; }

 private:
  std::vector<Matrix> a_;
};

enum class Region { Interior, Boundary, Outside };

struct MembershipVerdict {
  Region region;
  double margin;  // min eigenvalue of the tested operator (or 1 - its top eigenvalue)
  double tol;
};

/// Interior iff margin > tol, Boundary iff |margin| <= tol, else Outside.
MembershipVerdict classify_margin(double margin, double tol);

/// sum_j kron(A_j, X_j), a dn x dn matrix.
Matrix eval_lambda(const Pencil& p, const MatrixTuple& x);
/// I - Lambda - Lambda*.
Matrix eval_pencil(const Pencil& p, const MatrixTuple& x);
MembershipVerdict membership(const Pencil& p, const MatrixTuple& x, double tol = kDefaultTol);

/// Block pencil A_j = [[0, E_j], [0, 0]] for a tuple of k x l matrices.
Pencil spectraball_pencil(std::span<const Matrix> e);
/// Compares ||sum_j kron(E_j, X_j)|| against 1; margin = 1 - norm.
MembershipVerdict spectraball_membership(std::span<const Matrix> e, const MatrixTuple& x,
                                         double tol = kDefaultTol);

/// The pair (C1, C2), C1 k x m and C2 m x n, both of operator norm one.
class ETuple {
 public:
  ETuple(Matrix c1, Matrix c2, double tol = kDefaultTol);

  const Matrix& c1() const noexcept { return c1_; }
  const Matrix& c2() const noexcept { return c2_; }
  std::size_t k() const noexcept { return c1_.rows(); }
  std::size_t m() const noexcept { return c1_.cols(); }
  std::size_t n() const noexcept { return c2_.cols(); }
  std::size_t d() const noexcept { return k() + m() + n(); }

  /// C1* C1 (m x m)
  Matrix c1_gram() const;
  /// C2 C2* (m x m)
  Matrix c2_cogram() const;

 private:
  Matrix c1_;
  Matrix c2_;
};

/// m / ||m||; throws InvalidArgument for the zero matrix.
Matrix normalized(const Matrix& m);

struct EPencil {
  ETuple e;
  Pencil pencil;
};

/// d x d block pencil with C1 in block (1,2) of the first coefficient and C2
/// in block (2,3) of the second, d = k + m + n. Throws NormNotOne.
EPencil build_e_pencil(const Matrix& c1, const Matrix& c2, double tol = kDefaultTol);

/// S = kron(X1* X1, C1* C1) + kron(X2 X2*, C2 C2*); margin = 1 - lambda_max(S).
Matrix e_operator(const ETuple& e, const Matrix& x1, const Matrix& x2);
MembershipVerdict e_membership(const ETuple& e, const Matrix& x1, const Matrix& x2,
                               double tol = kDefaultTol);

/// lambda_max(C1* C1 + C2 C2*)
double e_gram_sum_max_eig(const ETuple& e);
/// C1* C1 + C2 C2* <= I, within tol.
bool is_free_bidisk(const ETuple& e, double tol = kDefaultTol);
/// C1* C1 + C2 C2* is not strictly below I (lambda_max >= 1 - tol). Holds
/// for every valid ETuple; exposed alongside is_free_bidisk because the two
/// predicates differ.
bool gram_sum_not_strictly_below_identity(const ETuple& e, double tol = kDefaultTol);

}  // namespace freespec
