#include <cmath>
#include <sstream>

#include "freespec/error.hpp"
#include "freespec/pencil.hpp"

namespace freespec {

namespace {

void require_unit_norm(const Matrix& c, const char* name, double tol) {
  const double nrm = operator_norm(c);
  if (std::abs(nrm - 1.0) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << name << " has operator norm " << nrm << "; rescale so that the norm is 1";
    throw Error(ErrorCode::NormNotOne, os.str());
  }
}

}  // namespace

ETuple::ETuple(Matrix c1, Matrix c2, double tol) : c1_(std::move(c1)), c2_(std::move(c2)) {
  if (c1_.cols() != c2_.rows()) {
    std::ostringstream os;
    os << "C1 is " << c1_.rows() << "x" << c1_.cols() << " but C2 is " << c2_.rows() << "x"
       << c2_.cols() << "; inner dimensions must agree";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  require_unit_norm(c1_, "C1", tol);
  require_unit_norm(c2_, "C2", tol);
}

Matrix ETuple::c1_gram() const { return c1_.adjoint() * c1_; }
Matrix ETuple::c2_cogram() const { return c2_ * c2_.adjoint(); }

Matrix normalized(const Matrix& m) {
  const double nrm = operator_norm(m);
  if (nrm == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot normalize the zero matrix");
  return Complex(1.0 / nrm) * m;
}

EPencil build_e_pencil(const Matrix& c1, const Matrix& c2, double tol) {
  ETuple e(c1, c2, tol);
  const std::size_t k = e.k(), m = e.m(), d = e.d();
  Matrix e1(d, d), e2(d, d);
  e1.set_block(0, k, e.c1());
  e2.set_block(k, k + m, e.c2());
  return {std::move(e), Pencil({std::move(e1), std::move(e2)})};
}

Matrix e_operator(const ETuple& e, const Matrix& x1, const Matrix& x2) {
  if (!x1.is_square() || !x2.is_square() || x1.rows() != x2.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "X1 and X2 must be square of equal size");
  }
  Matrix s = kron(x1.adjoint() * x1, e.c1_gram());
  s += kron(x2 * x2.adjoint(), e.c2_cogram());
  return s;
}

MembershipVerdict e_membership(const ETuple& e, const Matrix& x1, const Matrix& x2, double tol) {
  return classify_margin(1.0 - max_eig(e_operator(e, x1, x2)), tol);
}

double e_gram_sum_max_eig(const ETuple& e) { return max_eig(e.c1_gram() + e.c2_cogram()); }

bool is_free_bidisk(const ETuple& e, double tol) { return e_gram_sum_max_eig(e) <= 1.0 + tol; }

bool gram_sum_not_strictly_below_identity(const ETuple& e, double tol) {
  return e_gram_sum_max_eig(e) >= 1.0 - tol;
}

}  // namespace freespec
