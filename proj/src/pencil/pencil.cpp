#include <cmath>
#include <sstream>

#include "freespec/error.hpp"
#include "freespec/pencil.hpp"

namespace freespec {

Pencil::Pencil(std::vector<Matrix> coefficients) : a_(std::move(coefficients)) {
  if (a_.empty()) throw Error(ErrorCode::InvalidArgument, "pencil needs at least one coefficient");
  const std::size_t d = a_.front().rows();
  for (std::size_t s = 0; s < a_.size(); ++s) {
    if (!a_[s].is_square() || a_[s].rows() != d) {
      std::ostringstream os;
      os << "pencil coefficient " << s << " is " << a_[s].rows() << "x" << a_[s].cols()
         << ", expected " << d << "x" << d;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
  }
}

MembershipVerdict classify_margin(double margin, double tol) {
  Region region = Region::Boundary;
  if (margin > tol) {
    region = Region::Interior;
  } else if (margin < -tol) {
    region = Region::Outside;
  }
  return {region, margin, tol};
}

Matrix eval_lambda(const Pencil& p, const MatrixTuple& x) {
  if (p.g() != x.g()) {
    std::ostringstream os;
    os << "pencil has g=" << p.g() << " but tuple has g=" << x.g();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  Matrix out(p.d() * x.n(), p.d() * x.n());
  for (std::size_t s = 0; s < p.g(); ++s) out += kron(p.coefficient(s), x[s]);
  return out;
}

Matrix eval_pencil(const Pencil& p, const MatrixTuple& x) {
  const Matrix lambda = eval_lambda(p, x);
  Matrix out = Matrix::identity(lambda.rows());
  out -= lambda;
  out -= lambda.adjoint();
  return out;
}

MembershipVerdict membership(const Pencil& p, const MatrixTuple& x, double tol) {
  return classify_margin(min_eig(eval_pencil(p, x)), tol);
}

Pencil spectraball_pencil(std::span<const Matrix> e) {
  if (e.empty()) throw Error(ErrorCode::InvalidArgument, "spectraball needs at least one matrix");
  const std::size_t k = e.front().rows(), l = e.front().cols();
  std::vector<Matrix> a;
  a.reserve(e.size());
  for (const Matrix& ej : e) {
    if (ej.rows() != k || ej.cols() != l) {
      throw Error(ErrorCode::DimensionMismatch, "spectraball matrices must share a shape");
    }
    Matrix aj(k + l, k + l);
    aj.set_block(0, k, ej);
    a.push_back(std::move(aj));
  }
  return Pencil(std::move(a));
}

MembershipVerdict spectraball_membership(std::span<const Matrix> e, const MatrixTuple& x,
                                         double tol) {
  if (e.size() != x.g()) throw Error(ErrorCode::DimensionMismatch, "spectraball g mismatch");
  const std::size_t k = e.front().rows(), l = e.front().cols();
  Matrix lambda(k * x.n(), l * x.n());
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j].rows() != k || e[j].cols() != l) {
      throw Error(ErrorCode::DimensionMismatch, "spectraball matrices must share a shape");
    }
    lambda += kron(e[j], x[j]);
  }
  return classify_margin(1.0 - operator_norm(lambda), tol);
}

}  // namespace freespec
