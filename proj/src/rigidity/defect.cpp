#include <algorithm>
#include <cmath>

#include "freespec/rigidity.hpp"

namespace freespec::rigidity {

AutoCandidate AutoCandidate::forced(std::array<Complex, 2> b, std::array<double, 2> theta,
                                    CaseKind kind) {
  AutoCandidate c;
  c.b = b;
  c.theta = theta;
  const Complex e1 = forced_e(b[0], theta[0]);
  const Complex e2 = forced_e(b[1], theta[1]);
  if (kind == CaseKind::Diagonal) {
    c.l = Matrix::from_rows({{e1, 0}, {0, e2}});
  } else {
    c.l = Matrix::from_rows({{0, e1}, {e2, 0}});
  }
  return c;
}

std::array<WordPoly, 2> forced_coefficients(const AutoCandidate& cand, CaseKind kind) {
  std::array<WordPoly, 2> phi;
  for (int j = 0; j < 2; ++j) {
    const Complex b = cand.b[static_cast<std::size_t>(j)];
    const double theta = cand.theta[static_cast<std::size_t>(j)];
    const int letter = (kind == CaseKind::Diagonal) ? j + 1 : 2 - j;
    WordPoly& p = phi[static_cast<std::size_t>(j)];
    p.add({}, b);
    p.add({letter}, forced_e(b, theta));
    p.add({letter, letter}, forced_f(b, theta));
  }
  return phi;
}

CriticalLevel critical_level(const ETuple& e, double tol) {
  const HermitianEigen eg = herm_eigen(e.c1_gram() + e.c2_cogram());
  const double top = eg.values.back();
  if (top <= 1.0 + tol) {
    throw Error(ErrorCode::BidiskCase, "C1*C1 + C2C2* <= I; the domain is the free bidisk");
  }
  CriticalLevel out;
  out.lambda_max = top;
  out.t = 1.0 / std::sqrt(top);
  out.gamma = column_of(eg.vectors, eg.values.size() - 1);
  out.c1_gamma_norm = vector_norm(mat_vec(e.c1(), out.gamma));
  out.c2star_gamma_norm = vector_norm(mat_vec(e.c2().adjoint(), out.gamma));
  return out;
}

BoundaryDefect boundary_defect(const AutoCandidate& cand, const ETuple& e, CaseKind kind,
                               double tol) {
  const CriticalLevel cl = critical_level(e, tol);
  const double t = cl.t;
  const MatrixTuple tt = t_pair(1.0, t, t, 1.0);
  const auto phi = forced_coefficients(cand, kind);
  const Matrix r1 = nilpotent_eval(phi[0], tt, 3);
  const Matrix r2 = nilpotent_eval(phi[1], tt, 3);

  const bool diag = kind == CaseKind::Diagonal;
  const LowerBound n1 = lower_bound_subspace(cand.b[0], cand.theta[0], t,
                                             diag ? BoundVariant::XstarX : BoundVariant::YstarY);
  const LowerBound m2 = lower_bound_subspace(cand.b[1], cand.theta[1], t,
                                             diag ? BoundVariant::YYstar : BoundVariant::XXstar);

  Matrix constraints(2, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    constraints(0, i) = std::conj(n1.c[i] / vector_norm(n1.c));
    constraints(1, i) = std::conj(m2.c[i] / vector_norm(m2.c));
  }
  const auto common = nullspace(constraints, 1e-10);
  if (common.empty()) throw Error(ErrorCode::DegenerateIntersection, "subspaces meet only in 0");

  const double w1 = cl.c1_gamma_norm * cl.c1_gamma_norm;
  const double w2 = cl.c2star_gamma_norm * cl.c2star_gamma_norm;
  const Matrix r2s = r2.adjoint();
  std::vector<Complex> g = common.front();
  if (common.size() > 1) {
    Matrix basis(3, common.size());
    for (std::size_t k = 0; k < common.size(); ++k) {
      for (std::size_t i = 0; i < 3; ++i) basis(i, k) = common[k][i];
    }
    Matrix q = w1 * (r1.adjoint() * r1);
    q += w2 * (r2 * r2s);
    const HermitianEigen eg = herm_eigen(basis.adjoint() * q * basis);
    g = mat_vec(basis, column_of(eg.vectors, common.size() - 1));
  }
  const double a = vector_norm(mat_vec(r1, g));
  const double c = vector_norm(mat_vec(r2s, g));
  return BoundaryDefect{a * a * w1 + c * c * w2, t, r1, r2, g, common.size()};
}

double swap_case_refute(const ETuple& e) {
  const Matrix t1 = Matrix::unit(3, 3, 1, 2);
  const Matrix t2 = Matrix::unit(3, 3, 0, 1);
  Matrix op = kron(t2.adjoint() * t2, e.c1_gram());
  op += kron(t1 * t1.adjoint(), e.c2_cogram());
  return max_eig(op);
}

LinearCaseTable linear_case_table(const AutoCandidate& cand, double tol) {
  const Matrix& l = cand.l;
  const Complex det = l(0, 0) * l(1, 1) - l(0, 1) * l(1, 0);
  if (std::abs(det) <= tol) throw Error(ErrorCode::SingularL, "L is singular");
  auto small = [tol](Complex z) { return std::abs(z) <= tol; };

  LinearCaseTable out;
  if (small(l(0, 1)) && small(l(1, 0)) && !small(l(0, 0)) && !small(l(1, 1))) {
    out.kind = LinearCase::Diagonal;
  } else if (!small(l(0, 1)) && !small(l(1, 0)) && small(l(0, 0)) && small(l(1, 1))) {
    out.kind = LinearCase::Swap;
  } else {
    out.kind = LinearCase::Inconsistent;
    return out;
  }
  const bool diag = out.kind == LinearCase::Diagonal;
  const std::array<Complex, 2> lj{diag ? l(0, 0) : l(0, 1), diag ? l(1, 1) : l(1, 0)};
  out.norms_one = true;
  for (std::size_t j = 0; j < 2; ++j) {
    out.norms[j] = operator_norm(Matrix::from_rows({{cand.b[j], lj[j]}, {0, cand.b[j]}}));
    out.norms_one = out.norms_one && std::abs(out.norms[j] - 1.0) <= 1e-9;
  }
  return out;
}

}  // namespace freespec::rigidity
