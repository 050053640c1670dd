#include <cmath>

#include "freespec/rigidity.hpp"

namespace freespec::rigidity {

namespace {

void require_disk(Complex b) {
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag()) || std::abs(b) >= 1.0) {
    throw Error(ErrorCode::NotInDisk, "|b| must be below 1");
  }
}

// sqrt(eigenvalue) times the eigenvector of the top eigenvalue of I - M.
std::vector<Complex> defect_vector(const Matrix& m) {
  const HermitianEigen eg = herm_eigen(Matrix::identity(m.rows()) - m);
  const double top = std::max(eg.values.back(), 0.0);
  std::vector<Complex> a = column_of(eg.vectors, m.rows() - 1);
  for (Complex& z : a) z *= std::sqrt(top);
  return a;
}

std::vector<Complex> scale_entries(const std::vector<Complex>& v, const std::array<double, 3>& s) {
  return {v[0] * s[0], v[1] * s[1], v[2] * s[2]};
}

}  // namespace

Complex forced_e(Complex b, double theta) {
  return std::polar(1.0, theta) * (std::norm(b) - 1.0);
}

Complex forced_f(Complex b, double theta) {
  return std::polar(1.0, theta) * std::conj(b) * forced_e(b, theta);
}

Caratheodory caratheodory_extend(Complex b, double theta) {
  require_disk(b);
  const Complex e = forced_e(b, theta);
  const Complex f = forced_f(b, theta);
  Matrix t = Matrix::from_rows({{b, e, f}, {0, b, e}, {0, 0, b}});
  const Matrix eye = Matrix::identity(3);
  const Matrix defect = eye - t.adjoint() * t;
  Caratheodory out{e, f, t, operator_norm(t), herm_eigs(defect),
                   herm_eigs(eye - t * t.adjoint()), defect.trace().real()};
  return out;
}

Matrix constraint_matrix(Complex b, double theta, Complex alpha, Complex beta,
                         ConstraintVariant variant) {
  const Complex e = forced_e(b, theta);
  if (variant == ConstraintVariant::TopRow) {
    return Matrix::from_rows({{b, alpha, beta}, {0, b, e}, {0, 0, b}});
  }
  return Matrix::from_rows({{b, e, beta}, {0, b, alpha}, {0, 0, b}});
}

ConstraintForce constraint_force(Complex b, double theta, Complex alpha,
                                 ConstraintVariant variant) {
  require_disk(b);
  const Complex beta = alpha * std::polar(1.0, theta) * std::conj(b);
  const double eps = 0.01 * (1.0 - std::norm(b));
  ConstraintForce out;
  out.beta = beta;
  out.norm = operator_norm(constraint_matrix(b, theta, alpha, beta, variant));
  out.perturbed_norm = operator_norm(constraint_matrix(b, theta, alpha, beta + eps, variant));
  out.feasible = std::abs(alpha) <= 1.0 - std::norm(b) + 1e-12;
  out.norm_one = std::abs(out.norm - 1.0) <= 1e-9;
  out.perturbation_breaks = out.perturbed_norm > 1.0 + 1e-12;
  return out;
}

Matrix lower_bound_x(Complex b, double theta, double lam) {
  const Complex e = forced_e(b, theta);
  const Complex f = forced_f(b, theta);
  return Matrix::from_rows({{b, lam * e, lam * f}, {0, b, e}, {0, 0, b}});
}

Matrix lower_bound_y(Complex b, double theta, double lam) {
  const Complex e = forced_e(b, theta);
  const Complex f = forced_f(b, theta);
  return Matrix::from_rows({{b, e, lam * f}, {0, b, lam * e}, {0, 0, b}});
}

LowerBound lower_bound_subspace(Complex b, double theta, double lam, BoundVariant variant) {
  require_disk(b);
  if (!(lam > 0.0 && lam < 1.0)) throw Error(ErrorCode::BadLambda, "lambda must lie in (0, 1)");

  // X = D_x A D_x^{-1} with D_x = diag(lam, 1, 1) and Y = D_y A D_y^{-1}
  // with D_y = diag(1, 1, 1/lam), A the extension of b.
  const Matrix a = caratheodory_extend(b, theta).t;
  const std::array<double, 3> dx{lam, 1.0, 1.0};
  const std::array<double, 3> dx_inv{1.0 / lam, 1.0, 1.0};
  const std::array<double, 3> dy{1.0, 1.0, 1.0 / lam};
  const std::array<double, 3> dy_inv{1.0, 1.0, lam};

  LowerBound out;
  switch (variant) {
    case BoundVariant::XstarX: {
      const Matrix x = lower_bound_x(b, theta, lam);
      out.operator_p = x.adjoint() * x;
      out.c = scale_entries(defect_vector(a.adjoint() * a), dx_inv);
      break;
    }
    case BoundVariant::XXstar: {
      const Matrix x = lower_bound_x(b, theta, lam);
      out.operator_p = x * x.adjoint();
      out.c = scale_entries(defect_vector(a * a.adjoint()), dx);
      break;
    }
    case BoundVariant::YstarY: {
      const Matrix y = lower_bound_y(b, theta, lam);
      out.operator_p = y.adjoint() * y;
      out.c = scale_entries(defect_vector(a.adjoint() * a), dy_inv);
      break;
    }
    case BoundVariant::YYstar: {
      const Matrix y = lower_bound_y(b, theta, lam);
      out.operator_p = y * y.adjoint();
      out.c = scale_entries(defect_vector(a * a.adjoint()), dy);
      break;
    }
  }

  Matrix row(1, 3);
  for (std::size_t i = 0; i < 3; ++i) row(0, i) = std::conj(out.c[i]);
  const auto perp = nullspace(row, 1e-12);
  if (perp.size() != 2) {
    throw Error(ErrorCode::DegenerateIntersection, "defect direction vanished");
  }
  out.basis = {perp[0], perp[1]};
  Matrix basis(3, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < 3; ++i) basis(i, k) = perp[k][i];
  }
  out.min_compressed_eig = min_eig(basis.adjoint() * out.operator_p * basis);
  return out;
}

}  // namespace freespec::rigidity
