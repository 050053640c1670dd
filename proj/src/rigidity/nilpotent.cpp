#include <algorithm>
#include <cmath>

#include "freespec/rigidity.hpp"

namespace freespec::rigidity {

MembershipVerdict classify_tx(const ETuple& e, Complex t1, Complex t2, double tol) {
  const MatrixTuple x = tx(t1, t2);
  return e_membership(e, x[0], x[1], tol);
}

MembershipVerdict theta_membership(const ETuple& e, Complex lambda, Complex mu, double tol) {
  const double l2 = std::norm(lambda);
  const double m2 = std::norm(mu);
  Matrix s = l2 * e.c1_gram();
  s += m2 * e.c2_cogram();
  return classify_margin(1.0 - max_eig(s), tol);
}

MembershipVerdict classify_t(const ETuple& e, Complex kappa, Complex lambda, Complex mu,
                             Complex nu, double tol) {
  const MatrixTuple x = t_pair(kappa, lambda, mu, nu);
  return e_membership(e, x[0], x[1], tol);
}

MembershipVerdict classify_t_block_form(const ETuple& e, Complex kappa, Complex lambda,
                                        Complex mu, Complex nu, double tol) {
  const double top_c1 = max_eig(e.c1_gram());
  const double top_c2 = max_eig(e.c2_cogram());
  const double first = std::norm(nu) * top_c2;
  const double middle = 1.0 - theta_membership(e, lambda, mu, tol).margin;
  const double last = std::norm(kappa) * top_c1;
  return classify_margin(1.0 - std::max({first, middle, last}), tol);
}

}  // namespace freespec::rigidity
