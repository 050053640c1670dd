#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "freespec/rigidity.hpp"

namespace freespec::rigidity {

std::vector<double> default_b_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

namespace {

DefectRow defect_row(const ETuple& e, CaseKind kind, std::array<Complex, 2> b,
                     std::array<double, 2> theta, double tol) {
  DefectRow row{kind, b, theta, std::numeric_limits<double>::quiet_NaN(), 0, false};
  try {
    const auto d = boundary_defect(AutoCandidate::forced(b, theta, kind), e, kind, tol);
    row.value = d.value;
    row.intersection_dim = d.intersection_dim;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::DegenerateIntersection) throw;
    return row;
  }
  // At b = 0 the diagonal candidate is -(e^{i theta_1} x_1, e^{i theta_2} x_2),
  // which keeps T(1, t, t, 1) on the boundary. The swapped candidate at b = 0
  // exchanges the variables and still lands outside.
  const bool at_origin = b[0] == Complex(0.0) && b[1] == Complex(0.0);
  if (at_origin && kind == CaseKind::Diagonal) {
    row.ok = std::abs(row.value - 1.0) <= 1e-8;
  } else {
    row.ok = row.value > 1.0 + 1e-6;
  }
  return row;
}

}  // namespace

RigidityReport rigidity_report(const ETuple& e, const RigidityOptions& opts) {
  RigidityReport r;
  r.gram_sum_max_eig = e_gram_sum_max_eig(e);
  r.swap_violation = swap_case_refute(e);
  if (is_free_bidisk(e, opts.tol)) {
    r.kind = RigidityCase::Bidisk;
    r.consistent = std::abs(r.swap_violation - 1.0) <= 1e-8;
    r.conclusion = "C1*C1 + C2C2* <= I: the domain is the free bidisk and the rigidity "
                   "argument does not apply";
    return r;
  }
  r.kind = RigidityCase::Rigid;
  r.critical = critical_level(e, opts.tol);

  for (CaseKind kind : {CaseKind::Diagonal, CaseKind::Swap}) {
    for (double b1 : opts.b_grid) {
      for (double b2 : opts.b_grid) {
        for (double th1 : opts.theta_grid) {
          for (double th2 : opts.theta_grid) {
            r.defects.push_back(defect_row(e, kind, {b1, b2}, {th1, th2}, opts.tol));
          }
        }
      }
    }
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> radius(0.0, 0.95);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (CaseKind kind : {CaseKind::Diagonal, CaseKind::Swap}) {
    for (std::size_t i = 0; i < opts.extra_samples; ++i) {
      const Complex b1 = std::polar(radius(rng), angle(rng));
      const Complex b2 = std::polar(radius(rng), angle(rng));
      const double th1 = angle(rng);
      const double th2 = angle(rng);
      r.defects.push_back(defect_row(e, kind, {b1, b2}, {th1, th2}, opts.tol));
    }
  }
  for (const DefectRow& row : r.defects) r.failed_rows += row.ok ? 0 : 1;

  r.consistent = r.failed_rows == 0 && r.critical->t < 1.0 && r.swap_violation > 1.0 + 1e-6;
  if (r.consistent) {
    r.conclusion = "every sampled b != 0 pushes a boundary point outside the closure and the "
                   "swap case violates the bound; only maps gamma . x survive";
  } else {
    r.conclusion = std::to_string(r.failed_rows) +
                   " defect rows did not behave as required; see the table";
  }
  return r;
}

}  // namespace freespec::rigidity
