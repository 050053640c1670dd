#include <algorithm>

#include "freespec/reinhardt.hpp"

namespace freespec::reinhardt {

double symmetry_residual(const Pencil& p, const Matrix& u, const std::vector<Complex>& gamma) {
  if (gamma.size() != p.g()) {
    throw Error(ErrorCode::DimensionMismatch, "gamma has the wrong number of entries");
  }
  if (u.rows() != p.d() || u.cols() != p.d()) {
    throw Error(ErrorCode::DimensionMismatch, "U must be d x d");
  }
  const Matrix ustar = u.adjoint();
  double worst = 0.0;
  for (std::size_t s = 0; s < p.g(); ++s) {
    Matrix diff = u * p.coefficient(s) * ustar;
    diff -= gamma[s] * p.coefficient(s);
    worst = std::max(worst, diff.frobenius_norm());
  }
  return worst;
}

std::variant<ReinhardtCertificate, StructureReport> certify_reinhardt(
    const Pencil& p, const BlockDecomposition& blocks, const graph::TorusPoint& gamma,
    std::optional<double> zero_tol) {
  if (gamma.angles.size() != p.g()) {
    throw Error(ErrorCode::DimensionMismatch, "gamma has " +
                                                  std::to_string(gamma.angles.size()) +
                                                  " angles, pencil has g = " +
                                                  std::to_string(p.g()));
  }
  Extraction ex = extract_graph(p, blocks, zero_tol);
  auto decision = graph::is_reinhardt_partition(ex.graph);
  if (!decision.yes) return structure_report(ex.graph);

  const auto phases = graph::phase_assignment(*decision.potential, gamma);
  const auto off = blocks.offsets();
  Matrix u(p.d(), p.d());
  for (std::size_t b = 0; b < blocks.sizes.size(); ++b) {
    for (std::size_t i = 0; i < blocks.sizes[b]; ++i) u(off[b] + i, off[b] + i) = phases.delta[b];
  }
  double scale = 0.0;
  for (const Matrix& a : p.coefficients()) scale = std::max(scale, a.frobenius_norm());

  ReinhardtCertificate cert{gamma,
                            std::move(*decision.potential),
                            std::move(decision.order),
                            phases.delta,
                            u,
                            symmetry_residual(p, u, gamma.gammas()),
                            1e-10 * (1.0 + scale)};
  return cert;
}

}  // namespace freespec::reinhardt
