#include <map>
#include <numeric>
#include <string>

#include "freespec/reinhardt.hpp"

namespace freespec::reinhardt {

namespace {

std::string block_text(const BlockRef& b) {
  return "A_" + std::to_string(b.label) + "(" + std::to_string(b.row) + "," +
         std::to_string(b.col) + ")";
}

}  // namespace

std::size_t BlockDecomposition::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

std::vector<std::size_t> BlockDecomposition::offsets() const {
  std::vector<std::size_t> out(sizes.size());
  std::exclusive_scan(sizes.begin(), sizes.end(), out.begin(), std::size_t{0});
  return out;
}

void validate_blocks(const BlockDecomposition& blocks, std::size_t d) {
  if (blocks.sizes.empty()) throw Error(ErrorCode::DimensionMismatch, "no blocks given");
  for (std::size_t s : blocks.sizes) {
    if (s == 0) throw Error(ErrorCode::DimensionMismatch, "block sizes must be positive");
  }
  if (blocks.total() != d) {
    throw Error(ErrorCode::DimensionMismatch, "block sizes sum to " +
                                                  std::to_string(blocks.total()) +
                                                  ", pencil has d = " + std::to_string(d));
  }
}

Extraction extract_graph(const Pencil& p, const BlockDecomposition& blocks,
                         std::optional<double> zero_tol) {
  validate_blocks(blocks, p.d());
  if (zero_tol && !(*zero_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "zero_tol must be nonnegative");
  }
  const std::size_t m = blocks.sizes.size();
  const auto off = blocks.offsets();

  std::vector<double> thresholds;
  std::vector<BlockRef> borderline;
  std::map<std::pair<std::size_t, std::size_t>, BlockRef> owner;
  std::vector<graph::Edge> edges;

  for (std::size_t s = 0; s < p.g(); ++s) {
    const Matrix& a = p.coefficient(s);
    const int label = static_cast<int>(s + 1);
    const double tol = zero_tol.value_or(1e-12 * (1.0 + a.frobenius_norm()));
    thresholds.push_back(tol);
    if (a.frobenius_norm() <= tol) {
      throw StructureError(ErrorCode::ZeroCoefficient,
                           "coefficient A_" + std::to_string(label) + " is zero",
                           {{0, 0, label, a.frobenius_norm()}});
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        const double nrm = a.block(off[j], off[k], blocks.sizes[j], blocks.sizes[k])
                               .frobenius_norm();
        BlockRef ref{j, k, label, nrm};
        if (nrm > 0.0 && nrm <= 1e3 * tol && nrm * 1e3 >= tol) borderline.push_back(ref);
        if (nrm <= tol) continue;
        if (j == k) {
          throw StructureError(ErrorCode::SelfLoop,
                               "diagonal block " + block_text(ref) + " is nonzero", {ref});
        }
        if (auto it = owner.find({j, k}); it != owner.end()) {
          throw StructureError(ErrorCode::LabelCollision,
                               "blocks " + block_text(it->second) + " and " + block_text(ref) +
                                   " are both nonzero",
                               {it->second, ref});
        }
        if (auto it = owner.find({k, j}); it != owner.end()) {
          throw StructureError(ErrorCode::AntiparallelPair,
                               "blocks " + block_text(it->second) + " and " + block_text(ref) +
                                   " are antiparallel",
                               {it->second, ref});
        }
        owner.emplace(std::pair{j, k}, ref);
        edges.push_back({j, k, label});
      }
    }
  }
  return Extraction{graph::LabeledDag(m, p.g(), std::move(edges)), std::move(thresholds),
                    std::move(borderline)};
}

}  // namespace freespec::reinhardt
